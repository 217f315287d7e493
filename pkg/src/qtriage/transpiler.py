"""Lowering to the Clifford+T alphabet and T-gate counting.

Every gate is rewritten over {H, S, Sdg, T, Tdg, CNOT} (measures pass
through). Rotations on the pi/4 grid lower exactly; generic rotations are
either priced by a closed-form T-cost formula (COUNT mode) or replaced by a
searched approximation word (SEQUENCE mode). All unitary comparisons are
global-phase insensitive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .circuit import Circuit, GateKind, GateOp, angle_grid_index
from .synthesis import ApproxTable, SynthesisError, approximate_rz

# Kinds a transpiled circuit may contain.
RESTRICTED_KINDS = frozenset(
    {
        GateKind.H,
        GateKind.S,
        GateKind.SDG,
        GateKind.T,
        GateKind.TDG,
        GateKind.CNOT,
        GateKind.MEASURE,
    }
)

# Per-rotation COUNT-mode cost is ceil(slope * log2(1/eps)) + offset.
DEFAULT_COUNT_SLOPE = 3.0
DEFAULT_COUNT_OFFSET = 4

_AXIS_KINDS = frozenset({GateKind.U1, GateKind.RZ, GateKind.RX, GateKind.RY})

_FIXED_CLIFFORD = frozenset(
    {
        GateKind.H,
        GateKind.S,
        GateKind.SDG,
        GateKind.X,
        GateKind.Y,
        GateKind.Z,
        GateKind.CNOT,
        GateKind.CZ,
    }
)


class GateClass(Enum):
    CLIFFORD = "clifford"
    T_EXACT = "t-exact"
    NON_CLIFFORD_ROTATION = "non-clifford-rotation"


class SynthesisMode(Enum):
    COUNT = "count"
    SEQUENCE = "sequence"


def _axis_class(theta: float) -> GateClass:
    # pi/2 grid -> Clifford, odd pi/4 grid -> one exact T, else approximate
    k = angle_grid_index(theta)
    if k is None:
        return GateClass.NON_CLIFFORD_ROTATION
    return GateClass.CLIFFORD if k % 2 == 0 else GateClass.T_EXACT


def _constituents(g: GateOp) -> list[GateOp]:
    """Single-axis factors of a U2/U3 gate, in application order.

    U3(lam, phi, gam) acts as U1(phi) . RY(lam) . U1(gam) applied right to
    left, so the gate order is RZ(gam), RY(lam), RZ(phi); U2(lam, phi) is
    U3(pi/2, lam, phi). Degenerate rotation angles (lam = 0 or pi) fold the
    two diagonal factors into one so that the class of the factor list
    matches the class of the product.
    """
    q = g.qubits[0]
    if g.kind is GateKind.U2:
        lam, phi = g.angles
        theta, late, early = math.pi / 2.0, lam, phi
    else:
        theta, late, early = g.angles

    def rz(angle: float) -> GateOp:
        return GateOp(GateKind.RZ, (q,), (angle,))

    half_turns = angle_grid_index(theta, step=math.pi)
    if half_turns == 0:
        merged = rz(early + late)
        return [] if angle_grid_index(merged.angles[0]) == 0 else [merged]
    if half_turns == 1:
        # U1(phi) RY(pi) U1(gam) = phase . X . U1(gam - phi + pi)
        merged = rz(early - late + math.pi)
        x = GateOp(GateKind.X, (q,))
        if angle_grid_index(merged.angles[0]) == 0:
            return [x]
        return [merged, x]
    return [rz(early), GateOp(GateKind.RY, (q,), (theta,)), rz(late)]


def classify_gate(g: GateOp) -> GateClass:
    """Clifford, exactly-one-T, or approximation-needed.

    Fixed Paulis/Cliffords and CNOT/CZ are Clifford; T/Tdg cost one T; axis
    rotations classify by their angle's position on the pi/4 grid; U2/U3
    classify by the worst of their single-axis factors.
    """
    if g.is_measure:
        raise ValueError("measure has no gate class")
    if g.kind in _FIXED_CLIFFORD:
        return GateClass.CLIFFORD
    if g.kind in (GateKind.T, GateKind.TDG):
        return GateClass.T_EXACT
    if g.kind in _AXIS_KINDS:
        return _axis_class(g.angles[0])
    classes = [classify_gate(c) for c in _constituents(g)]
    if any(c is GateClass.NON_CLIFFORD_ROTATION for c in classes):
        return GateClass.NON_CLIFFORD_ROTATION
    if any(c is GateClass.T_EXACT for c in classes):
        return GateClass.T_EXACT
    return GateClass.CLIFFORD


# RZ/U1 on the pi/4 grid, keyed by grid index; diagonal so order is free.
_RZ_GRID_WORDS: dict[int, tuple[GateKind, ...]] = {
    0: (),
    1: (GateKind.T,),
    2: (GateKind.S,),
    3: (GateKind.S, GateKind.T),
    4: (GateKind.S, GateKind.S),
    5: (GateKind.S, GateKind.S, GateKind.T),
    6: (GateKind.SDG,),
    7: (GateKind.TDG,),
}

_X_WORD = (GateKind.H, GateKind.S, GateKind.S, GateKind.H)
_Y_WORD = (GateKind.S, GateKind.S, GateKind.H, GateKind.S, GateKind.S, GateKind.H)
_Z_WORD = (GateKind.S, GateKind.S)


def _on(qubit: int, kinds: tuple[GateKind, ...] | list[GateKind]) -> list[GateOp]:
    return [GateOp(k, (qubit,)) for k in kinds]


def _t_in(seq: list[GateOp]) -> int:
    return sum(1 for g in seq if g.kind in (GateKind.T, GateKind.TDG))


def synthesize_exact(g: GateOp) -> list[GateOp]:
    """Rewrite a grid-angle gate over the restricted alphabet.

    The result equals the input up to global phase. Single diagonal
    rotations on an odd pi/4 grid point use exactly one T or Tdg.

    Raises:
        SynthesisError: the gate needs approximation (generic angle).
    """
    cls = classify_gate(g)
    if cls is GateClass.NON_CLIFFORD_ROTATION:
        raise SynthesisError(f"{g.kind.value} with generic angle needs approximation")
    if g.kind in (
        GateKind.H,
        GateKind.S,
        GateKind.SDG,
        GateKind.T,
        GateKind.TDG,
        GateKind.CNOT,
    ):
        return [g]
    q = g.qubits[0]
    if g.kind is GateKind.X:
        return _on(q, _X_WORD)
    if g.kind is GateKind.Y:
        return _on(q, _Y_WORD)
    if g.kind is GateKind.Z:
        return _on(q, _Z_WORD)
    if g.kind is GateKind.CZ:
        ctrl, tgt = g.qubits
        h = GateOp(GateKind.H, (tgt,))
        return [h, GateOp(GateKind.CNOT, (ctrl, tgt)), h]
    if g.kind in (GateKind.U1, GateKind.RZ):
        k = angle_grid_index(g.angles[0])
        assert k is not None
        return _on(q, _RZ_GRID_WORDS[k])
    if g.kind is GateKind.RX:
        inner = synthesize_exact(GateOp(GateKind.RZ, (q,), g.angles))
        return [GateOp(GateKind.H, (q,)), *inner, GateOp(GateKind.H, (q,))]
    if g.kind is GateKind.RY:
        inner = synthesize_exact(GateOp(GateKind.RZ, (q,), g.angles))
        return (
            _on(q, (GateKind.SDG, GateKind.H))
            + inner
            + _on(q, (GateKind.H, GateKind.S))
        )
    if g.kind is GateKind.U2:
        lam, phi = g.angles
        if angle_grid_index(lam) == 0 and angle_grid_index(phi) == 4:
            return [GateOp(GateKind.H, (q,))]
    out: list[GateOp] = []
    for c in _constituents(g):
        out.extend(synthesize_exact(c))
    return out


def count_mode_t_cost(
    epsilon: float,
    slope: float = DEFAULT_COUNT_SLOPE,
    offset: int = DEFAULT_COUNT_OFFSET,
) -> int:
    """Deterministic per-rotation T price at accuracy epsilon."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    return math.ceil(slope * math.log2(1.0 / epsilon)) + offset


def synthesize_approx(
    g: GateOp,
    epsilon: float,
    mode: SynthesisMode = SynthesisMode.COUNT,
    *,
    count_slope: float = DEFAULT_COUNT_SLOPE,
    count_offset: int = DEFAULT_COUNT_OFFSET,
    table: ApproxTable | None = None,
) -> tuple[list[GateOp], int, float]:
    """Approximate a single-axis rotation; returns (gates, t_used, err_bound).

    COUNT mode prices the rotation without emitting gates (err_bound is the
    requested epsilon). SEQUENCE mode searches for an explicit word within
    operator distance epsilon and reports the measured distance; it refuses
    epsilon below the search floor. Grid angles fall back to the exact path
    with zero error regardless of epsilon.
    """
    if g.kind not in _AXIS_KINDS:
        raise SynthesisError(f"expected a single-axis rotation, got {g.kind.value}")
    if classify_gate(g) is not GateClass.NON_CLIFFORD_ROTATION:
        seq = synthesize_exact(g)
        return seq, _t_in(seq), 0.0
    if mode is SynthesisMode.COUNT:
        return [], count_mode_t_cost(epsilon, count_slope, count_offset), epsilon
    q = g.qubits[0]
    word, dist = approximate_rz(g.angles[0], epsilon, table)
    seq = _on(q, word)
    # conjugation by Cliffords moves the axis without changing the distance
    if g.kind is GateKind.RX:
        seq = [GateOp(GateKind.H, (q,)), *seq, GateOp(GateKind.H, (q,))]
    elif g.kind is GateKind.RY:
        seq = _on(q, (GateKind.SDG, GateKind.H)) + seq + _on(q, (GateKind.H, GateKind.S))
    return seq, _t_in(seq), dist


def _lower_gate(
    g: GateOp,
    epsilon: float,
    mode: SynthesisMode,
    count_slope: float,
    count_offset: int,
    table: ApproxTable | None,
) -> tuple[list[GateOp], int, float, int]:
    """(emitted gates, t_used, error bound, rotations approximated)."""
    if classify_gate(g) is not GateClass.NON_CLIFFORD_ROTATION:
        seq = synthesize_exact(g)
        return seq, _t_in(seq), 0.0, 0
    if g.kind in _AXIS_KINDS:
        seq, t_used, err = synthesize_approx(
            g, epsilon, mode, count_slope=count_slope,
            count_offset=count_offset, table=table,
        )
        return seq, t_used, err, 1
    seq = []
    t_used, err, n_approx = 0, 0.0, 0
    for c in _constituents(g):
        if classify_gate(c) is not GateClass.NON_CLIFFORD_ROTATION:
            sub = synthesize_exact(c)
            seq.extend(sub)
            t_used += _t_in(sub)
        else:
            sub, t_c, err_c = synthesize_approx(
                c, epsilon, mode, count_slope=count_slope,
                count_offset=count_offset, table=table,
            )
            seq.extend(sub)
            t_used += t_c
            err += err_c
            n_approx += 1
    if mode is SynthesisMode.COUNT:
        seq = []  # counted, not emitted
    return seq, t_used, err, n_approx


@dataclass(frozen=True)
class TranspiledCircuit:
    """Result of lowering: restricted-alphabet circuit plus provenance.

    source_map holds one half-open index range per original gate (in
    layer-major order) into the emitted gate stream. approx_error is the sum
    of per-rotation error bounds, at most approx_rotations * epsilon. In
    COUNT mode approximated rotations are priced but not emitted, so their
    ranges are empty and the circuit is not unitarily equivalent.
    """

    circuit: Circuit
    source_map: tuple[tuple[int, int], ...]
    approx_error: float
    approx_rotations: int

    def __post_init__(self) -> None:
        for g in self.circuit.gates():
            if g.kind not in RESTRICTED_KINDS:
                raise ValueError(f"unexpected kind {g.kind.value} after lowering")


def transpile(
    circuit: Circuit,
    epsilon: float,
    mode: SynthesisMode = SynthesisMode.SEQUENCE,
    *,
    count_slope: float = DEFAULT_COUNT_SLOPE,
    count_offset: int = DEFAULT_COUNT_OFFSET,
    table: ApproxTable | None = None,
) -> TranspiledCircuit:
    """Lower every gate in layer-major order, preserving gate order."""
    emitted: list[GateOp] = []
    spans: list[tuple[int, int]] = []
    total_err = 0.0
    n_approx = 0
    for g in circuit.gates():
        start = len(emitted)
        if g.is_measure:
            emitted.append(g)
        else:
            seq, _, err, k = _lower_gate(
                g, epsilon, mode, count_slope, count_offset, table
            )
            emitted.extend(seq)
            total_err += err
            n_approx += k
        spans.append((start, len(emitted)))
    out = Circuit.from_gates(circuit.n_qubits, emitted, metadata=circuit.metadata)
    return TranspiledCircuit(out, tuple(spans), total_err, n_approx)


@dataclass(frozen=True)
class LayerTally:
    """Per-layer slice of a count report: index, T price, symmetry charge."""

    layer: int
    t_full: int
    t_sym: int


@dataclass(frozen=True)
class TCountReport:
    """T-gate tallies under both policies at a fixed accuracy.

    t_full prices every rotation individually (COUNT-mode transpilation).
    t_sym charges one T per maximal run of consecutive layers that contain a
    non-Clifford gate: adjacent rotation layers inside one variational block
    share a single symmetry-breaking T, and the charge appears on the first
    layer of the run in the breakdown.
    """

    t_full: int
    t_sym: int
    epsilon: float
    clifford_count: int
    breakdown: tuple[LayerTally, ...]

    def __post_init__(self) -> None:
        assert self.t_full >= 0 and self.t_sym >= 0
        # circuit-derived reports bound t_sym by depth; synthetic reports
        # (externally supplied counts) carry no breakdown
        if self.breakdown:
            assert self.t_sym <= len(self.breakdown)


def t_count(
    circuit: Circuit,
    epsilon: float,
    *,
    count_slope: float = DEFAULT_COUNT_SLOPE,
    count_offset: int = DEFAULT_COUNT_OFFSET,
) -> TCountReport:
    """Count T-gates under the full and symmetry-breaking policies."""
    tallies: list[LayerTally] = []
    t_full = 0
    t_sym = 0
    clifford_count = 0
    prev_hot = False
    for li, layer in enumerate(circuit.layers):
        layer_t = 0
        hot = False
        for g in layer:
            if g.is_measure:
                continue
            cls = classify_gate(g)
            if cls is GateClass.CLIFFORD:
                clifford_count += 1
                continue
            hot = True
            _, t_used, _, _ = _lower_gate(
                g, epsilon, SynthesisMode.COUNT, count_slope, count_offset, None
            )
            layer_t += t_used
        charge = 1 if hot and not prev_hot else 0
        t_sym += charge
        t_full += layer_t
        tallies.append(LayerTally(li, layer_t, charge))
        prev_hot = hot
    return TCountReport(t_full, t_sym, epsilon, clifford_count, tuple(tallies))
