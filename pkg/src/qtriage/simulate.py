"""Simulation engines and their closed-form cost models.

run_clifford: polynomial tableau simulation. Measurement outcomes of a
stabilizer run are affine over GF(2) in the random branch bits (the X/Z
structure never depends on drawn bits, and sign bits accumulate linearly),
so the sampler recovers that affine map with k+1 probe simulations and then
draws any number of shots as one binary matrix product.

run_extended: exact dense expansion of each T gate into two Clifford branches
(T = a*I + b*Z), evolving all 2^t branch statevectors and sampling from the
recombined amplitudes. Deliberately the naive expansion; the 2^t growth is
the point.

Shots and branches are embarrassingly parallel; a Tableau instance itself
must never be shared between concurrent workers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .circuit import Circuit, GateKind, GateOp
from .dense import gate_matrix
from .tableau import CLIFFORD_KINDS, RegimeError, Tableau, apply_clifford, measure_with_source

DEFAULT_T_MAX = 16

# branch-chunk memory budget for the extended engine, in bytes
_CHUNK_BUDGET = 1 << 28

_T_COEFFS = {
    # T = a*I + b*Z and likewise for Tdg, from diag(1, e^{+-i pi/4})
    GateKind.T: (
        (1.0 + cmath.exp(0.25j * math.pi)) / 2.0,
        (1.0 - cmath.exp(0.25j * math.pi)) / 2.0,
    ),
    GateKind.TDG: (
        (1.0 + cmath.exp(-0.25j * math.pi)) / 2.0,
        (1.0 - cmath.exp(-0.25j * math.pi)) / 2.0,
    ),
}


class BudgetError(ValueError):
    """T-count exceeds the extended engine's configured wall (t_max)."""


class Regime(Enum):
    CLIFFORD_POLY = "CliffordPoly"
    EXTENDED_EXP = "ExtendedExp"


@dataclass(frozen=True)
class ClassicalCostEstimate:
    """Abstract step-count model for classical simulation of one circuit."""

    regime: Regime
    step_bound: float
    kappa: float
    t: int
    epsilon: float


def sim_cost(n: int, m: int, t: int, epsilon: float, c: float = 1.0) -> ClassicalCostEstimate:
    """Closed-form cost: c*n^2*m when t = 0, else c*2^t*t^3/epsilon^2.

    kappa is the stabilizer branch count, 2^t (1 for pure Clifford). Values
    overflow to inf rather than raising; callers rendering reports handle
    non-finite bounds explicitly.
    """
    if n < 1 or m < 0 or t < 0:
        raise ValueError("n >= 1, m >= 0, t >= 0 required")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must be in (0, 1)")
    if t == 0:
        return ClassicalCostEstimate(
            Regime.CLIFFORD_POLY, c * float(n) ** 2 * m, 1.0, 0, epsilon
        )
    try:
        kappa = float(2.0**t)
    except OverflowError:
        kappa = math.inf
    step = c * kappa * float(t) ** 3 / (epsilon * epsilon)
    return ClassicalCostEstimate(Regime.EXTENDED_EXP, step, kappa, t, epsilon)


def _check_clifford_only(circuit: Circuit) -> None:
    for g in circuit.gates():
        if g.is_measure or g.kind in CLIFFORD_KINDS:
            continue
        raise RegimeError(
            f"{g.kind.value} is not a tableau Clifford; use run_extended for "
            f"T gates, or transpile generic rotations first"
        )


def _trace_outcomes(circuit: Circuit, forced_bits: np.ndarray) -> tuple[np.ndarray, int]:
    """One tableau pass; the j-th random event consumes forced_bits[j] (0 beyond)."""
    tab = Tableau(circuit.n_qubits)
    outcomes: list[int] = []
    counter = 0

    def source() -> int:
        nonlocal counter
        bit = int(forced_bits[counter]) if counter < len(forced_bits) else 0
        counter += 1
        return bit

    for g in circuit.gates():
        if g.is_measure:
            out, _ = measure_with_source(tab, g.qubits[0], source)
            outcomes.append(out)
        else:
            apply_clifford(tab, g)
    return np.array(outcomes, dtype=np.uint8), counter


def run_clifford(circuit: Circuit, shots: int, seed: int) -> dict[str, int]:
    """Histogram over measured bitstrings (measure-gate order), total = shots."""
    if shots < 1:
        raise ValueError("shots must be positive")
    _check_clifford_only(circuit)

    base, n_random = _trace_outcomes(circuit, np.zeros(0, dtype=np.uint8))
    n_meas = len(base)
    if n_meas == 0:
        return {"": shots}

    columns = np.zeros((n_meas, n_random), dtype=np.uint8)
    for k in range(n_random):
        probe = np.zeros(n_random, dtype=np.uint8)
        probe[k] = 1
        outcomes, n_again = _trace_outcomes(circuit, probe)
        assert n_again == n_random, "random-event schedule must be input-independent"
        columns[:, k] = outcomes ^ base

    rng = np.random.default_rng(seed)
    if n_random > 0:
        draws = rng.integers(0, 2, size=(shots, n_random), dtype=np.uint8)
        bits = (draws.astype(np.int64) @ columns.T.astype(np.int64) + base) % 2
        bits = bits.astype(np.uint8)
    else:
        bits = np.broadcast_to(base, (shots, n_meas))

    rows, counts = np.unique(bits, axis=0, return_counts=True)
    return {
        "".join("1" if b else "0" for b in row): int(c)
        for row, c in zip(rows, counts)
    }


def _defer_measures(
    circuit: Circuit,
) -> tuple[int, list[GateOp], list[int]]:
    """Rewrite mid-circuit measures for the unitary branch engine.

    Any measured qubit that is touched again later is routed through a fresh
    ancilla via CNOT (exact: the IR has no classical control). Returns the
    effective qubit count, the unitary gate stream, and the qubits to read out
    at the end, in original measure order.
    """
    gates = list(circuit.gates())
    last_use = {}
    for pos, g in enumerate(gates):
        for q in g.qubits:
            last_use[q] = pos

    n_eff = circuit.n_qubits
    stream: list[GateOp] = []
    readout: list[int] = []
    for pos, g in enumerate(gates):
        if not g.is_measure:
            stream.append(g)
            continue
        q = g.qubits[0]
        if last_use[q] > pos:
            anc = n_eff
            n_eff += 1
            stream.append(GateOp(GateKind.CNOT, (q, anc)))
            readout.append(anc)
        else:
            readout.append(q)
    return n_eff, stream, readout


def _apply_batched(states: np.ndarray, mat: np.ndarray, qubits: tuple[int, ...], n: int) -> np.ndarray:
    """Apply a gate matrix to a (batch, 2**n) block of statevectors."""
    nq = len(qubits)
    tensor = states.reshape((len(states),) + (2,) * n)
    axes = [q + 1 for q in qubits]
    moved = np.tensordot(mat.reshape((2,) * (2 * nq)), tensor, axes=(list(range(nq, 2 * nq)), axes))
    # tensordot put the new qubit axes first and the batch axis after them
    moved = np.moveaxis(moved, nq, 0)
    moved = np.moveaxis(moved, range(1, 1 + nq), axes)
    return moved.reshape(len(states), -1)


def run_extended(
    circuit: Circuit,
    shots: int,
    seed: int,
    t_max: int = DEFAULT_T_MAX,
    return_info: bool = False,
) -> dict[str, int] | tuple[dict[str, int], dict[str, int]]:
    """Exact low-T simulation by 2^t Clifford-branch expansion.

    Every T/Tdg splits the state into an identity branch and a Z branch;
    branches evolve as dense vectors (vectorized in chunks) and recombine
    before sampling. Measures are deferred exactly; see _defer_measures.

    Raises:
        BudgetError: more than t_max T gates.
        RegimeError: a gate outside Clifford + T/Tdg + Measure.
    """
    if shots < 1:
        raise ValueError("shots must be positive")
    t = 0
    for g in circuit.gates():
        if g.kind in _T_COEFFS:
            t += 1
        elif g.is_measure or g.kind in CLIFFORD_KINDS:
            continue
        else:
            raise RegimeError(
                f"{g.kind.value} is outside Clifford+T; transpile first"
            )
    if t > t_max:
        raise BudgetError(
            f"t={t} exceeds t_max={t_max}: extended simulation cost doubles "
            f"per T gate (2^t branches)"
        )
    if t == 0:
        hist = run_clifford(circuit, shots, seed)
        if return_info:
            return hist, {"branches": 1, "n_effective": circuit.n_qubits, "t": 0}
        return hist

    n_eff, stream, readout = _defer_measures(circuit)
    dim = 1 << n_eff
    if 16 * dim > _CHUNK_BUDGET:
        raise ValueError(
            f"extended engine needs {n_eff} dense qubits (with deferred "
            f"measures), past the memory budget"
        )
    branches = 1 << t
    chunk = max(1, min(branches, _CHUNK_BUDGET // (16 * dim)))

    # per-qubit Z diagonal over the full register, built once
    z_diag = np.empty((n_eff, dim), dtype=np.float64)
    idx = np.arange(dim)
    for q in range(n_eff):
        z_diag[q] = 1.0 - 2.0 * ((idx >> (n_eff - 1 - q)) & 1)

    psi = np.zeros(dim, dtype=complex)
    processed = 0
    for start in range(0, branches, chunk):
        ids = np.arange(start, min(start + chunk, branches), dtype=np.int64)
        states = np.zeros((len(ids), dim), dtype=complex)
        states[:, 0] = 1.0
        weights = np.ones(len(ids), dtype=complex)
        t_seen = 0
        for g in stream:
            if g.kind in _T_COEFFS:
                a_coef, b_coef = _T_COEFFS[g.kind]
                branch_bit = ((ids >> t_seen) & 1).astype(bool)
                t_seen += 1
                if branch_bit.any():
                    states[branch_bit] *= z_diag[g.qubits[0]]
                weights = np.where(branch_bit, weights * b_coef, weights * a_coef)
            else:
                states = _apply_batched(states, gate_matrix(g), g.qubits, n_eff)
        psi += weights @ states
        processed += len(ids)
    assert processed == branches, "branch count must be exactly 2^t"

    probs = np.abs(psi) ** 2
    total = probs.sum()
    assert abs(total - 1.0) < 1e-9, f"branch recombination lost norm: {total}"
    probs /= total

    if not readout:
        hist: dict[str, int] = {"": shots}
    else:
        tensor = probs.reshape((2,) * n_eff)
        keep = sorted(set(readout))
        drop = tuple(ax for ax in range(n_eff) if ax not in keep)
        marginal = tensor.sum(axis=drop) if drop else tensor
        order = [keep.index(q) for q in readout]
        marginal = np.transpose(marginal, order)
        p = marginal.reshape(-1)
        rng = np.random.default_rng(seed)
        counts = rng.multinomial(shots, p / p.sum())
        width = len(readout)
        hist = {
            format(i, f"0{width}b"): int(c)
            for i, c in enumerate(counts)
            if c > 0
        }

    if return_info:
        return hist, {"branches": branches, "n_effective": n_eff, "t": t}
    return hist


def render_histogram(hist: dict[str, int]) -> str:
    """Serialize as `bitstring count` lines sorted by bitstring."""
    return "".join(f"{k} {hist[k]}\n" for k in sorted(hist))
