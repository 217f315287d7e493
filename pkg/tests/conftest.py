"""Shared fixtures: the reference distribution oracle and circuit generators.

The oracle here follows every measurement branch with its exact Born weight,
so the sampling engines can be judged by total-variation distance against a
ground truth that never samples. It is exponential in the number of measure
gates; generators keep that small.
"""

from __future__ import annotations

import math
import random

import numpy as np
import pytest

from qtriage.circuit import Circuit, GateKind, GateOp, gate
from qtriage.dense import gate_matrix
from qtriage.synthesis import ApproxTable, default_table


@pytest.fixture(scope="session")
def approx_table() -> ApproxTable:
    # Building the table is the expensive part; share one per run.
    return default_table()


def apply_gate(state: np.ndarray, g: GateOp, n: int) -> np.ndarray:
    """Apply one unitary gate to a state with n qubit axes (qubit 0 first)."""
    nq = len(g.qubits)
    mat = gate_matrix(g).reshape((2,) * (2 * nq))
    moved = np.tensordot(mat, state, axes=(list(range(nq, 2 * nq)), list(g.qubits)))
    return np.moveaxis(moved, range(nq), g.qubits)


def exact_distribution(circuit: Circuit) -> dict[str, float]:
    """Exact outcome distribution, readout bits in measure-gate order.

    Branches on every measure gate (mid-circuit included), renormalizing the
    projected state so later gates act on the post-measurement state.
    """
    n = circuit.n_qubits
    start = np.zeros((2,) * n, dtype=complex)
    start[(0,) * n] = 1.0
    branches: list[tuple[float, np.ndarray, str]] = [(1.0, start, "")]
    for g in circuit.gates():
        if g.is_measure:
            q = g.qubits[0]
            split = []
            for w, psi, bits in branches:
                for bit in (0, 1):
                    idx = [slice(None)] * n
                    idx[q] = 1 - bit
                    proj = psi.copy()
                    proj[tuple(idx)] = 0.0
                    p = float(np.vdot(proj, proj).real)
                    if p > 1e-12:
                        split.append((w * p, proj / math.sqrt(p), bits + str(bit)))
            branches = split
        else:
            branches = [(w, apply_gate(psi, g, n), bits) for w, psi, bits in branches]
    out: dict[str, float] = {}
    for w, _, bits in branches:
        out[bits] = out.get(bits, 0.0) + w
    return out


def tv_distance(exact: dict[str, float], hist: dict[str, int], shots: int) -> float:
    keys = set(exact) | set(hist)
    return 0.5 * sum(abs(exact.get(k, 0.0) - hist.get(k, 0) / shots) for k in keys)


_CLIFFORD_1Q = ("h", "s", "sdg", "x", "y", "z")


def random_clifford_circuit(
    rng: random.Random,
    n: int,
    m: int,
    measured: int | None = None,
    mid_measures: int = 0,
) -> Circuit:
    """m Clifford gates on n qubits, optional mid-circuit measures, terminal readout."""
    ops: list[GateOp] = []
    for _ in range(m):
        if n >= 2 and rng.random() < 0.35:
            c, t = rng.sample(range(n), 2)
            ops.append(gate(rng.choice(("cnot", "cz")), c, t))
        else:
            ops.append(gate(rng.choice(_CLIFFORD_1Q), rng.randrange(n)))
    for _ in range(mid_measures):
        ops.insert(rng.randrange(1, len(ops)), gate("measure", rng.randrange(n)))
    k = min(n, 5) if measured is None else measured
    for q in sorted(rng.sample(range(n), k)):
        ops.append(gate("measure", q))
    return Circuit.from_gates(n, ops)


def random_low_t_circuit(
    rng: random.Random, n: int, m: int, t: int, measured: int | None = None
) -> Circuit:
    """Clifford body of m gates with exactly t T/Tdg gates mixed in."""
    body = random_clifford_circuit(rng, n, m, measured=0)
    ops = [g for g in body.gates()]
    for _ in range(t):
        ops.insert(rng.randrange(len(ops) + 1), gate(rng.choice(("t", "tdg")), rng.randrange(n)))
    k = min(n, 5) if measured is None else measured
    for q in sorted(rng.sample(range(n), k)):
        ops.append(gate("measure", q))
    return Circuit.from_gates(n, ops)


def random_mixed_circuit(rng: random.Random, n: int, m: int) -> Circuit:
    """Measure-free circuit over the full gate alphabet; some angles land on
    the pi/4 grid so exact-synthesis paths get exercised alongside approximation."""

    def angle() -> float:
        if rng.random() < 0.3:
            return rng.randrange(8) * math.pi / 4.0
        return rng.uniform(0.0, 2.0 * math.pi)

    ops: list[GateOp] = []
    for _ in range(m):
        r = rng.random()
        if n >= 2 and r < 0.2:
            c, t = rng.sample(range(n), 2)
            ops.append(gate(rng.choice(("cnot", "cz")), c, t))
        elif r < 0.45:
            ops.append(gate(rng.choice(_CLIFFORD_1Q + ("t", "tdg")), rng.randrange(n)))
        elif r < 0.8:
            kind = rng.choice(("u1", "rx", "ry", "rz"))
            ops.append(gate(kind, rng.randrange(n), angles=(angle(),)))
        elif r < 0.9:
            ops.append(gate("u2", rng.randrange(n), angles=(angle(), angle())))
        else:
            ops.append(gate("u3", rng.randrange(n), angles=(angle(), angle(), angle())))
    return Circuit.from_gates(n, ops)
