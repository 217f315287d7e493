"""Builders for the four benchmark variational circuit families.

The family shapes follow the usual literature forms: real-amplitudes
(RY + CNOT ladder), an energy-based / QAOA-like block (CZ ring + RX),
strongly-entangling (U3 + strided CNOT ring), and hardware-efficient
(RY, RZ + CNOT chain). Published transpiled diagrams for these models exist
only as images, so these definitions are stand-ins with the documented layer
structure rather than bit-exact reproductions.
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

from .circuit import Circuit, GateKind, GateOp


class AnsatzKind(Enum):
    REAL_AMPLITUDES = "real-amplitudes"
    ENERGY_BASED = "energy-based"
    STRONGLY_ENTANGLING = "strongly-entangling"
    HARDWARE_EFFICIENT = "hardware-efficient"


# parameters consumed per qubit per layer
_PARAMS_PER_QUBIT = {
    AnsatzKind.REAL_AMPLITUDES: 1,
    AnsatzKind.ENERGY_BASED: 1,
    AnsatzKind.STRONGLY_ENTANGLING: 3,
    AnsatzKind.HARDWARE_EFFICIENT: 2,
}


def param_count(kind: AnsatzKind, n_qubits: int, depth: int) -> int:
    """Number of angles build_ansatz expects for (kind, n_qubits, depth)."""
    return _PARAMS_PER_QUBIT[kind] * n_qubits * depth


def build_ansatz(
    kind: AnsatzKind,
    n_qubits: int,
    depth: int,
    params: Sequence[float],
) -> Circuit:
    """Construct one of the benchmark families.

    Args:
        kind: family selector.
        n_qubits: at least 2; every family entangles.
        depth: number of ansatz layers, at least 1.
        params: angles consumed layer by layer, qubit by qubit. For
            strongly-entangling each qubit takes (lambda, phi, gamma); for
            hardware-efficient the RY block's angles precede the RZ block's.

    Returns:
        Circuit whose rotation blocks each start a fresh layer, so depth-k
        instances have exactly k rotation runs separated by entangler layers.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if n_qubits < 2:
        raise ValueError(f"{kind.value} entangles and needs n_qubits >= 2")
    expected = param_count(kind, n_qubits, depth)
    if len(params) != expected:
        raise ValueError(
            f"{kind.value} with n={n_qubits}, depth={depth} takes "
            f"{expected} params, got {len(params)}"
        )

    gates: list[GateOp] = []
    barriers: list[int] = []
    n = n_qubits
    it = iter(params)

    def rotation_block(kinds: Sequence[GateKind]) -> None:
        # each rotation block opens a new layer; entanglers then collide
        # with the rotated qubits and layer themselves naturally
        barriers.append(len(gates))
        for k in kinds:
            for q in range(n):
                gates.append(GateOp(k, (q,), (next(it),)))

    for layer in range(depth):
        if kind is AnsatzKind.REAL_AMPLITUDES:
            rotation_block([GateKind.RY])
            for q in range(n - 1):
                gates.append(GateOp(GateKind.CNOT, (q, q + 1)))
        elif kind is AnsatzKind.ENERGY_BASED:
            barriers.append(len(gates))
            for q in range(n if n > 2 else 1):  # ring degenerates at n=2
                gates.append(GateOp(GateKind.CZ, (q, (q + 1) % n)))
            rotation_block([GateKind.RX])
        elif kind is AnsatzKind.STRONGLY_ENTANGLING:
            barriers.append(len(gates))
            for q in range(n):
                lam, phi, gam = next(it), next(it), next(it)
                gates.append(GateOp(GateKind.U3, (q,), (lam, phi, gam)))
            stride = layer % (n - 1) + 1
            for q in range(n if n > 2 else 1):
                gates.append(GateOp(GateKind.CNOT, (q, (q + stride) % n)))
        else:  # HARDWARE_EFFICIENT
            rotation_block([GateKind.RY, GateKind.RZ])
            for q in range(n - 1):
                gates.append(GateOp(GateKind.CNOT, (q, q + 1)))

    return Circuit.from_gates(
        n, gates, barriers=barriers, metadata=f"{kind.value} depth={depth}"
    )
