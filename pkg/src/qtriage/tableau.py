"""Binary symplectic (stabilizer) tableau with the standard update rules.

Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers; each row is a Pauli
string as X-bit and Z-bit vectors plus a sign bit. Gate updates are O(n) row
operations; measurement is O(n^2) worst case.

A Tableau is exclusively owned: concurrent mutation of one instance is
forbidden. Workers should each hold their own copy (see ``Tableau.copy``).
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .circuit import GateKind, GateOp

# Clifford kinds the tableau accepts directly.
CLIFFORD_KINDS = frozenset(
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


class RegimeError(ValueError):
    """Gate outside this engine's regime (caller should use run_extended)."""


class Tableau:
    """Stabilizer state of n qubits, initialized to |0...0>."""

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        # destabilizers X_i then stabilizers Z_i
        self.x = np.zeros((2 * n, n), dtype=np.uint8)
        self.z = np.zeros((2 * n, n), dtype=np.uint8)
        self.r = np.zeros(2 * n, dtype=np.uint8)
        self.x[np.arange(n), np.arange(n)] = 1
        self.z[np.arange(n, 2 * n), np.arange(n)] = 1

    def copy(self) -> "Tableau":
        out = Tableau.__new__(Tableau)
        out.n = self.n
        out.x = self.x.copy()
        out.z = self.z.copy()
        out.r = self.r.copy()
        return out

    def stabilizer_strings(self) -> list[str]:
        """Human-readable stabilizer generators, for tests and debugging."""
        names = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
        out = []
        for i in range(self.n, 2 * self.n):
            sign = "-" if self.r[i] else "+"
            body = "".join(
                names[(int(self.x[i, j]), int(self.z[i, j]))] for j in range(self.n)
            )
            out.append(sign + body)
        return out

    # -- gate updates --------------------------------------------------

    def _h(self, a: int) -> None:
        self.r ^= self.x[:, a] & self.z[:, a]
        self.x[:, a], self.z[:, a] = self.z[:, a].copy(), self.x[:, a].copy()

    def _s(self, a: int) -> None:
        self.r ^= self.x[:, a] & self.z[:, a]
        self.z[:, a] ^= self.x[:, a]

    def _cnot(self, c: int, t: int) -> None:
        self.r ^= self.x[:, c] & self.z[:, t] & (self.x[:, t] ^ self.z[:, c] ^ 1)
        self.x[:, t] ^= self.x[:, c]
        self.z[:, c] ^= self.z[:, t]


def apply_clifford(tab: Tableau, gate: GateOp) -> Tableau:
    """Conjugate the tableau by one Clifford gate; mutates and returns tab."""
    k = gate.kind
    if k not in CLIFFORD_KINDS:
        raise RegimeError(
            f"{k.value} is outside the tableau gate set; transpile first or "
            f"use run_extended for T gates"
        )
    q = gate.qubits
    if k is GateKind.H:
        tab._h(q[0])
    elif k is GateKind.S:
        tab._s(q[0])
    elif k is GateKind.SDG:
        # S^3
        tab._s(q[0])
        tab._s(q[0])
        tab._s(q[0])
    elif k is GateKind.Z:
        tab.r ^= tab.x[:, q[0]]
    elif k is GateKind.X:
        tab.r ^= tab.z[:, q[0]]
    elif k is GateKind.Y:
        # Y = S X Sdg as a conjugation
        apply_clifford(tab, GateOp(GateKind.SDG, q))
        tab.r ^= tab.z[:, q[0]]
        apply_clifford(tab, GateOp(GateKind.S, q))
    elif k is GateKind.CNOT:
        tab._cnot(q[0], q[1])
    elif k is GateKind.CZ:
        tab._h(q[1])
        tab._cnot(q[0], q[1])
        tab._h(q[1])
    return tab


# -- Pauli-product phase bookkeeping ----------------------------------------


def _g_terms(x1: np.ndarray, z1: np.ndarray, x2: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """Exponent-of-i contribution per column when multiplying row1 * row2."""
    x1i = x1.astype(np.int8)
    z1i = z1.astype(np.int8)
    x2i = x2.astype(np.int8)
    z2i = z2.astype(np.int8)
    return (
        (x1i & z1i) * (z2i - x2i)
        + (x1i & (1 - z1i)) * (z2i * (2 * x2i - 1))
        + ((1 - x1i) & z1i) * (x2i * (1 - 2 * z2i))
    )


def _rowsum_into(tab: Tableau, targets: np.ndarray, src: int) -> None:
    """rowsum(h, src) for every h in targets at once (src row is fixed)."""
    phase = (
        2 * tab.r[targets].astype(np.int64)
        + 2 * int(tab.r[src])
        + _g_terms(tab.x[src], tab.z[src], tab.x[targets], tab.z[targets]).sum(axis=1)
    ) % 4
    tab.r[targets] = (phase == 2).astype(np.uint8)
    tab.x[targets] ^= tab.x[src]
    tab.z[targets] ^= tab.z[src]


def _product_sign(tab: Tableau, rows: np.ndarray) -> int:
    """Sign bit of the product of the given (commuting) stabilizer rows.

    Pairwise tree reduction keeps the column work vectorized; the phase
    accumulates exactly as sequential rowsums would.
    """
    x = tab.x[rows].astype(np.uint8)
    z = tab.z[rows].astype(np.uint8)
    ph = (2 * tab.r[rows].astype(np.int64)) % 4
    while len(x) > 1:
        odd = None
        if len(x) % 2 == 1:
            odd = (x[-1], z[-1], ph[-1])
            x, z, ph = x[:-1], z[:-1], ph[:-1]
        a, b = slice(0, None, 2), slice(1, None, 2)
        ph = (ph[a] + ph[b] + _g_terms(x[a], z[a], x[b], z[b]).sum(axis=1)) % 4
        x = x[a] ^ x[b]
        z = z[a] ^ z[b]
        if odd is not None:
            x = np.concatenate([x, odd[0][None]])
            z = np.concatenate([z, odd[1][None]])
            ph = np.concatenate([ph, odd[2][None]])
    assert ph[0] % 2 == 0
    return int(ph[0] // 2) % 2


def measure_with_source(
    tab: Tableau, qubit: int, bit_source: Callable[[], int]
) -> tuple[int, bool]:
    """Measure Z_qubit; random branches draw their bit from bit_source.

    Returns (outcome, was_random). The random/deterministic split and the
    whole X/Z structure update are independent of the drawn bits; only sign
    bits depend on them (linearly over GF(2)), which the histogram sampler
    exploits.
    """
    n = tab.n
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit} out of range")
    stab_hits = np.nonzero(tab.x[n:, qubit])[0]
    if len(stab_hits) > 0:
        p = int(stab_hits[0]) + n  # smallest anticommuting stabilizer
        others = np.nonzero(tab.x[:, qubit])[0]
        others = others[others != p]
        if len(others) > 0:
            _rowsum_into(tab, others, p)
        tab.x[p - n] = tab.x[p]
        tab.z[p - n] = tab.z[p]
        tab.r[p - n] = tab.r[p]
        tab.x[p] = 0
        tab.z[p] = 0
        tab.z[p, qubit] = 1
        outcome = int(bit_source()) & 1
        tab.r[p] = outcome
        return outcome, True
    # deterministic: product of stabilizers indexed by destabilizer hits
    destab_hits = np.nonzero(tab.x[:n, qubit])[0]
    rows = destab_hits + n
    outcome = _product_sign(tab, rows)
    return outcome, False


def measure(
    tab: Tableau, qubit: int, rng: np.random.Generator
) -> tuple[int, Tableau]:
    """Standard Z measurement; deterministic outcome when Z_qubit is implied."""
    outcome, _ = measure_with_source(
        tab, qubit, lambda: int(rng.integers(0, 2))
    )
    return outcome, tab
