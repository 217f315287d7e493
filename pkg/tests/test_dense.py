"""Dense reference semantics against hand-typed matrix literals.

Everything else in the suite leans on this module as ground truth, so the
expected values here are written out longhand rather than computed.
"""

from __future__ import annotations

import cmath
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qtriage.circuit import Circuit, gate, parse_circuit
from qtriage.dense import (
    gate_matrix,
    phase_insensitive_fidelity,
    statevector,
    su2_distance,
    unitary_of,
)

from conftest import random_mixed_circuit

_SQ2 = 1.0 / math.sqrt(2.0)
_E = cmath.exp


def test_fixed_gate_matrices() -> None:
    assert np.allclose(gate_matrix(gate("h", 0)), _SQ2 * np.array([[1, 1], [1, -1]]))
    assert np.allclose(gate_matrix(gate("x", 0)), [[0, 1], [1, 0]])
    assert np.allclose(gate_matrix(gate("y", 0)), [[0, -1j], [1j, 0]])
    assert np.allclose(gate_matrix(gate("z", 0)), [[1, 0], [0, -1]])
    assert np.allclose(gate_matrix(gate("s", 0)), [[1, 0], [0, 1j]])
    assert np.allclose(gate_matrix(gate("sdg", 0)), [[1, 0], [0, -1j]])
    assert np.allclose(gate_matrix(gate("t", 0)), [[1, 0], [0, _SQ2 + _SQ2 * 1j]])
    assert np.allclose(gate_matrix(gate("tdg", 0)), [[1, 0], [0, _SQ2 - _SQ2 * 1j]])


def test_two_qubit_matrices() -> None:
    cnot = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    assert np.array_equal(gate_matrix(gate("cnot", 0, 1)), cnot)
    assert np.array_equal(gate_matrix(gate("cz", 0, 1)), np.diag([1, 1, 1, -1]))


def test_u1_diagonal_phase() -> None:
    lam = 0.7
    assert np.allclose(gate_matrix(gate("u1", 0, angles=[lam])), [[1, 0], [0, _E(1j * lam)]])
    assert np.allclose(gate_matrix(gate("u1", 0, angles=[math.pi / 4])), gate_matrix(gate("t", 0)))
    assert np.allclose(gate_matrix(gate("u1", 0, angles=[math.pi / 2])), gate_matrix(gate("s", 0)))


def test_u2_matches_formula_and_hadamard_point() -> None:
    lam, phi = 0.4, 1.1
    want = _SQ2 * np.array(
        [[1.0, -_E(1j * phi)], [_E(1j * lam), _E(1j * (lam + phi))]]
    )
    assert np.allclose(gate_matrix(gate("u2", 0, angles=[lam, phi])), want)
    assert np.allclose(
        gate_matrix(gate("u2", 0, angles=[0.0, math.pi])), gate_matrix(gate("h", 0))
    )


def test_u3_factorization_and_u2_embedding() -> None:
    lam, phi, gam = 0.9, 2.2, 5.1
    u3 = gate_matrix(gate("u3", 0, angles=[lam, phi, gam]))
    u1_phi = gate_matrix(gate("u1", 0, angles=[phi]))
    ry = gate_matrix(gate("ry", 0, angles=[lam]))
    u1_gam = gate_matrix(gate("u1", 0, angles=[gam]))
    assert np.allclose(u3, u1_phi @ ry @ u1_gam)
    u2 = gate_matrix(gate("u2", 0, angles=[lam, phi]))
    assert np.allclose(u2, gate_matrix(gate("u3", 0, angles=[math.pi / 2, lam, phi])))


@given(
    st.floats(0.0, 2.0 * math.pi),
    st.floats(0.0, 2.0 * math.pi),
    st.floats(0.0, 2.0 * math.pi),
)
def test_u3_is_unitary(lam: float, phi: float, gam: float) -> None:
    u = gate_matrix(gate("u3", 0, angles=[lam, phi, gam]))
    assert np.allclose(u.conj().T @ u, np.eye(2), atol=1e-12)


def test_rotation_gates() -> None:
    th = 1.3
    c, s = math.cos(th / 2), math.sin(th / 2)
    assert np.allclose(gate_matrix(gate("rx", 0, angles=[th])), [[c, -1j * s], [-1j * s, c]])
    assert np.allclose(gate_matrix(gate("ry", 0, angles=[th])), [[c, -s], [s, c]])
    assert np.allclose(
        gate_matrix(gate("rz", 0, angles=[th])),
        [[_E(-0.5j * th), 0], [0, _E(0.5j * th)]],
    )
    # RZ and U1 agree up to global phase only
    assert su2_distance(
        gate_matrix(gate("rz", 0, angles=[th])), gate_matrix(gate("u1", 0, angles=[th]))
    ) < 1e-12


def test_measure_has_no_matrix() -> None:
    with pytest.raises(ValueError):
        gate_matrix(gate("measure", 0))
    with pytest.raises(ValueError):
        statevector(parse_circuit("qubits 1\nh 0\nmeasure 0\n"))
    with pytest.raises(ValueError):
        unitary_of(parse_circuit("qubits 1\nmeasure 0\n"))


def test_statevector_bell() -> None:
    psi = statevector(parse_circuit("qubits 2\nh 0\ncnot 0 1\n"))
    assert np.allclose(psi, [_SQ2, 0.0, 0.0, _SQ2])


def test_statevector_qubit_order() -> None:
    # qubit 0 is the leftmost printed bit, i.e. the most significant index bit
    psi = statevector(Circuit.from_gates(2, [gate("x", 0)]))
    assert np.allclose(psi, [0.0, 0.0, 1.0, 0.0])


def test_empty_circuit_unitary_is_identity() -> None:
    assert np.array_equal(unitary_of(Circuit(2)), np.eye(4))


def test_unitary_respects_gate_order() -> None:
    c = parse_circuit("qubits 1\nh 0\ns 0\n")
    want = gate_matrix(gate("s", 0)) @ gate_matrix(gate("h", 0))
    assert np.allclose(unitary_of(c), want)


def test_size_cap() -> None:
    with pytest.raises(ValueError):
        unitary_of(Circuit(13))


@settings(deadline=None, max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_random_circuit_unitarity(seed: int) -> None:
    rng = random.Random(seed)
    c = random_mixed_circuit(rng, rng.randint(1, 5), rng.randint(1, 20))
    u = unitary_of(c)
    dim = 2**c.n_qubits
    assert np.allclose(u.conj().T @ u, np.eye(dim), atol=1e-10)


def test_phase_insensitive_fidelity() -> None:
    u = gate_matrix(gate("h", 0))
    assert phase_insensitive_fidelity(u, u) == pytest.approx(1.0)
    assert phase_insensitive_fidelity(u, _E(0.3j) * u) == pytest.approx(1.0)
    assert phase_insensitive_fidelity(u, gate_matrix(gate("s", 0))) < 1.0


def test_su2_distance_small_angle() -> None:
    # distance for RZ(theta) vs identity is 2 sin(theta/4)
    th = 0.2
    d = su2_distance(gate_matrix(gate("rz", 0, angles=[th])), np.eye(2))
    assert d == pytest.approx(2.0 * math.sin(th / 4.0), abs=1e-12)
