"""Engine tests: histograms against the exact branching oracle, plus cost model."""

from __future__ import annotations

import math
import random

import pytest

from qtriage.circuit import Circuit, gate, parse_circuit
from qtriage.simulate import (
    BudgetError,
    Regime,
    RegimeError,
    render_histogram,
    run_clifford,
    run_extended,
    sim_cost,
)

from conftest import exact_distribution, random_clifford_circuit, random_low_t_circuit, tv_distance

GHZ = "qubits 3\nh 0\ncnot 0 1\ncnot 1 2\nmeasure 0\nmeasure 1\nmeasure 2\n"


def test_ghz_splits_evenly() -> None:
    hist = run_clifford(parse_circuit(GHZ), 8000, seed=7)
    assert set(hist) == {"000", "111"}
    assert sum(hist.values()) == 8000
    # binomial 3 sigma around 4000 is about 134
    assert abs(hist["000"] - 4000) < 140


def test_deterministic_outcome_is_exact() -> None:
    hist = run_clifford(parse_circuit("qubits 2\nx 0\nmeasure 0\nmeasure 1\n"), 500, seed=0)
    assert hist == {"10": 500}


def test_no_measures_gives_empty_key() -> None:
    assert run_clifford(parse_circuit("qubits 1\nh 0\n"), 100, seed=0) == {"": 100}


def test_same_seed_same_histogram() -> None:
    c = parse_circuit(GHZ)
    assert run_clifford(c, 1000, seed=42) == run_clifford(c, 1000, seed=42)


def test_shots_must_be_positive() -> None:
    with pytest.raises(ValueError):
        run_clifford(parse_circuit(GHZ), 0, seed=0)


def test_clifford_engine_rejects_t_gpointing_to_extended() -> None:
    with pytest.raises(RegimeError) as exc:
        run_clifford(parse_circuit("qubits 1\nt 0\nmeasure 0\n"), 10, seed=0)
    assert "run_extended" in str(exc.value)
    with pytest.raises(RegimeError) as exc:
        run_clifford(parse_circuit("qubits 1\nrz(0.3) 0\nmeasure 0\n"), 10, seed=0)
    assert "transpile" in str(exc.value)


@pytest.mark.parametrize("seed", range(8))
def test_clifford_histograms_track_exact_distribution(seed: int) -> None:
    rng = random.Random(seed)
    c = random_clifford_circuit(rng, rng.randint(2, 6), rng.randint(5, 60))
    exact = exact_distribution(c)
    shots = 50_000
    hist = run_clifford(c, shots, seed=seed + 100)
    assert sum(hist.values()) == shots
    assert set(hist) <= set(exact)  # never sample an impossible outcome
    assert tv_distance(exact, hist, shots) <= 0.02


@pytest.mark.parametrize("seed", range(3))
def test_clifford_mid_circuit_measures(seed: int) -> None:
    rng = random.Random(1000 + seed)
    c = random_clifford_circuit(rng, 4, 30, measured=3, mid_measures=2)
    exact = exact_distribution(c)
    hist = run_clifford(c, 50_000, seed=seed)
    assert set(hist) <= set(exact)
    assert tv_distance(exact, hist, 50_000) <= 0.02


def test_extended_single_t_interference() -> None:
    # H T H maps |0> to cos(pi/8)-weighted |0>
    c = parse_circuit("qubits 1\nh 0\nt 0\nh 0\nmeasure 0\n")
    shots = 20_000
    hist, info = run_extended(c, shots, seed=5, return_info=True)
    assert info == {"branches": 2, "n_effective": 1, "t": 1}
    p0 = math.cos(math.pi / 8.0) ** 2
    assert hist["0"] / shots == pytest.approx(p0, abs=0.012)


def test_extended_without_t_delegates_to_clifford() -> None:
    c = parse_circuit(GHZ)
    hist, info = run_extended(c, 3000, seed=9, return_info=True)
    assert hist == run_clifford(c, 3000, seed=9)
    assert info == {"branches": 1, "n_effective": 3, "t": 0}


def test_extended_branch_count_is_two_to_the_t() -> None:
    ops = [gate("h", 0)] + [gate("t", 0)] * 5 + [gate("measure", 0)]
    _, info = run_extended(Circuit.from_gates(1, ops), 50, seed=0, return_info=True)
    assert info["branches"] == 32
    assert info["t"] == 5


def test_extended_budget_wall() -> None:
    ops = [gate("h", 0)] + [gate("t", 0)] * 4 + [gate("measure", 0)]
    c = Circuit.from_gates(1, ops)
    with pytest.raises(BudgetError) as exc:
        run_extended(c, 10, seed=0, t_max=3)
    assert "t=4" in str(exc.value)
    assert run_extended(c, 10, seed=0, t_max=4)  # at the wall is fine


def test_extended_rejects_generic_rotations() -> None:
    with pytest.raises(RegimeError):
        run_extended(parse_circuit("qubits 1\nrz(0.3) 0\nmeasure 0\n"), 10, seed=0)


def test_extended_mid_circuit_measure_is_exact() -> None:
    # the measured qubit is reused afterwards, forcing the ancilla deferral path
    text = "qubits 2\nh 0\nt 0\nmeasure 0\nx 0\ncnot 0 1\nmeasure 0\nmeasure 1\n"
    c = parse_circuit(text)
    exact = exact_distribution(c)
    hist, info = run_extended(c, 50_000, seed=3, return_info=True)
    assert info["n_effective"] == 3  # one ancilla for the reused qubit
    assert set(hist) <= set(exact)
    assert tv_distance(exact, hist, 50_000) <= 0.02


@pytest.mark.parametrize("seed", range(6))
def test_extended_histograms_track_exact_distribution(seed: int) -> None:
    rng = random.Random(50 + seed)
    n = rng.randint(2, 5)
    c = random_low_t_circuit(rng, n, rng.randint(5, 40), rng.randint(1, 6), measured=rng.randint(1, min(4, n)))
    exact = exact_distribution(c)
    shots = 50_000
    hist = run_extended(c, shots, seed=seed)
    assert sum(hist.values()) == shots
    assert tv_distance(exact, hist, shots) <= 0.02


def test_extended_deterministic_per_seed() -> None:
    rng = random.Random(13)
    c = random_low_t_circuit(rng, 4, 25, 4)
    assert run_extended(c, 5000, seed=2) == run_extended(c, 5000, seed=2)


def test_sim_cost_clifford_regime() -> None:
    est = sim_cost(100, 1000, 0, 0.1)
    assert est.regime is Regime.CLIFFORD_POLY
    assert est.step_bound == 1e7
    assert est.kappa == 1.0


def test_sim_cost_extended_regime() -> None:
    est = sim_cost(10, 100, 3, 0.1)
    assert est.regime is Regime.EXTENDED_EXP
    assert est.kappa == 8.0
    assert est.step_bound == pytest.approx(8 * 27 / 0.01)
    # the prefactor scales linearly
    assert sim_cost(10, 100, 3, 0.1, c=2.0).step_bound == pytest.approx(2 * est.step_bound)


def test_sim_cost_doubles_per_t_gate() -> None:
    lo = sim_cost(10, 100, 10, 0.1).step_bound
    hi = sim_cost(10, 100, 11, 0.1).step_bound
    assert hi / lo == pytest.approx(2.0 * (11 / 10) ** 3)


def test_sim_cost_overflows_to_inf() -> None:
    est = sim_cost(5, 10, 5000, 0.1)
    assert math.isinf(est.step_bound)
    assert math.isinf(est.kappa)


def test_sim_cost_validation() -> None:
    with pytest.raises(ValueError):
        sim_cost(0, 10, 0, 0.1)
    with pytest.raises(ValueError):
        sim_cost(1, -1, 0, 0.1)
    with pytest.raises(ValueError):
        sim_cost(1, 1, -1, 0.1)
    with pytest.raises(ValueError):
        sim_cost(1, 1, 0, 1.0)


def test_render_histogram_sorted() -> None:
    assert render_histogram({"11": 5, "00": 3}) == "00 3\n11 5\n"
    assert render_histogram({}) == ""
