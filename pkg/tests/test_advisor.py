"""Dispatch decision, rationale, and serialization tests."""

from __future__ import annotations

import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from qtriage.advisor import (
    DEFAULT_T_THRESHOLD,
    Decision,
    Policy,
    advise,
    advise_counts,
    parse_machine_report,
    render_report,
    to_machine,
)
from qtriage.ansatz import AnsatzKind, build_ansatz, param_count
from qtriage.circuit import parse_circuit
from qtriage.simulate import Regime
from qtriage.surface import HardwareProfile

SCHEMA = [
    "decision",
    "policy",
    "t_full",
    "t_sym",
    "epsilon",
    "threshold",
    "classical_steps",
    "distance",
    "data_qubits",
    "distillation_qubits",
    "total_physical_qubits",
    "hours_per_shot",
    "rationale",
]


def _ansatz(kind: AnsatzKind, n: int, depth: int, seed: int = 0):
    rng = random.Random(seed)
    return build_ansatz(kind, n, depth, [rng.uniform(0.1, 1.0) for _ in range(param_count(kind, n, depth))])


def test_clifford_circuit_stays_classical() -> None:
    rep = advise(parse_circuit("qubits 2\nh 0\ncnot 0 1\n"), 1e-2, Policy.FULL_SYNTHESIS)
    assert rep.decision is Decision.HPC
    assert rep.t_active == 0
    assert rep.classical_cost.regime is Regime.CLIFFORD_POLY
    assert rep.quantum_cost is not None  # the alternative is still shown
    assert rep.quantum_cost.distillation_qubits == 0


def test_policy_selects_the_active_tally() -> None:
    c = _ansatz(AnsatzKind.REAL_AMPLITUDES, 5, 1)
    full = advise(c, 1e-2, Policy.FULL_SYNTHESIS, t_threshold=100)
    sym = advise(c, 1e-2, Policy.SYMMETRY_BREAKING, t_threshold=100)
    assert full.t_report == sym.t_report
    assert full.t_active == 5 * 24  # five generic RY rotations
    assert sym.t_active == 1
    assert full.decision is Decision.QC
    assert sym.decision is Decision.HPC


def test_epsilon_moves_the_full_tally_across_the_threshold() -> None:
    c = _ansatz(AnsatzKind.REAL_AMPLITUDES, 5, 1)
    coarse = advise(c, 1e-2, Policy.FULL_SYNTHESIS)
    fine = advise(c, 1e-10, Policy.FULL_SYNTHESIS)
    assert coarse.t_active == 120 and coarse.decision is Decision.HPC
    assert fine.t_active == 520 and fine.decision is Decision.QC


def test_boundary_tally_is_still_classical() -> None:
    rep = advise_counts(300, 300, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS, n_qubits=5, gate_count=10)
    assert rep.decision is Decision.HPC
    rep = advise_counts(301, 301, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS, n_qubits=5, gate_count=10)
    assert rep.decision is Decision.QC


def test_override_path_reports_reference_quantum_cost() -> None:
    rep = advise_counts(
        10**8, 10**8, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS,
        n_qubits=5, gate_count=0, logical_qubits=5,
    )
    assert rep.decision is Decision.QC
    q = rep.quantum_cost
    assert q is not None
    assert (q.d, q.total_physical) == (25, 158431)
    m = to_machine(rep)
    assert m.classical_steps is None  # 2^1e8 overflows the float cost model
    assert m.distance == 25


def test_infeasible_when_no_distance_fits() -> None:
    rep = advise_counts(
        400, 400, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS,
        n_qubits=3, gate_count=10, profile=HardwareProfile(p=9e-3),
    )
    assert rep.decision is Decision.INFEASIBLE
    assert rep.quantum_cost is None
    assert "no code distance fits" in rep.rationale
    m = to_machine(rep)
    assert m.distance is None and m.hours_per_shot is None


def test_contested_band_is_flagged() -> None:
    mid = advise_counts(1000, 1000, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS, n_qubits=3, gate_count=5)
    assert mid.decision is Decision.QC
    assert "contested band" in mid.rationale
    low = advise_counts(10, 10, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS, n_qubits=3, gate_count=5)
    assert "contested band" not in low.rationale
    high = advise_counts(10**8, 10**8, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS, n_qubits=3, gate_count=5, logical_qubits=5)
    assert "contested band" not in high.rationale


def test_quantum_side_prices_the_active_tally() -> None:
    rep = advise(_ansatz(AnsatzKind.ENERGY_BASED, 4, 2), 1e-2, Policy.SYMMETRY_BREAKING)
    assert rep.quantum_cost is not None
    assert rep.quantum_cost.assumptions["t"] == rep.t_active == 2


def test_threshold_validation() -> None:
    with pytest.raises(ValueError):
        advise_counts(1, 1, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS, n_qubits=1, gate_count=1, t_threshold=-1)


def test_text_report_layout() -> None:
    rep = advise_counts(
        1, 1, epsilon=1e-2, policy=Policy.SYMMETRY_BREAKING,
        n_qubits=5, gate_count=9, logical_qubits=5,
    )
    lines = render_report(rep).decode().splitlines()
    assert lines[0] == "decision: HPC"
    assert lines[1] == "policy: symmetry"
    assert lines[2] == "t-count: full=1 sym=1 (epsilon=0.01)"
    assert lines[3] == "threshold: 300"
    assert lines[4] == "classical: ExtendedExp, steps<=20000"
    assert lines[5] == "quantum: d=7, data=735, distillation=14400, total=15135, hours/shot=2.07e-08"
    assert lines[6].startswith("rationale: t=1 under the symmetry-breaking policy")


def test_text_report_without_quantum_side() -> None:
    rep = advise_counts(
        400, 400, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS,
        n_qubits=3, gate_count=10, profile=HardwareProfile(p=9e-3),
    )
    assert "quantum: unavailable" in render_report(rep).decode()


def test_machine_report_schema_and_round_trip() -> None:
    rep = advise(_ansatz(AnsatzKind.HARDWARE_EFFICIENT, 4, 2), 1e-2, Policy.FULL_SYNTHESIS)
    raw = render_report(rep, format="machine")
    obj = json.loads(raw)
    assert list(obj) == SCHEMA  # exact field order
    back = parse_machine_report(raw)
    assert back == to_machine(rep)
    assert back.decision in {"HPC", "QC", "Infeasible"}
    assert back.policy == "full"


def test_machine_report_rejects_foreign_fields() -> None:
    rep = advise_counts(1, 1, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS, n_qubits=1, gate_count=1)
    obj = json.loads(render_report(rep, format="machine"))
    obj["extra"] = 1
    with pytest.raises(ValueError):
        parse_machine_report(json.dumps(obj))
    del obj["extra"], obj["rationale"]
    with pytest.raises(ValueError):
        parse_machine_report(json.dumps(obj))


def test_render_rejects_unknown_format() -> None:
    rep = advise_counts(1, 1, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS, n_qubits=1, gate_count=1)
    with pytest.raises(ValueError):
        render_report(rep, format="yaml")


@settings(deadline=None, max_examples=25)
@given(
    st.sampled_from(list(AnsatzKind)),
    st.integers(2, 5),
    st.integers(1, 3),
    st.integers(0, 600),
)
def test_full_policy_never_dispatches_below_symmetry(
    kind: AnsatzKind, n: int, depth: int, threshold: int
) -> None:
    # t_sym <= t_full, so HPC under full synthesis implies HPC under symmetry
    c = _ansatz(kind, n, depth, seed=n * depth)
    full = advise(c, 1e-2, Policy.FULL_SYNTHESIS, t_threshold=threshold)
    sym = advise(c, 1e-2, Policy.SYMMETRY_BREAKING, t_threshold=threshold)
    assert sym.t_active <= full.t_active
    if full.decision is Decision.HPC:
        assert sym.decision is Decision.HPC


@settings(deadline=None, max_examples=15)
@given(st.integers(0, 500), st.integers(0, 500))
def test_raising_the_threshold_never_un_dispatches(t1: int, t2: int) -> None:
    lo, hi = sorted((t1, t2))
    rep_lo = advise_counts(64, 64, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS, n_qubits=2, gate_count=5, t_threshold=lo)
    rep_hi = advise_counts(64, 64, epsilon=1e-2, policy=Policy.FULL_SYNTHESIS, n_qubits=2, gate_count=5, t_threshold=hi)
    if rep_lo.decision is Decision.HPC:
        assert rep_hi.decision is Decision.HPC


def test_default_threshold_constant() -> None:
    assert DEFAULT_T_THRESHOLD == 300
