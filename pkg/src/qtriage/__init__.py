"""Resource triage for parameterized quantum circuits.

Lower circuits to Clifford+T, count T-gates under two policies, simulate the
Clifford and low-T regimes classically, price fault-tolerant execution on a
surface code, estimate data-loading budgets for Earth-observation tensors,
and decide whether a workload belongs on an HPC simulator or quantum
hardware.
"""

from .advisor import (
    DEFAULT_T_THRESHOLD,
    T_ADVANTAGE_CONCLUSION,
    T_ADVANTAGE_INTRO,
    Decision,
    DispatchReport,
    MachineReport,
    Policy,
    advise,
    advise_counts,
    parse_machine_report,
    render_report,
    to_machine,
)
from .ansatz import AnsatzKind, build_ansatz, param_count
from .circuit import (
    Circuit,
    GateKind,
    GateOp,
    ParseError,
    circuit_stats,
    gate,
    parse_circuit,
    render_circuit,
)
from .config import Config, load_config
from .dense import phase_insensitive_fidelity, statevector, unitary_of
from .encoding import (
    Amplitude,
    AnglePerFeature,
    EOTensorSpec,
    HybridCompressed,
    Modality,
    compare_modalities,
    dataset_profile,
    encoding_cost,
    parse_tensor_spec,
)
from .simulate import (
    BudgetError,
    ClassicalCostEstimate,
    Regime,
    render_histogram,
    run_clifford,
    run_extended,
    sim_cost,
)
from .surface import (
    HardwareProfile,
    InfeasibleError,
    SurfaceCodeEstimate,
    estimate_surface_code,
    load_calibration,
    required_distance,
    scan,
)
from .synthesis import SynthesisError
from .tableau import RegimeError, Tableau, apply_clifford, measure
from .transpiler import (
    GateClass,
    SynthesisMode,
    TCountReport,
    TranspiledCircuit,
    classify_gate,
    synthesize_approx,
    synthesize_exact,
    t_count,
    transpile,
)

__version__ = "0.1.0"

__all__ = [
    "AnsatzKind",
    "Amplitude",
    "AnglePerFeature",
    "BudgetError",
    "Circuit",
    "ClassicalCostEstimate",
    "Config",
    "DEFAULT_T_THRESHOLD",
    "Decision",
    "DispatchReport",
    "EOTensorSpec",
    "GateClass",
    "GateKind",
    "GateOp",
    "HardwareProfile",
    "HybridCompressed",
    "InfeasibleError",
    "MachineReport",
    "Modality",
    "ParseError",
    "Policy",
    "Regime",
    "RegimeError",
    "SurfaceCodeEstimate",
    "SynthesisError",
    "SynthesisMode",
    "TCountReport",
    "T_ADVANTAGE_CONCLUSION",
    "T_ADVANTAGE_INTRO",
    "Tableau",
    "TranspiledCircuit",
    "advise",
    "advise_counts",
    "apply_clifford",
    "build_ansatz",
    "circuit_stats",
    "classify_gate",
    "compare_modalities",
    "dataset_profile",
    "encoding_cost",
    "estimate_surface_code",
    "gate",
    "load_calibration",
    "load_config",
    "measure",
    "param_count",
    "parse_circuit",
    "parse_machine_report",
    "parse_tensor_spec",
    "phase_insensitive_fidelity",
    "render_circuit",
    "render_histogram",
    "render_report",
    "required_distance",
    "run_clifford",
    "run_extended",
    "scan",
    "sim_cost",
    "statevector",
    "synthesize_approx",
    "synthesize_exact",
    "t_count",
    "to_machine",
    "transpile",
    "unitary_of",
]
