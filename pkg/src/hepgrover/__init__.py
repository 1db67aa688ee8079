"""Grover-search state-vector toolkit for four-lepton event selection."""

from hepgrover.statevector import (
    MAX_QUBITS,
    Circuit,
    Gate,
    StateVector,
    apply_circuit,
    apply_gate,
    basis_label,
    new_zero_state,
    probabilities,
    sample,
)
from hepgrover.grover import (
    GroverOutcome,
    GroverProblem,
    build_grover,
    classical_expected_probes,
    diffusion_circuit,
    optimal_iterations,
    oracle_circuit,
    run_grover,
    success_probability_analytic,
    uniform_superposition,
)
from hepgrover.encoding import (
    EventGroup,
    LeptonRecord,
    SearchReport,
    Selection,
    decode_report,
    encode_v1,
    encode_v2,
    group_records,
    search_database,
)
from hepgrover.noise import (
    NoiseProfile,
    NoisyRunResult,
    bundled_profile,
    gate_count_report,
    load_profile,
    noisy_run,
)
from hepgrover.dataset import parse_dataset
from hepgrover.qasm import emit_circuit_text, parse_circuit_text

__version__ = "0.1.0"

__all__ = [
    "MAX_QUBITS",
    "Circuit",
    "Gate",
    "StateVector",
    "apply_circuit",
    "apply_gate",
    "basis_label",
    "new_zero_state",
    "probabilities",
    "sample",
    "GroverOutcome",
    "GroverProblem",
    "build_grover",
    "classical_expected_probes",
    "diffusion_circuit",
    "optimal_iterations",
    "oracle_circuit",
    "run_grover",
    "success_probability_analytic",
    "uniform_superposition",
    "EventGroup",
    "LeptonRecord",
    "SearchReport",
    "Selection",
    "decode_report",
    "encode_v1",
    "encode_v2",
    "group_records",
    "search_database",
    "NoiseProfile",
    "NoisyRunResult",
    "bundled_profile",
    "gate_count_report",
    "load_profile",
    "noisy_run",
    "parse_dataset",
    "emit_circuit_text",
    "parse_circuit_text",
]
