"""Monte-Carlo gate-error injection.

Each shot is one trajectory: the circuit is simulated and, after every gate,
each involved qubit suffers a uniformly random non-identity Pauli (X, Y, or
Z) with that gate class's error probability. Measured bits then flip
independently with the readout probability. Gate classes are sized by the
number of involved qubits: one (p1, the U2-style class), two (p2, the
CNOT-style class), three or more (p_mcz).

Shots whose error draws all miss are measured straight from the shared
noiseless final state, so only faulty trajectories are simulated one by one.
All randomness comes from a single seeded generator in a fixed draw order,
making runs reproducible per seed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from hepgrover import kernels
from hepgrover.errors import NoiseProfileError, ValidationError
from hepgrover.statevector import Circuit, apply_circuit, apply_gate, new_zero_state, probabilities

_PROFILE_KEYS = ("p1", "p2", "p_mcz", "readout")


@dataclass(frozen=True)
class NoiseProfile:
    """Per-gate-class error probabilities plus readout bit-flip probability."""

    p1: float
    p2: float
    p_mcz: float
    readout: float
    label: str = ""

    def __post_init__(self):
        for key in _PROFILE_KEYS:
            value = getattr(self, key)
            if not 0.0 <= value <= 1.0:
                raise NoiseProfileError(f"{key} must be in [0, 1], got {value}")

    def gate_rate(self, num_involved: int) -> float:
        if num_involved <= 1:
            return self.p1
        if num_involved == 2:
            return self.p2
        return self.p_mcz

    def is_zero(self) -> bool:
        return self.p1 == self.p2 == self.p_mcz == self.readout == 0.0


@dataclass
class NoisyRunResult:
    """Aggregated trajectory outcomes."""

    counts: dict[int, int]
    trajectories: int
    marked_fraction: float


def load_profile(path) -> NoiseProfile:
    """Read a profile from a flat JSON file with keys p1, p2, p_mcz, readout,
    label."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise NoiseProfileError(f"noise profile not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise NoiseProfileError(f"noise profile {path} is not valid JSON: {exc}") from exc
    missing = [k for k in _PROFILE_KEYS if k not in raw]
    if missing:
        raise NoiseProfileError(f"noise profile {path} missing keys: {', '.join(missing)}")
    try:
        return NoiseProfile(
            p1=float(raw["p1"]),
            p2=float(raw["p2"]),
            p_mcz=float(raw["p_mcz"]),
            readout=float(raw["readout"]),
            label=str(raw.get("label", "")),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, NoiseProfileError):
            raise
        raise NoiseProfileError(f"noise profile {path}: {exc}") from exc


def bundled_profile(name: str) -> NoiseProfile:
    """Load one of the shipped illustrative profiles: ideal, vigo_like,
    melbourne_like (dashes accepted in place of underscores)."""
    slug = name.replace("-", "_")
    res = resources.files("hepgrover").joinpath("profiles", f"{slug}.json")
    if not res.is_file():
        raise NoiseProfileError(f"no bundled noise profile named {name!r}")
    with resources.as_file(res) as path:
        return load_profile(path)


@dataclass(frozen=True)
class GateCountReport:
    """Per-class gate counts and the compound no-error survival estimate."""

    single_qubit: int
    two_qubit: int
    multi_qubit: int
    survival: float

    @property
    def total(self) -> int:
        return self.single_qubit + self.two_qubit + self.multi_qubit


def gate_count_report(circuit: Circuit, profile: NoiseProfile) -> GateCountReport:
    """Count gates per error class; survival is the product of
    (1 - p_class) ** count over the classes."""
    circuit.validate()
    counts = [0, 0, 0]
    for gate in circuit.gates:
        involved = len(gate.qubits)
        counts[min(involved, 3) - 1] += 1
    survival = (
        (1.0 - profile.p1) ** counts[0]
        * (1.0 - profile.p2) ** counts[1]
        * (1.0 - profile.p_mcz) ** counts[2]
    )
    return GateCountReport(
        single_qubit=counts[0],
        two_qubit=counts[1],
        multi_qubit=counts[2],
        survival=survival,
    )


def _apply_pauli(amps: np.ndarray, which: int, qubit: int) -> None:
    tbit = 1 << qubit
    if which == 0:
        kernels.flip(amps, tbit, 0)
    elif which == 1:
        kernels.pauli_y(amps, tbit)
    else:
        kernels.phase_flip(amps, tbit)


def noisy_run(
    circuit: Circuit,
    marked,
    profile: NoiseProfile,
    shots: int,
    seed: int,
) -> NoisyRunResult:
    """Run ``shots`` error-injected trajectories of the circuit.

    ``marked`` is the set of basis states counted toward the marked
    fraction. Identical seeds give identical counts.
    """
    circuit.validate()
    if shots < 1:
        raise ValidationError(f"shots must be >= 1, got {shots}")
    n = circuit.num_qubits
    dim = 1 << n
    marked = frozenset(marked)
    for m in marked:
        if not 0 <= m < dim:
            raise ValidationError(f"marked state {m} out of range for {n} qubits")

    # one error slot per (gate, involved qubit)
    slot_qubit = []
    slot_gate = []
    slot_rate = []
    for g, gate in enumerate(circuit.gates):
        rate = profile.gate_rate(len(gate.qubits))
        for q in gate.qubits:
            slot_gate.append(g)
            slot_qubit.append(q)
            slot_rate.append(rate)
    n_slots = len(slot_rate)
    slot_rate = np.asarray(slot_rate, dtype=float)

    # fixed draw order keeps runs reproducible per seed
    rng = np.random.default_rng(seed)
    err_u = rng.random((shots, n_slots))
    pauli_pick = rng.integers(0, 3, size=(shots, n_slots))
    measure_u = rng.random(shots)
    readout_u = rng.random((shots, n))

    clean = apply_circuit(new_zero_state(n), circuit)
    clean_cdf = np.cumsum(probabilities(clean))
    clean_cdf = clean_cdf / clean_cdf[-1]
    outcomes = np.minimum(
        np.searchsorted(clean_cdf, measure_u, side="right"), dim - 1
    )

    if n_slots:
        err_mask = err_u < slot_rate[None, :]
        faulty = np.nonzero(err_mask.any(axis=1))[0]
    else:
        err_mask = None
        faulty = np.empty(0, dtype=np.intp)

    for s in faulty:
        state = new_zero_state(n)
        amps = state.amps
        row = err_mask[s]
        picks = pauli_pick[s]
        slot = 0
        for gate in circuit.gates:
            apply_gate(state, gate)
            for q in gate.qubits:
                if row[slot]:
                    _apply_pauli(amps, int(picks[slot]), q)
                slot += 1
        cdf = np.cumsum(probabilities(state))
        cdf = cdf / cdf[-1]
        outcomes[s] = min(int(np.searchsorted(cdf, measure_u[s], side="right")), dim - 1)

    if profile.readout > 0.0:
        flips = (readout_u < profile.readout).astype(np.int64)
        flip_masks = flips @ (1 << np.arange(n, dtype=np.int64))
        outcomes = outcomes ^ flip_masks

    tallied = np.bincount(outcomes, minlength=dim)
    counts = {int(i): int(c) for i, c in enumerate(tallied) if c}
    marked_count = sum(counts.get(m, 0) for m in marked)
    return NoisyRunResult(
        counts=counts,
        trajectories=shots,
        marked_fraction=marked_count / shots,
    )
