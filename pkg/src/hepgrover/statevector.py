"""Exact state-vector simulation of small qubit registers.

An n-qubit register is 2**n complex128 amplitudes; index bit k holds qubit k
with qubit 0 least significant. Display strings put the most-significant
qubit first, so a 5-qubit label reads q4 q3 q2 q1 q0. Gates are applied in
place with bit-mask pair iteration (see the kernels module), never by
building matrices.

Supported gate kinds: X, H, Z, S, CX, CZ, CCX, and MCZ (multi-controlled Z
with any number of controls, simulated natively as a conditional phase flip).

Gates mutate the state they are applied to; do not share one StateVector
across concurrent writers. Distinct states and circuits are safe to hand off
between threads, and sampling is deterministic per seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from hepgrover import kernels
from hepgrover.errors import CapacityError, ValidationError

# Dense amplitude vector capped at 256 MiB of complex128.
MAX_QUBITS = 24

GATE_KINDS = ("X", "H", "Z", "S", "CX", "CZ", "CCX", "MCZ")

# controls required per kind; MCZ accepts one or more
_CONTROL_ARITY = {"X": 0, "H": 0, "Z": 0, "S": 0, "CX": 1, "CZ": 1, "CCX": 2}


@dataclass(frozen=True)
class Gate:
    """A single gate application on named qubit lines.

    ``controls`` is empty for single-qubit kinds; MCZ takes at least one
    control. All qubit indices must be distinct.
    """

    kind: str
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "controls", tuple(self.controls))
        if self.kind not in GATE_KINDS:
            raise ValidationError(f"unknown gate kind {self.kind!r}")
        if len(self.targets) != 1:
            raise ValidationError(f"{self.kind} takes exactly one target")
        want = _CONTROL_ARITY.get(self.kind)
        if want is not None and len(self.controls) != want:
            raise ValidationError(
                f"{self.kind} takes {want} control(s), got {len(self.controls)}"
            )
        if self.kind == "MCZ" and not self.controls:
            raise ValidationError("MCZ takes at least one control")
        qubits = self.controls + self.targets
        if any(q < 0 for q in qubits):
            raise ValidationError("qubit indices must be non-negative")
        if len(set(qubits)) != len(qubits):
            raise ValidationError("gate qubit indices must be distinct")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets

    # constructors keep call sites short
    @classmethod
    def x(cls, q: int) -> "Gate":
        return cls("X", (q,))

    @classmethod
    def h(cls, q: int) -> "Gate":
        return cls("H", (q,))

    @classmethod
    def z(cls, q: int) -> "Gate":
        return cls("Z", (q,))

    @classmethod
    def s(cls, q: int) -> "Gate":
        return cls("S", (q,))

    @classmethod
    def cx(cls, control: int, target: int) -> "Gate":
        return cls("CX", (target,), (control,))

    @classmethod
    def cz(cls, control: int, target: int) -> "Gate":
        return cls("CZ", (target,), (control,))

    @classmethod
    def ccx(cls, control1: int, control2: int, target: int) -> "Gate":
        return cls("CCX", (target,), (control1, control2))

    @classmethod
    def mcz(cls, controls, target: int) -> "Gate":
        return cls("MCZ", (target,), tuple(controls))


@dataclass
class Circuit:
    """Ordered gate list over ``num_qubits`` qubit lines."""

    num_qubits: int
    gates: list[Gate] = field(default_factory=list)
    label: str | None = None

    def validate(self) -> None:
        _check_qubit_count(self.num_qubits)
        for gate in self.gates:
            if max(gate.qubits) >= self.num_qubits:
                raise ValidationError(
                    f"gate {gate.kind} on qubits {gate.qubits} exceeds "
                    f"{self.num_qubits}-qubit circuit"
                )

    def __len__(self) -> int:
        return len(self.gates)


class StateVector:
    """2**n complex amplitudes of an n-qubit register."""

    __slots__ = ("num_qubits", "amps")

    def __init__(self, num_qubits: int, amps: np.ndarray):
        _check_qubit_count(num_qubits)
        amps = np.ascontiguousarray(amps, dtype=np.complex128)
        if amps.shape != (1 << num_qubits,):
            raise ValidationError(
                f"expected {1 << num_qubits} amplitudes, got {amps.shape}"
            )
        self.num_qubits = num_qubits
        self.amps = amps

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amps.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits})"


def _check_qubit_count(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ValidationError(f"qubit count must be an integer, got {n!r}")
    if n < 1 or n > MAX_QUBITS:
        raise CapacityError(f"qubit count {n} outside supported range 1..{MAX_QUBITS}")


def new_zero_state(n: int) -> StateVector:
    """All qubits prepared in |0>, so amplitude index 0 is 1 and the rest 0."""
    _check_qubit_count(n)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n, amps)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate in place and return the state for chaining."""
    if max(gate.qubits) >= state.num_qubits:
        raise ValidationError(
            f"gate {gate.kind} on qubits {gate.qubits} exceeds "
            f"{state.num_qubits}-qubit state"
        )
    amps = state.amps
    kind = gate.kind
    t = gate.targets[0]
    if kind == "X":
        kernels.flip(amps, 1 << t, 0)
    elif kind == "H":
        kernels.hadamard(amps, 1 << t)
    elif kind == "Z":
        kernels.phase_flip(amps, 1 << t)
    elif kind == "S":
        kernels.phase_s(amps, 1 << t)
    elif kind == "CX":
        kernels.flip(amps, 1 << t, 1 << gate.controls[0])
    elif kind == "CCX":
        c1, c2 = gate.controls
        kernels.flip(amps, 1 << t, (1 << c1) | (1 << c2))
    else:  # CZ and MCZ: phase flip where every involved qubit is 1
        mask = 1 << t
        for c in gate.controls:
            mask |= 1 << c
        kernels.phase_flip(amps, mask)
    return state


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply the circuit's gates in order, mutating the state in place."""
    if circuit.num_qubits != state.num_qubits:
        raise ValidationError(
            f"circuit is {circuit.num_qubits}-qubit but state is "
            f"{state.num_qubits}-qubit"
        )
    circuit.validate()
    for gate in circuit.gates:
        apply_gate(state, gate)
    return state


def probabilities(state: StateVector) -> np.ndarray:
    """Measurement probability of each basis state: |amplitude|**2."""
    a = state.amps
    return a.real * a.real + a.imag * a.imag


def sample(state: StateVector, shots: int, seed: int) -> dict[int, int]:
    """Measure ``shots`` times; returns basis-state index -> count.

    Identical seed gives an identical histogram. Counts sum to ``shots``;
    states never observed are omitted.
    """
    if shots < 1:
        raise ValidationError(f"shots must be >= 1, got {shots}")
    p = probabilities(state)
    p = p / p.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, p)
    return {int(i): int(c) for i, c in enumerate(counts) if c}


def basis_label(index: int, num_qubits: int) -> str:
    """Bit string for a basis index, most-significant qubit first."""
    if index < 0 or index >= (1 << num_qubits):
        raise ValidationError(f"basis index {index} out of range for {num_qubits} qubits")
    return format(index, f"0{num_qubits}b")
