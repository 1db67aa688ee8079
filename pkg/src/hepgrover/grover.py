"""Grover search construction and analysis.

A search over n qubits marks a set of basis states, then alternates a
phase-flip oracle with the diffusion operator (reflection about the uniform
superposition). The diffusion circuit realizes the reflection as
H^n . (phase flip of |0...0>) . H^n, which equals 2|s><s| - I up to a global
minus sign; every equality claim here is up to global phase.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from hepgrover.errors import UndefinedSearchError, ValidationError
from hepgrover.statevector import (
    Circuit,
    Gate,
    StateVector,
    _check_qubit_count,
    apply_circuit,
    new_zero_state,
    probabilities,
    sample,
)


@dataclass(frozen=True)
class GroverProblem:
    """A search instance: register width, marked states, iteration count."""

    num_qubits: int
    marked: frozenset[int]
    iterations: int

    def __post_init__(self):
        _check_qubit_count(self.num_qubits)
        object.__setattr__(self, "marked", frozenset(self.marked))
        dim = 1 << self.num_qubits
        for m in self.marked:
            if not 0 <= m < dim:
                raise ValidationError(
                    f"marked state {m} out of range for {self.num_qubits} qubits"
                )
        if self.iterations < 0:
            raise ValidationError("iteration count must be >= 0")


@dataclass
class GroverOutcome:
    """Result of one simulated search run."""

    final_state: StateVector
    counts: dict[int, int]
    success_probability: float


def uniform_superposition(n: int) -> StateVector:
    """Equal superposition: every amplitude exactly 2**(-n/2)."""
    _check_qubit_count(n)
    amps = np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128)
    return StateVector(n, amps)


def _pattern_flip_gates(n: int, pattern: int) -> tuple[list[Gate], list[Gate]]:
    # X-conjugation mapping |pattern> onto |1...1> and back
    pre = [Gate.x(q) for q in range(n) if not (pattern >> q) & 1]
    return pre, list(pre)


def _phase_flip_all_ones(n: int) -> Gate:
    # phase flip of |1...1>: Z for one qubit, CZ for two, else MCZ on all lines
    if n == 1:
        return Gate.z(0)
    if n == 2:
        return Gate.cz(0, 1)
    return Gate.mcz(range(n - 1), n - 1)


def oracle_circuit(n: int, marked) -> Circuit:
    """Phase-flip oracle: multiplies each marked basis amplitude by -1.

    Built per marked state as an MCZ on the state's bit pattern, conjugated
    by X on its zero bits. Phase flips commute, so composition order does
    not matter.
    """
    _check_qubit_count(n)
    marked = sorted(set(marked))
    dim = 1 << n
    circuit = Circuit(n, label=f"oracle{marked}")
    for m in marked:
        if not 0 <= m < dim:
            raise ValidationError(f"marked state {m} out of range for {n} qubits")
        pre, post = _pattern_flip_gates(n, m)
        circuit.gates.extend(pre)
        circuit.gates.append(_phase_flip_all_ones(n))
        circuit.gates.extend(post)
    return circuit


def diffusion_circuit(n: int) -> Circuit:
    """Reflection about the uniform superposition (inversion about the mean).

    Equals 2|s><s| - I times a global -1; the sign is unobservable.
    """
    _check_qubit_count(n)
    circuit = Circuit(n, label="diffusion")
    circuit.gates.extend(Gate.h(q) for q in range(n))
    circuit.gates.extend(Gate.x(q) for q in range(n))
    circuit.gates.append(_phase_flip_all_ones(n))
    circuit.gates.extend(Gate.x(q) for q in range(n))
    circuit.gates.extend(Gate.h(q) for q in range(n))
    return circuit


def success_probability_analytic(n: int, m: int, k: int) -> float:
    """Probability of measuring a marked state after k iterations.

    sin**2((2k+1) * theta) with theta = asin(sqrt(m / 2**n)).
    """
    _check_qubit_count(n)
    dim = 1 << n
    if not 1 <= m <= dim:
        raise ValidationError(f"marked count {m} out of range 1..{dim}")
    if k < 0:
        raise ValidationError("iteration count must be >= 0")
    theta = math.asin(math.sqrt(m / dim))
    return math.sin((2 * k + 1) * theta) ** 2


def optimal_iterations(n: int, m: int) -> int:
    """Iteration count maximizing the analytic success probability.

    Evaluates floor and ceil of (pi/4) * sqrt(2**n / m) and keeps the
    argmax; ties go to the smaller count. Always at least as good as
    rounding to the nearest integer.
    """
    _check_qubit_count(n)
    if m == 0:
        raise UndefinedSearchError("no marked states: iteration count undefined")
    dim = 1 << n
    if not 1 <= m <= dim:
        raise ValidationError(f"marked count {m} out of range 1..{dim}")
    raw = (math.pi / 4.0) * math.sqrt(dim / m)
    lo = math.floor(raw)
    hi = math.ceil(raw)
    if lo == hi:
        return lo
    p_lo = success_probability_analytic(n, m, lo)
    p_hi = success_probability_analytic(n, m, hi)
    # tolerance keeps exact mathematical ties from flipping on rounding noise
    return lo if p_lo >= p_hi - 1e-12 else hi


def build_grover(problem: GroverProblem) -> Circuit:
    """H on every qubit, then k repetitions of oracle followed by diffusion."""
    n = problem.num_qubits
    circuit = Circuit(n, label=f"grover(n={n}, k={problem.iterations})")
    circuit.gates.extend(Gate.h(q) for q in range(n))
    oracle = oracle_circuit(n, problem.marked)
    diffusion = diffusion_circuit(n)
    for _ in range(problem.iterations):
        circuit.gates.extend(oracle.gates)
        circuit.gates.extend(diffusion.gates)
    return circuit


def run_grover(problem: GroverProblem, shots: int, seed: int) -> GroverOutcome:
    """Simulate the search and sample its final state."""
    state = apply_circuit(new_zero_state(problem.num_qubits), build_grover(problem))
    counts = sample(state, shots, seed)
    probs = probabilities(state)
    success = float(sum(probs[m] for m in problem.marked))
    return GroverOutcome(final_state=state, counts=counts, success_probability=success)


def classical_expected_probes(n_entries: int) -> float:
    """Mean probes a linear scan needs over a uniformly placed target: (N+1)/2."""
    if n_entries < 1:
        raise ValidationError(f"database size must be >= 1, got {n_entries}")
    return (n_entries + 1) / 2
