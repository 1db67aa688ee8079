import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dense_oracle import circuit_unitary
from conftest import random_circuit
from hepgrover.errors import CapacityError, ValidationError
from hepgrover.kernels import available_backends
from hepgrover.statevector import (
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

S2 = 2.0 ** -0.5


class TestZeroState:
    def test_one_qubit(self):
        state = new_zero_state(1)
        np.testing.assert_array_equal(state.amps, [1.0, 0.0])

    def test_three_qubits(self):
        state = new_zero_state(3)
        assert state.amps[0] == 1.0
        assert np.all(state.amps[1:] == 0.0)
        assert state.amps.shape == (8,)

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            new_zero_state(25)
        with pytest.raises(CapacityError):
            new_zero_state(0)
        new_zero_state(24 - 10)  # well inside the guard


class TestGateValidation:
    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            Gate("Q", (0,))

    def test_duplicate_qubits(self):
        with pytest.raises(ValidationError):
            Gate.cx(1, 1)
        with pytest.raises(ValidationError):
            Gate.mcz([0, 2], 2)

    def test_mcz_needs_controls(self):
        with pytest.raises(ValidationError):
            Gate("MCZ", (0,), ())

    def test_out_of_range_index(self):
        state = new_zero_state(2)
        with pytest.raises(ValidationError):
            apply_gate(state, Gate.x(2))


class TestApplyGate:
    def test_x_flips_zero_to_one(self):
        state = apply_gate(new_zero_state(1), Gate.x(0))
        np.testing.assert_allclose(state.amps, [0.0, 1.0], atol=1e-15)

    def test_h_makes_plus(self):
        state = apply_gate(new_zero_state(1), Gate.h(0))
        np.testing.assert_allclose(state.amps, [S2, S2], atol=1e-15)

    def test_mcz_phase_flip(self):
        # |111> picks up -1; |011> (target qubit 2 clear) is untouched
        state = StateVector(3, np.zeros(8))
        state.amps[7] = 1.0
        apply_gate(state, Gate.mcz([0, 1], 2))
        assert state.amps[7] == -1.0

        state = StateVector(3, np.zeros(8))
        state.amps[3] = 1.0
        apply_gate(state, Gate.mcz([0, 1], 2))
        assert state.amps[3] == 1.0

    def test_norm_preserved_per_gate(self, rng):
        state = new_zero_state(4)
        circuit = random_circuit(rng, 4, 60)
        for gate in circuit.gates:
            apply_gate(state, gate)
            assert abs(np.sum(np.abs(state.amps) ** 2) - 1.0) <= 1e-12


class TestApplyCircuit:
    def test_empty_circuit_is_identity(self, rng):
        state = apply_circuit(new_zero_state(3), random_circuit(rng, 3, 20))
        before = state.amps.copy()
        apply_circuit(state, Circuit(3))
        np.testing.assert_array_equal(state.amps, before)

    def test_h_twice_is_identity(self):
        state = apply_circuit(new_zero_state(1), Circuit(1, [Gate.h(0), Gate.h(0)]))
        np.testing.assert_allclose(state.amps, [1.0, 0.0], atol=1e-12)

    def test_two_bit_flips(self):
        state = apply_circuit(new_zero_state(2), Circuit(2, [Gate.x(0), Gate.x(1)]))
        np.testing.assert_allclose(state.amps, [0, 0, 0, 1], atol=1e-15)

    def test_qubit_count_mismatch(self):
        with pytest.raises(ValidationError):
            apply_circuit(new_zero_state(2), Circuit(3, [Gate.x(2)]))

    def test_long_circuit_norm(self, rng):
        state = new_zero_state(5)
        for _ in range(5):
            apply_circuit(state, random_circuit(rng, 5, 400))
        assert abs(np.sum(np.abs(state.amps) ** 2) - 1.0) <= 1e-9


class TestUnitarity:
    """Gate followed by its inverse recovers the input elementwise."""

    @pytest.mark.parametrize(
        "gate",
        [
            Gate.x(1),
            Gate.h(2),
            Gate.z(0),
            Gate.cx(0, 2),
            Gate.cz(1, 3),
            Gate.ccx(0, 1, 3),
            Gate.mcz([0, 1, 2], 3),
        ],
    )
    def test_self_inverse_kinds(self, gate, rng):
        state = _random_state(rng, 4)
        before = state.amps.copy()
        apply_gate(state, gate)
        apply_gate(state, gate)
        np.testing.assert_allclose(state.amps, before, atol=1e-12, rtol=0)

    def test_s_inverse_is_three_applications(self, rng):
        state = _random_state(rng, 3)
        before = state.amps.copy()
        apply_gate(state, Gate.s(1))
        for _ in range(3):
            apply_gate(state, Gate.s(1))
        np.testing.assert_allclose(state.amps, before, atol=1e-12, rtol=0)


def _random_state(rng, n):
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    amps /= np.linalg.norm(amps)
    return StateVector(n, amps)


class TestDenseEquivalence:
    """apply_circuit matches an explicit matrix product for n <= 4."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_random_circuits(self, n, rng):
        for _ in range(20):
            circuit = random_circuit(rng, n, 30)
            expected = circuit_unitary(circuit)[:, 0]
            state = apply_circuit(new_zero_state(n), circuit)
            np.testing.assert_allclose(state.amps, expected, atol=1e-9, rtol=0)

    def test_from_random_initial_state(self, rng):
        circuit = random_circuit(rng, 3, 40)
        start = _random_state(rng, 3)
        expected = circuit_unitary(circuit) @ start.amps
        got = apply_circuit(start.copy(), circuit)
        np.testing.assert_allclose(got.amps, expected, atol=1e-9, rtol=0)


class TestProbabilities:
    def test_uniform_three_qubits(self):
        state = StateVector(3, np.full(8, 2.0 ** -1.5, dtype=complex))
        np.testing.assert_allclose(probabilities(state), np.full(8, 0.125), atol=1e-15)

    def test_one_state(self):
        state = apply_gate(new_zero_state(1), Gate.x(0))
        np.testing.assert_allclose(probabilities(state), [0.0, 1.0], atol=1e-15)

    def test_bell_state(self):
        state = apply_circuit(new_zero_state(2), Circuit(2, [Gate.h(0), Gate.cx(0, 1)]))
        np.testing.assert_allclose(probabilities(state), [0.5, 0, 0, 0.5], atol=1e-12)

    def test_sums_to_one(self, rng):
        state = _random_state(rng, 4)
        assert abs(probabilities(state).sum() - 1.0) < 1e-9


class TestSample:
    def test_deterministic_state(self):
        state = new_zero_state(3)
        apply_gate(state, Gate.x(0))
        apply_gate(state, Gate.x(2))
        assert sample(state, 100, seed=9) == {5: 100}

    def test_uniform_counts_within_five_sigma(self):
        # sigma = sqrt(8192 * 0.25 * 0.75) ~ 39.2 per bin
        state = StateVector(2, np.full(4, 0.5, dtype=complex))
        counts = sample(state, 8192, seed=202)
        assert sum(counts.values()) == 8192
        for c in counts.values():
            assert abs(c - 2048) <= 5 * 39.2

    def test_seed_replay(self):
        state = apply_circuit(new_zero_state(3), Circuit(3, [Gate.h(q) for q in range(3)]))
        assert sample(state, 4096, seed=5) == sample(state, 4096, seed=5)

    def test_shots_guard(self):
        with pytest.raises(ValidationError):
            sample(new_zero_state(1), 0, seed=1)

    def test_chi_square_over_seeds(self):
        # 100 seeds at 8192 shots; at significance 0.001 at most one may fail
        state = StateVector(3, np.full(8, 2.0 ** -1.5, dtype=complex))
        expected = np.full(8, 8192 / 8)
        crit_df7 = 24.3219  # chi-square 0.999 quantile, 7 degrees of freedom
        failures = 0
        for seed in range(100):
            counts = sample(state, 8192, seed=seed)
            observed = np.array([counts.get(i, 0) for i in range(8)], dtype=float)
            chi2 = np.sum((observed - expected) ** 2 / expected)
            if chi2 > crit_df7:
                failures += 1
        assert failures <= 1


class TestBackendParity:
    def test_backends_agree(self, rng):
        backends = available_backends()
        if len(backends) < 2:
            pytest.skip("compiled backend not built")
        from hepgrover import _gatekernels, _gatekernels_py

        for n in (1, 3, 5):
            circuit = random_circuit(rng, n, 80)
            results = {}
            for name, impl in (("compiled", _gatekernels), ("python", _gatekernels_py)):
                amps = np.zeros(1 << n, dtype=np.complex128)
                amps[0] = 1.0
                _run_with_impl(impl, amps, circuit)
                results[name] = amps
            np.testing.assert_allclose(
                results["compiled"], results["python"], atol=1e-15, rtol=0
            )


def _run_with_impl(impl, amps, circuit):
    for gate in circuit.gates:
        t = gate.targets[0]
        if gate.kind == "X":
            impl.flip(amps, 1 << t, 0)
        elif gate.kind == "H":
            impl.hadamard(amps, 1 << t)
        elif gate.kind == "Z":
            impl.phase_flip(amps, 1 << t)
        elif gate.kind == "S":
            impl.phase_s(amps, 1 << t)
        elif gate.kind == "CX":
            impl.flip(amps, 1 << t, 1 << gate.controls[0])
        elif gate.kind == "CCX":
            c1, c2 = gate.controls
            impl.flip(amps, 1 << t, (1 << c1) | (1 << c2))
        else:
            mask = 1 << t
            for c in gate.controls:
                mask |= 1 << c
            impl.phase_flip(amps, mask)


@st.composite
def circuits(draw):
    n = draw(st.integers(min_value=1, max_value=5))
    seed = draw(st.integers(min_value=0, max_value=2**31 - 1))
    length = draw(st.integers(min_value=0, max_value=120))
    return random_circuit(np.random.default_rng(seed), n, length)


@given(circuits())
@settings(max_examples=60, deadline=None)
def test_norm_preservation_property(circuit):
    state = apply_circuit(new_zero_state(circuit.num_qubits), circuit)
    assert abs(np.sum(np.abs(state.amps) ** 2) - 1.0) <= 1e-9


def test_basis_label_reads_msb_first():
    assert basis_label(5, 3) == "101"
    assert basis_label(0, 5) == "00000"
    assert basis_label(15, 5) == "01111"
    with pytest.raises(ValidationError):
        basis_label(8, 3)


def test_state_vector_rejects_wrong_length():
    with pytest.raises(ValidationError):
        StateVector(2, np.zeros(3))


def test_amplitudes_stay_finite(rng):
    state = apply_circuit(new_zero_state(5), random_circuit(rng, 5, 500))
    assert np.all(np.isfinite(state.amps.real))
    assert np.all(np.isfinite(state.amps.imag))
