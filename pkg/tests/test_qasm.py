import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_circuit
from hepgrover.encoding import LeptonRecord, encode_v2, group_records
from hepgrover.errors import CircuitTextError
from hepgrover.grover import GroverProblem, build_grover
from hepgrover.qasm import circuit_to_text, emit_circuit_text, parse_circuit_text
from hepgrover.statevector import Circuit, Gate, apply_circuit, new_zero_state, probabilities


def round_trip_distributions(circuit, tmp_path):
    """Original distribution and the re-parsed file's distribution restricted
    to the original qubits, plus the mass stranded on any ancilla lines."""
    path = tmp_path / "circuit.qasm"
    emit_circuit_text(circuit, path)
    parsed = parse_circuit_text(path)
    original = probabilities(apply_circuit(new_zero_state(circuit.num_qubits), circuit))
    replayed = probabilities(apply_circuit(new_zero_state(parsed.num_qubits), parsed))
    dim = 1 << circuit.num_qubits
    return original, replayed[:dim], float(replayed[dim:].sum())


class TestEmit:
    def test_empty_circuit_is_declaration_only(self, tmp_path):
        text = circuit_to_text(Circuit(5))
        body = [l for l in text.splitlines() if l and not l.startswith(("OPENQASM", "include"))]
        assert body == ["qreg q[5];"]
        path = tmp_path / "empty.qasm"
        emit_circuit_text(Circuit(5), path)
        parsed = parse_circuit_text(path)
        assert parsed.num_qubits == 5
        assert parsed.gates == []

    def test_single_x_gate(self, tmp_path):
        circuit = Circuit(1, [Gate.x(0)])
        original, replayed, tail = round_trip_distributions(circuit, tmp_path)
        np.testing.assert_allclose(replayed, [0.0, 1.0], atol=1e-12)
        assert tail == 0.0

    def test_label_round_trips_as_comment(self, tmp_path):
        circuit = Circuit(2, [Gate.h(0)], label="half of a bell pair")
        path = tmp_path / "labeled.qasm"
        emit_circuit_text(circuit, path)
        assert parse_circuit_text(path).label == "half of a bell pair"

    def test_mcz_single_control_becomes_cz(self):
        text = circuit_to_text(Circuit(2, [Gate.mcz([0], 1)]))
        assert "cz q[0],q[1];" in text
        assert "anc" not in text

    def test_mcz_two_controls_becomes_h_ccx_h(self):
        text = circuit_to_text(Circuit(3, [Gate.mcz([0, 1], 2)]))
        lines = text.splitlines()
        assert "h q[2];" in lines
        assert "ccx q[0],q[1],q[2];" in lines
        assert "anc" not in text

    def test_mcz_many_controls_uses_ancilla_ladder(self, tmp_path):
        circuit = Circuit(5, [Gate.mcz([0, 1, 2, 3], 4)])
        text = circuit_to_text(circuit)
        assert "qreg anc[2];" in text
        original, replayed, tail = round_trip_distributions(circuit, tmp_path)
        np.testing.assert_allclose(replayed, original, atol=1e-9, rtol=0)
        assert tail <= 1e-12


class TestRoundTrip:
    def test_scheme_two_circuit(self, tmp_path):
        records = [
            LeptonRecord(row=i, event_id=1, instance=v, pt=5.0 + i)
            for i, v in enumerate([0, 1, 2, 3, 0, 1, 2, 0])
        ]
        circuit = encode_v2(group_records(records, 8)[0])
        original, replayed, tail = round_trip_distributions(circuit, tmp_path)
        np.testing.assert_allclose(replayed, original, atol=1e-9, rtol=0)
        assert tail <= 1e-12

    def test_grover_circuits_all_widths(self, tmp_path):
        for n in range(1, 6):
            circuit = build_grover(GroverProblem(n, frozenset({(1 << n) - 1}), 1))
            original, replayed, tail = round_trip_distributions(circuit, tmp_path)
            np.testing.assert_allclose(replayed, original, atol=1e-9, rtol=0, err_msg=str(n))
            assert tail <= 1e-12

    def test_randomized_circuits(self, tmp_path, rng):
        for _ in range(60):
            n = int(rng.integers(1, 6))
            circuit = random_circuit(rng, n, int(rng.integers(0, 200)))
            original, replayed, tail = round_trip_distributions(circuit, tmp_path)
            np.testing.assert_allclose(replayed, original, atol=1e-9, rtol=0)
            assert tail <= 1e-9


@given(st.integers(min_value=0, max_value=2**31 - 1),
       st.integers(min_value=1, max_value=5),
       st.integers(min_value=0, max_value=60))
@settings(max_examples=40, deadline=None)
def test_every_emitted_file_parses(tmp_path_factory, seed, n, length):
    circuit = random_circuit(np.random.default_rng(seed), n, length)
    path = tmp_path_factory.mktemp("rt") / "c.qasm"
    emit_circuit_text(circuit, path)
    parsed = parse_circuit_text(path)
    assert parsed.num_qubits >= circuit.num_qubits


class TestParserErrors:
    def write(self, tmp_path, text):
        path = tmp_path / "bad.qasm"
        path.write_text(text)
        return path

    def test_unknown_gate_names_token_and_line(self, tmp_path):
        path = self.write(tmp_path, 'OPENQASM 2.0;\nqreg q[2];\nfoo q[0];\n')
        with pytest.raises(CircuitTextError) as err:
            parse_circuit_text(path)
        assert "foo" in str(err.value)
        assert err.value.line == 3

    def test_undeclared_register(self, tmp_path):
        path = self.write(tmp_path, 'OPENQASM 2.0;\nqreg q[2];\nx r[0];\n')
        with pytest.raises(CircuitTextError) as err:
            parse_circuit_text(path)
        assert "r" in str(err.value)

    def test_qubit_index_out_of_range(self, tmp_path):
        path = self.write(tmp_path, 'OPENQASM 2.0;\nqreg q[2];\nx q[5];\n')
        with pytest.raises(CircuitTextError) as err:
            parse_circuit_text(path)
        assert "out of range" in str(err.value)

    def test_missing_semicolon(self, tmp_path):
        path = self.write(tmp_path, 'OPENQASM 2.0;\nqreg q[1];\nx q[0]\n')
        with pytest.raises(CircuitTextError) as err:
            parse_circuit_text(path)
        assert err.value.line == 3
        assert err.value.column is not None

    def test_gate_before_register(self, tmp_path):
        path = self.write(tmp_path, 'OPENQASM 2.0;\nx q[0];\n')
        with pytest.raises(CircuitTextError):
            parse_circuit_text(path)

    def test_measure_is_unsupported(self, tmp_path):
        path = self.write(tmp_path, 'OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\nmeasure q[0] -> c[0];\n')
        with pytest.raises(CircuitTextError) as err:
            parse_circuit_text(path)
        assert "measure" in str(err.value)

    def test_wrong_arity(self, tmp_path):
        path = self.write(tmp_path, 'OPENQASM 2.0;\nqreg q[3];\ncx q[0];\n')
        with pytest.raises(CircuitTextError) as err:
            parse_circuit_text(path)
        assert "operand" in str(err.value)

    def test_missing_register_declaration(self, tmp_path):
        path = self.write(tmp_path, 'OPENQASM 2.0;\ninclude "qelib1.inc";\n')
        with pytest.raises(CircuitTextError):
            parse_circuit_text(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(CircuitTextError):
            parse_circuit_text(tmp_path / "nope.qasm")

    def test_creg_and_comments_are_tolerated(self, tmp_path):
        path = self.write(
            tmp_path,
            '// header comment\nOPENQASM 2.0;\nqreg q[2];\ncreg c[2];\n'
            'x q[0]; // flip\n',
        )
        parsed = parse_circuit_text(path)
        assert [g.kind for g in parsed.gates] == ["X"]
        assert parsed.num_qubits == 2
