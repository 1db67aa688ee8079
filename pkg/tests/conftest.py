import numpy as np
import pytest

from hepgrover.statevector import Circuit, Gate


def random_circuit(rng: np.random.Generator, n: int, length: int) -> Circuit:
    """Random circuit over the full gate set, MCZ width included."""
    gates = []
    for _ in range(length):
        kind = rng.choice(["X", "H", "Z", "S", "CX", "CZ", "CCX", "MCZ"])
        if kind in ("X", "H", "Z", "S"):
            gates.append(Gate(kind, (int(rng.integers(n)),)))
        elif kind in ("CX", "CZ"):
            if n < 2:
                gates.append(Gate.h(0))
                continue
            a, b = rng.choice(n, size=2, replace=False)
            gates.append(Gate(kind, (int(b),), (int(a),)))
        elif kind == "CCX":
            if n < 3:
                gates.append(Gate.x(int(rng.integers(n))))
                continue
            a, b, c = rng.choice(n, size=3, replace=False)
            gates.append(Gate.ccx(int(a), int(b), int(c)))
        else:
            if n < 2:
                gates.append(Gate.z(0))
                continue
            width = int(rng.integers(2, n + 1))
            qubits = rng.choice(n, size=width, replace=False)
            gates.append(Gate.mcz([int(q) for q in qubits[:-1]], int(qubits[-1])))
    return Circuit(n, gates)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
