"""Circuit text export and import, OPENQASM 2.0 style.

Emitted files use this grammar subset (one statement per line, `//` comments
allowed):

    OPENQASM 2.0;
    include "qelib1.inc";
    qreg <name>[<size>];           // one or more registers
    creg <name>[<size>];           // accepted and ignored on parse
    <gate> <reg>[<i>]{,<reg>[<i>]};

Gate tokens: x, h, z, s, cx (control, target), cz, ccx (control, control,
target). Multi-controlled Z gates are not emitted directly: one control
becomes cz, two controls become H-CCX-H, and three or more controls use a
CCX ladder through a dedicated `anc` register (controls - 2 clean ancillas)
that is uncomputed afterwards. Simulating the emitted file therefore
reproduces the original distribution exactly on the original qubits, with
the ancilla lines back in |0>.

Registers are mapped to global qubit indices in declaration order.
"""
from __future__ import annotations

import re

from hepgrover.errors import CircuitTextError, ValidationError
from hepgrover.statevector import Circuit, Gate

_GATE_ARITY = {"x": 1, "h": 1, "z": 1, "s": 1, "cx": 2, "cz": 2, "ccx": 3}

_QREG_RE = re.compile(r"^(qreg|creg)\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")
_OPERAND_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")
_GATE_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s+(.+)$")


def _mcz_ancillas(circuit: Circuit) -> int:
    """Clean ancillas needed to decompose the widest MCZ in the circuit."""
    need = 0
    for gate in circuit.gates:
        if gate.kind == "MCZ":
            need = max(need, len(gate.controls) - 2)
    return need


def _emit_mcz(lines, controls, target, qname):
    c = len(controls)
    if c == 1:
        lines.append(f"cz {qname(controls[0])},{qname(target)};")
        return
    if c == 2:
        lines.append(f"h {qname(target)};")
        lines.append(f"ccx {qname(controls[0])},{qname(controls[1])},{qname(target)};")
        lines.append(f"h {qname(target)};")
        return
    # CCX ladder: fold the first c-1 controls into ancillas, flip the phase
    # with the last control, then uncompute
    compute = [f"ccx {qname(controls[0])},{qname(controls[1])},anc[0];"]
    for j in range(2, c - 1):
        compute.append(f"ccx {qname(controls[j])},anc[{j - 2}],anc[{j - 1}];")
    lines.extend(compute)
    lines.append(f"h {qname(target)};")
    lines.append(f"ccx {qname(controls[c - 1])},anc[{c - 3}],{qname(target)};")
    lines.append(f"h {qname(target)};")
    lines.extend(reversed(compute))


def circuit_to_text(circuit: Circuit) -> str:
    """Render the circuit in the grammar above."""
    circuit.validate()
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    if circuit.label:
        lines.insert(0, f"// {circuit.label}")
    lines.append(f"qreg q[{circuit.num_qubits}];")
    n_anc = _mcz_ancillas(circuit)
    if n_anc > 0:
        lines.append(f"qreg anc[{n_anc}];")

    def qname(i: int) -> str:
        return f"q[{i}]"

    for gate in circuit.gates:
        kind = gate.kind
        t = gate.targets[0]
        if kind == "MCZ":
            _emit_mcz(lines, gate.controls, t, qname)
        elif kind in ("X", "H", "Z", "S"):
            lines.append(f"{kind.lower()} {qname(t)};")
        elif kind in ("CX", "CZ"):
            lines.append(f"{kind.lower()} {qname(gate.controls[0])},{qname(t)};")
        else:  # CCX
            c1, c2 = gate.controls
            lines.append(f"ccx {qname(c1)},{qname(c2)},{qname(t)};")
    return "\n".join(lines) + "\n"


def emit_circuit_text(circuit: Circuit, path) -> None:
    """Write the circuit text to ``path`` atomically."""
    from hepgrover.report import write_text_atomic

    write_text_atomic(path, circuit_to_text(circuit))


def _strip_comment(line: str) -> str:
    cut = line.find("//")
    return line if cut < 0 else line[:cut]


def parse_circuit_text(path) -> Circuit:
    """Parse a file in the emitted grammar subset back into a Circuit.

    Raises CircuitTextError with line and column on syntax problems,
    unknown gate tokens, or references to undeclared qubits.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except FileNotFoundError as exc:
        raise CircuitTextError(f"cannot read circuit file: {path}") from exc

    registers: dict[str, tuple[int, int]] = {}  # name -> (offset, size)
    total_qubits = 0
    gates: list[Gate] = []
    label = None

    for lineno, raw in enumerate(raw_lines, start=1):
        stripped_comment = raw.strip()
        if stripped_comment.startswith("//") and label is None and not registers and not gates:
            label = stripped_comment[2:].strip() or None
        text = _strip_comment(raw).strip()
        if not text:
            continue
        if not text.endswith(";"):
            raise CircuitTextError(
                "statement must end with ';'", lineno, len(raw.rstrip()) + 1
            )
        stmt = text[:-1].strip()
        if not stmt:
            continue
        col = raw.index(stmt.split()[0]) + 1

        if stmt.startswith("OPENQASM"):
            if not re.fullmatch(r"OPENQASM\s+2(\.\d+)?", stmt):
                raise CircuitTextError(f"unsupported version line {stmt!r}", lineno, col)
            continue
        if stmt.startswith("include"):
            if not re.fullmatch(r'include\s+"[^"]*"', stmt):
                raise CircuitTextError("malformed include", lineno, col)
            continue

        reg = _QREG_RE.fullmatch(stmt)
        if reg:
            keyword, name, size = reg.group(1), reg.group(2), int(reg.group(3))
            if keyword == "creg":
                continue
            if name in registers:
                raise CircuitTextError(f"register {name!r} declared twice", lineno, col)
            if size < 1:
                raise CircuitTextError(f"register {name!r} must have size >= 1", lineno, col)
            registers[name] = (total_qubits, size)
            total_qubits += size
            continue

        match = _GATE_RE.fullmatch(stmt)
        if not match:
            raise CircuitTextError(f"cannot parse statement {stmt!r}", lineno, col)
        name, operand_text = match.group(1), match.group(2)
        if name in ("measure", "barrier", "reset", "gate", "if"):
            raise CircuitTextError(f"unsupported statement {name!r}", lineno, col)
        if name not in _GATE_ARITY:
            raise CircuitTextError(f"unsupported gate name {name!r}", lineno, col)
        if not registers:
            raise CircuitTextError("gate before any qreg declaration", lineno, col)

        operands = []
        for part in operand_text.split(","):
            op = _OPERAND_RE.fullmatch(part.strip())
            part_col = raw.index(part.strip()) + 1 if part.strip() in raw else col
            if not op:
                raise CircuitTextError(f"malformed operand {part.strip()!r}", lineno, part_col)
            reg_name, idx = op.group(1), int(op.group(2))
            if reg_name not in registers:
                raise CircuitTextError(
                    f"undeclared register {reg_name!r}", lineno, part_col
                )
            offset, size = registers[reg_name]
            if idx >= size:
                raise CircuitTextError(
                    f"qubit {reg_name}[{idx}] out of range (size {size})",
                    lineno,
                    part_col,
                )
            operands.append(offset + idx)
        if len(operands) != _GATE_ARITY[name]:
            raise CircuitTextError(
                f"{name} takes {_GATE_ARITY[name]} operand(s), got {len(operands)}",
                lineno,
                col,
            )

        try:
            if name == "cx":
                gates.append(Gate.cx(operands[0], operands[1]))
            elif name == "cz":
                gates.append(Gate.cz(operands[0], operands[1]))
            elif name == "ccx":
                gates.append(Gate.ccx(operands[0], operands[1], operands[2]))
            else:
                gates.append(Gate(name.upper(), (operands[0],)))
        except ValidationError as exc:
            raise CircuitTextError(str(exc), lineno, col) from exc

    if not registers:
        raise CircuitTextError("no qreg declaration found", len(raw_lines) or 1)
    circuit = Circuit(total_qubits, gates, label=label)
    circuit.validate()
    return circuit
