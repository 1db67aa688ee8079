"""Encoding lepton-table groups into 5-qubit Grover searches and decoding
measurement histograms back into selected table rows.

Two encodings are provided. Both use five qubit lines and mark the
instance value 3, the signature of a fourth lepton in one collision event.

Scheme 1 (groups of four rows)
    q0, q1  index register: position of the row inside its group
    q2, q3  value register: the row's 2-bit instance value
    q4      ancilla for phase kickback
    The index register is put in superposition, a controlled-X cascade
    loads each row's instance into the value register, the ancilla flips
    the phase of value 11, the load is uncomputed, and diffusion acts on
    the index register alone. After the final iteration the load runs once
    more so the measured string shows both the winning index and its value.

Scheme 2 (groups of eight rows)
    q0, q1      value register searched by Grover (marked state 11)
    q2, q3, q4  binary index register, written classically with X gates
    A classical pre-scan locates the instance-3 row; X gates write its
    position in binary (bit 0 on q2, bit 1 on q3, bit 2 on q4) and a
    one-iteration search drives the value register to 11. This needs far
    fewer gates than scheme 1, which is the point of the second encoding.

Groups holding several instance-3 rows are flagged multi-hit. Scheme 1
handles them natively in one circuit, but the amplified mass splits evenly
across the hits, which leaves every basis state below any threshold above
0.5, so no selection is reported. Scheme 2 cannot express two positions in
one index write, so one circuit is emitted per occurrence and each yields
its own report entry.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from hepgrover.errors import ValidationError
from hepgrover.grover import diffusion_circuit, optimal_iterations
from hepgrover.statevector import (
    Circuit,
    Gate,
    apply_circuit,
    new_zero_state,
    sample,
)

TARGET_INSTANCE = 3
DEFAULT_THRESHOLD = 0.80
_NUM_QUBITS = 5


@dataclass(frozen=True)
class LeptonRecord:
    """One table row: 0-based row index, collision event id, lepton instance
    ordinal (0..3), transverse momentum in GeV."""

    row: int
    event_id: int
    instance: int
    pt: float

    def __post_init__(self):
        if self.instance not in (0, 1, 2, 3):
            raise ValidationError(f"instance must be 0..3, got {self.instance}")
        if self.pt < 0:
            raise ValidationError(f"pt must not be negative, got {self.pt}")


@dataclass(frozen=True)
class EventGroup:
    """Fixed-size slice of the table fed to one search; synthetic filler rows
    are flagged in ``padding_mask`` and are never reportable."""

    group_id: int
    records: tuple[LeptonRecord, ...]
    padding_mask: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        object.__setattr__(self, "padding_mask", tuple(self.padding_mask))
        if len(self.records) not in (4, 8):
            raise ValidationError(
                f"group size must be 4 or 8, got {len(self.records)}"
            )
        if len(self.padding_mask) != len(self.records):
            raise ValidationError("padding mask length must match records")
        for rec, padded in zip(self.records, self.padding_mask):
            if padded and rec.instance == TARGET_INSTANCE:
                raise ValidationError("padding rows must not carry instance 3")

    @property
    def scheme(self) -> int:
        return 1 if len(self.records) == 4 else 2

    def marked_slots(self) -> list[int]:
        """Group-local positions of real instance-3 rows."""
        return [
            i
            for i, (rec, padded) in enumerate(zip(self.records, self.padding_mask))
            if not padded and rec.instance == TARGET_INSTANCE
        ]


@dataclass(frozen=True)
class Selection:
    """A row passing the reporting threshold."""

    row: int
    event_id: int
    pt: float
    state: int
    fraction: float


@dataclass
class SearchReport:
    """Measurement outcome of one group search."""

    group_id: int
    scheme: int
    shots: int
    threshold: float
    counts: dict[int, int]
    selections: list[Selection]
    peak_state: int
    peak_fraction: float
    multi_hit: bool = False
    occurrence: int | None = None


_PAD = LeptonRecord(row=-1, event_id=-1, instance=0, pt=0.0)


def group_records(records, group_size: int) -> list[EventGroup]:
    """Partition records in order; the final partial group is padded with
    filler rows (instance 0, pt 0) flagged in the padding mask."""
    if group_size not in (4, 8):
        raise ValidationError(f"group size must be 4 or 8, got {group_size}")
    records = list(records)
    groups = []
    for gid, start in enumerate(range(0, len(records), group_size)):
        chunk = records[start : start + group_size]
        n_pad = group_size - len(chunk)
        mask = (False,) * len(chunk) + (True,) * n_pad
        chunk = tuple(chunk) + (_PAD,) * n_pad
        groups.append(EventGroup(group_id=gid, records=chunk, padding_mask=mask))
    return groups


def _index_conjugation(slot: int) -> list[Gate]:
    # X on the index qubits whose bit of `slot` is 0, so CCX fires on |slot>
    return [Gate.x(q) for q in (0, 1) if not (slot >> q) & 1]


def _value_load_gates(group: EventGroup) -> list[Gate]:
    # |i>|00> -> |i>|instance_i> via CCX controlled on the index pattern
    gates: list[Gate] = []
    for slot, rec in enumerate(group.records):
        value = rec.instance
        if value == 0:
            continue
        pre = _index_conjugation(slot)
        gates.extend(pre)
        if value & 1:
            gates.append(Gate.ccx(0, 1, 2))
        if value & 2:
            gates.append(Gate.ccx(0, 1, 3))
        gates.extend(pre)
    return gates


def _kickback_oracle_gates() -> list[Gate]:
    # ancilla q4 dips into |-> so CCX on the value register flips the phase
    # of value 11, then returns to |0>
    return [
        Gate.x(4),
        Gate.h(4),
        Gate.ccx(2, 3, 4),
        Gate.h(4),
        Gate.x(4),
    ]


def _index_diffusion_gates() -> list[Gate]:
    # inversion about the mean restricted to the 2-qubit index register
    return list(diffusion_circuit(2).gates)


def encode_v1(group: EventGroup) -> Circuit:
    """Scheme-1 circuit for a group of four rows.

    Searches the 4-state index register; the iteration count follows the
    analytic optimum for the group's marked count. Groups with no marked
    row run the single-target schedule, which provably leaves the index
    register uniform because the oracle never fires.
    """
    if len(group.records) != 4:
        raise ValidationError("scheme 1 takes groups of four rows")
    m = len(group.marked_slots())
    k = optimal_iterations(2, m) if m >= 1 else 1
    load = _value_load_gates(group)
    circuit = Circuit(_NUM_QUBITS, label=f"scheme1-group{group.group_id}")
    circuit.gates.extend([Gate.h(0), Gate.h(1)])
    for _ in range(k):
        circuit.gates.extend(load)
        circuit.gates.extend(_kickback_oracle_gates())
        circuit.gates.extend(reversed(load))
        circuit.gates.extend(_index_diffusion_gates())
    # load once more so the measured string shows index and value together
    circuit.gates.extend(load)
    return circuit


def encode_v2(group: EventGroup, target_slot: int | None = None) -> Circuit:
    """Scheme-2 circuit for a group of eight rows.

    A classical pre-scan finds the instance-3 position; X gates write it in
    binary on q2..q4 and a single Grover iteration marks value 11 on q0, q1.
    Groups with no marked row get no X gates and no oracle, leaving the
    value register uniform. Groups with several marked rows need
    ``target_slot`` to say which occurrence this circuit encodes.
    """
    if len(group.records) != 8:
        raise ValidationError("scheme 2 takes groups of eight rows")
    slots = group.marked_slots()
    if target_slot is None:
        if len(slots) > 1:
            raise ValidationError(
                "group has several instance-3 rows; pass target_slot to pick one"
            )
        target_slot = slots[0] if slots else None
    elif target_slot not in slots:
        raise ValidationError(f"slot {target_slot} does not hold an instance-3 row")

    circuit = Circuit(_NUM_QUBITS, label=f"scheme2-group{group.group_id}")
    if target_slot is not None:
        for bit in range(3):
            if (target_slot >> bit) & 1:
                circuit.gates.append(Gate.x(2 + bit))
    circuit.gates.extend([Gate.h(0), Gate.h(1)])
    if target_slot is not None:
        circuit.gates.append(Gate.cz(0, 1))  # phase flip of value 11
    circuit.gates.extend(_index_diffusion_gates())
    return circuit


def _split_state(state: int, scheme: int) -> tuple[int, int]:
    # returns (slot, value); scheme 1 ignores the ancilla bit
    if scheme == 1:
        return state & 3, (state >> 2) & 3
    return (state >> 2) & 7, state & 3


def marked_states(group: EventGroup) -> frozenset[int]:
    """Full 5-qubit basis states a noiseless search should land on."""
    if group.scheme == 1:
        return frozenset(slot | (TARGET_INSTANCE << 2) for slot in group.marked_slots())
    return frozenset((slot << 2) | TARGET_INSTANCE for slot in group.marked_slots())


def decode_report(
    group: EventGroup,
    counts: dict[int, int],
    shots: int,
    threshold: float = DEFAULT_THRESHOLD,
) -> SearchReport:
    """Selected rows: basis states measured at least ``threshold`` of the
    time whose value bits read 11, mapped back to table rows. Padded rows
    are never selected."""
    if shots < 1:
        raise ValidationError(f"shots must be >= 1, got {shots}")
    if not 0 < threshold <= 1:
        raise ValidationError(f"threshold must be in (0, 1], got {threshold}")
    total = 0
    for state, count in counts.items():
        if not 0 <= state < (1 << _NUM_QUBITS):
            raise ValidationError(f"count key {state} is not a 5-qubit basis state")
        if count < 0:
            raise ValidationError(f"negative count for state {state}")
        total += count
    if total != shots:
        raise ValidationError(f"counts sum to {total}, expected {shots}")

    selections = []
    for state, count in counts.items():
        fraction = count / shots
        if fraction < threshold:
            continue
        slot, value = _split_state(state, group.scheme)
        if value != TARGET_INSTANCE:
            continue
        if slot >= len(group.records) or group.padding_mask[slot]:
            continue
        rec = group.records[slot]
        selections.append(
            Selection(row=rec.row, event_id=rec.event_id, pt=rec.pt,
                      state=state, fraction=fraction)
        )
    selections.sort(key=lambda s: s.row)

    peak_state = min(
        counts, key=lambda s: (-counts[s], s), default=0
    )
    peak_fraction = counts.get(peak_state, 0) / shots
    return SearchReport(
        group_id=group.group_id,
        scheme=group.scheme,
        shots=shots,
        threshold=threshold,
        counts=dict(sorted(counts.items())),
        selections=selections,
        peak_state=peak_state,
        peak_fraction=peak_fraction,
        multi_hit=len(group.marked_slots()) > 1,
    )


def group_circuits(records, scheme: int):
    """Yield (group, occurrence, circuit, marked) for every search to run.

    ``occurrence`` is None except for scheme-2 multi-hit groups, which get
    one circuit per instance-3 row.
    """
    if scheme not in (1, 2):
        raise ValidationError(f"scheme must be 1 or 2, got {scheme}")
    for group in group_records(records, 4 if scheme == 1 else 8):
        slots = group.marked_slots()
        if scheme == 2 and len(slots) > 1:
            for occurrence, slot in enumerate(slots):
                circuit = encode_v2(group, target_slot=slot)
                marked = frozenset({(slot << 2) | TARGET_INSTANCE})
                yield group, occurrence, circuit, marked
        else:
            circuit = encode_v1(group) if scheme == 1 else encode_v2(group)
            yield group, None, circuit, marked_states(group)


def _derived_seed(seed: int, group_id: int, occurrence: int | None) -> int:
    key = (group_id, 0 if occurrence is None else occurrence + 1)
    ss = np.random.SeedSequence(seed, spawn_key=key)
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def search_database(
    records,
    scheme: int,
    shots: int,
    seed: int,
    noise=None,
    threshold: float = DEFAULT_THRESHOLD,
) -> list[SearchReport]:
    """Group, encode, simulate, and decode the whole table.

    Deterministic for a fixed seed: every group (and every multi-hit
    occurrence) draws its own seed derived from ``seed``, so reports do not
    depend on execution order. Passing a noise profile switches the
    simulation to Monte-Carlo gate-error trajectories.
    """
    from hepgrover.noise import noisy_run  # local import to avoid a cycle

    reports = []
    for group, occurrence, circuit, marked in group_circuits(records, scheme):
        run_seed = _derived_seed(seed, group.group_id, occurrence)
        if noise is None:
            state = apply_circuit(new_zero_state(circuit.num_qubits), circuit)
            counts = sample(state, shots, run_seed)
        else:
            counts = noisy_run(circuit, marked, noise, shots, run_seed).counts
        report = decode_report(group, counts, shots, threshold)
        report.occurrence = occurrence
        reports.append(report)
    reports.sort(key=lambda r: (r.group_id, -1 if r.occurrence is None else r.occurrence))
    return reports
