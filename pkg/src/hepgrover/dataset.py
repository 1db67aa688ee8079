"""Lepton-table ingestion.

Tables are delimiter-separated text with a header naming at least
``event_id``, ``instance``, and ``lep_pt``; extra columns are ignored.
Rows are numbered 0-based in file order. Momentum is stored in GeV; pass
``mev_to_gev=True`` for tables recorded in MeV.
"""
from __future__ import annotations

import csv

from hepgrover.encoding import LeptonRecord
from hepgrover.errors import DatasetError

_REQUIRED = ("event_id", "instance", "lep_pt")


def parse_dataset(path, mev_to_gev: bool = False) -> list[LeptonRecord]:
    """Parse a lepton table; malformed lines are rejected with line numbers."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except FileNotFoundError as exc:
        raise DatasetError(f"cannot read dataset: {path}") from exc
    except OSError as exc:
        raise DatasetError(f"cannot read dataset: {exc}") from exc

    if not rows:
        raise DatasetError("dataset is empty", line=1)
    header = [cell.strip().lower() for cell in rows[0]]
    missing = [name for name in _REQUIRED if name not in header]
    if missing:
        raise DatasetError(f"missing column(s): {', '.join(missing)}", line=1)
    positions = {name: header.index(name) for name in _REQUIRED}

    records: list[LeptonRecord] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < len(header):
            raise DatasetError(
                f"expected {len(header)} fields, got {len(row)}", line=lineno
            )
        event_raw = row[positions["event_id"]].strip()
        instance_raw = row[positions["instance"]].strip()
        pt_raw = row[positions["lep_pt"]].strip()
        try:
            event_id = int(event_raw)
        except ValueError:
            raise DatasetError(f"event_id {event_raw!r} is not an integer", line=lineno)
        try:
            instance = int(instance_raw)
        except ValueError:
            raise DatasetError(
                f"instance {instance_raw!r} is not an integer", line=lineno
            )
        if instance not in (0, 1, 2, 3):
            raise DatasetError(f"instance {instance} outside 0..3", line=lineno)
        try:
            pt = float(pt_raw)
        except ValueError:
            raise DatasetError(f"lep_pt {pt_raw!r} is not a number", line=lineno)
        if pt <= 0:
            raise DatasetError(f"lep_pt must be positive, got {pt}", line=lineno)
        if mev_to_gev:
            pt /= 1000.0
        records.append(
            LeptonRecord(row=len(records), event_id=event_id, instance=instance, pt=pt)
        )
    return records
