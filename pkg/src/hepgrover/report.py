"""Report serialization and histogram rendering.

Structured reports are line-delimited JSON, one object per group search,
with sorted keys so identical runs produce byte-identical files. Output is
written atomically (temp file plus rename).
"""
from __future__ import annotations

import json
import os
import tempfile

from hepgrover.encoding import SearchReport
from hepgrover.statevector import basis_label

_NUM_QUBITS = 5


def write_text_atomic(path, text: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def report_record(report: SearchReport) -> dict:
    """JSON-ready dict for one group search."""
    return {
        "group_id": report.group_id,
        "scheme": report.scheme,
        "shots": report.shots,
        "threshold": report.threshold,
        "multi_hit": report.multi_hit,
        "occurrence": report.occurrence,
        "peak_state": basis_label(report.peak_state, _NUM_QUBITS),
        "peak_fraction": report.peak_fraction,
        "counts": {
            basis_label(state, _NUM_QUBITS): count
            for state, count in sorted(report.counts.items())
        },
        "selections": [
            {
                "row": sel.row,
                "event_id": sel.event_id,
                "pt": sel.pt,
                "state": basis_label(sel.state, _NUM_QUBITS),
                "fraction": sel.fraction,
            }
            for sel in report.selections
        ],
    }


def reports_to_jsonl(reports) -> str:
    lines = [json.dumps(report_record(r), sort_keys=True) for r in reports]
    return "\n".join(lines) + ("\n" if lines else "")


def write_reports(reports, path) -> None:
    write_text_atomic(path, reports_to_jsonl(reports))


def render_histogram(counts: dict[int, int], num_qubits: int, shots: int,
                     width: int = 40) -> str:
    """Text bar chart of measurement counts, one basis state per line."""
    if not counts:
        return "(no counts)"
    peak = max(counts.values())
    lines = []
    for state in sorted(counts):
        count = counts[state]
        bar = "#" * max(1, round(width * count / peak)) if count else ""
        frac = count / shots
        lines.append(
            f"|{basis_label(state, num_qubits)}> {bar:<{width}} {count:>6} ({frac:7.2%})"
        )
    return "\n".join(lines)


def save_histogram_svg(counts: dict[int, int], num_qubits: int, shots: int,
                       path, title: str = "") -> None:
    """Static bar-chart rendering of a histogram (format from extension)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    states = sorted(counts)
    labels = [basis_label(s, num_qubits) for s in states]
    fractions = [counts[s] / shots for s in states]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.45 * len(states) + 1.5), 3.2))
    ax.bar(range(len(states)), fractions, color="#20639b")
    ax.set_xticks(range(len(states)))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("fraction of shots")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(os.fspath(path))
    plt.close(fig)
