"""Pilot study log: one row per human response, aggregated per instance."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

CSV_FIELDS = ("instance_id", "respondent_id", "response_time_s", "correct")


@dataclass(frozen=True)
class PilotRecord:
    instance_id: str
    respondent_id: str
    response_time_s: float
    correct: bool

    def __post_init__(self):
        if self.response_time_s <= 0 or not math.isfinite(self.response_time_s):
            raise ValueError("response time must be positive and finite")


def write_pilot_csv(path: str | Path, records: Iterable[PilotRecord]) -> None:
    with open(path, "w", newline="") as fh:
        _write(fh, records)


def pilot_csv_text(records: Iterable[PilotRecord]) -> str:
    buf = io.StringIO()
    _write(buf, records)
    return buf.getvalue()


def _write(fh, records: Iterable[PilotRecord]) -> None:
    writer = csv.writer(fh)
    writer.writerow(CSV_FIELDS)
    for r in records:
        writer.writerow([r.instance_id, r.respondent_id,
                         f"{r.response_time_s:.3f}", int(r.correct)])


def read_pilot_csv(path: str | Path) -> list[PilotRecord]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != list(CSV_FIELDS):
            raise ValueError(f"pilot CSV must have columns {CSV_FIELDS}")
        return [PilotRecord(row["instance_id"], row["respondent_id"],
                            float(row["response_time_s"]),
                            row["correct"] in ("1", "true", "True"))
                for row in reader]


def aggregate_pilot(records: Iterable[PilotRecord]) -> dict[str, dict]:
    """Per-instance mean log response time (correct trials) and success rate."""
    by_id: dict[str, list[PilotRecord]] = {}
    for r in records:
        by_id.setdefault(r.instance_id, []).append(r)
    out = {}
    for iid, rows in by_id.items():
        correct_times = [r.response_time_s for r in rows if r.correct]
        out[iid] = {
            "n": len(rows),
            "success_rate": sum(r.correct for r in rows) / len(rows),
            "mean_log_time": (sum(math.log(t) for t in correct_times)
                              / len(correct_times)) if correct_times else None,
        }
    return out
