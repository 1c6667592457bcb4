"""Benchmark scoring: pass@1, pass@k, k-of-k reliability, stratified reports.

A record holds one subject's ordered predictions for one instance. Metrics are
computed over a fixed instance universe: instances without a record, or with
fewer predictions than the metric needs, count as incorrect.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional

DEFAULT_K = 3
STRATA = ("family", "ability", "bin")


@dataclass(frozen=True)
class EvalRecord:
    instance_id: str
    subject_id: str
    predictions: tuple[str, ...]          # ordered, best first
    response_time_s: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "predictions", tuple(self.predictions))
        if not self.predictions:
            raise ValueError("record must carry at least one prediction")
        if self.response_time_s is not None and self.response_time_s <= 0:
            raise ValueError("response time must be positive")


@dataclass(frozen=True)
class InstanceMeta:
    family: str
    ability: str
    bin: Optional[str]
    correct_label: str


def metadata_from_index(index: dict,
                        abilities: Mapping[str, str] | None = None
                        ) -> dict[str, InstanceMeta]:
    out = {}
    for row in index["instances"]:
        ability = row.get("ability") or (abilities or {}).get(row["family"], "")
        out[row["instance_id"]] = InstanceMeta(
            family=row["family"], ability=ability, bin=row.get("bin"),
            correct_label=row["correct_label"])
    return out


def write_eval_jsonl(path: str | Path, records: Iterable[EvalRecord]) -> None:
    with open(path, "w") as fh:
        for r in records:
            fh.write(json.dumps({
                "instance_id": r.instance_id,
                "subject_id": r.subject_id,
                "predictions": list(r.predictions),
                "response_time_s": r.response_time_s,
            }, sort_keys=True) + "\n")


def read_eval_jsonl(path: str | Path) -> list[EvalRecord]:
    records = []
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                doc = json.loads(line)
                records.append(EvalRecord(
                    doc["instance_id"], doc["subject_id"],
                    tuple(doc["predictions"]), doc.get("response_time_s")))
            except (KeyError, ValueError, TypeError) as exc:
                raise ValueError(f"bad eval record on line {line_no}: {exc}")
    return records


def _by_instance(records: Iterable[EvalRecord]) -> dict[str, EvalRecord]:
    """One record per instance; a duplicate instance is a protocol error."""
    out: dict[str, EvalRecord] = {}
    for r in records:
        if r.instance_id in out:
            raise ValueError(f"duplicate record for instance {r.instance_id}")
        out[r.instance_id] = r
    return out


def pass_at_1(records: Iterable[EvalRecord],
              answers: Mapping[str, str]) -> float:
    return _rate(records, answers,
                 lambda preds, y: preds[0] == y)


def pass_at_k(records: Iterable[EvalRecord], answers: Mapping[str, str],
              k: int = DEFAULT_K) -> float:
    return _rate(records, answers,
                 lambda preds, y: y in preds[:k])


def k_of_k(records: Iterable[EvalRecord], answers: Mapping[str, str],
           k: int = DEFAULT_K) -> float:
    return _rate(records, answers,
                 lambda preds, y: len(preds) >= k
                 and all(p == y for p in preds[:k]))


def _rate(records, answers, hit) -> float:
    if not answers:
        raise ValueError("empty instance universe")
    got = _by_instance(records)
    wins = 0
    for iid, y in answers.items():
        r = got.get(iid)
        if r is not None and hit(r.predictions, y):
            wins += 1
    return wins / len(answers)


def human_simple_pass(records: Iterable[EvalRecord],
                      answers: Mapping[str, str],
                      time_limit_s: float,
                      min_correct: int = 2) -> float:
    """Fraction of instances at least `min_correct` respondents solved in time."""
    if not answers:
        raise ValueError("empty instance universe")
    correct_counts: dict[str, int] = {iid: 0 for iid in answers}
    for r in records:
        if r.instance_id not in answers:
            continue
        in_time = r.response_time_s is not None and \
            r.response_time_s <= time_limit_s
        if in_time and r.predictions[0] == answers[r.instance_id]:
            correct_counts[r.instance_id] += 1
    return sum(c >= min_correct for c in correct_counts.values()) / len(answers)


def summarize(records: Iterable[EvalRecord], answers: Mapping[str, str],
              k: int = DEFAULT_K) -> dict:
    records = list(records)
    return {
        "n_instances": len(answers),
        "pass_at_1": pass_at_1(records, answers),
        f"pass_at_{k}": pass_at_k(records, answers, k),
        "k_of_k": k_of_k(records, answers, k),
    }


def stratified(records: Iterable[EvalRecord], answers: Mapping[str, str],
               meta: Mapping[str, InstanceMeta], by: str,
               k: int = DEFAULT_K) -> dict[str, dict]:
    if by not in STRATA:
        raise ValueError(f"stratify by one of {STRATA}")
    records = list(records)
    groups: dict[str, dict[str, str]] = {}
    for iid, y in answers.items():
        m = meta.get(iid)
        key = getattr(m, by) if m else None
        groups.setdefault(str(key), {})[iid] = y
    return {g: summarize([r for r in records if r.instance_id in ans], ans, k)
            for g, ans in sorted(groups.items())}


def report(records: Iterable[EvalRecord], answers: Mapping[str, str],
           meta: Mapping[str, InstanceMeta], k: int = DEFAULT_K) -> dict:
    records = list(records)
    return {
        "overall": summarize(records, answers, k),
        "by_family": stratified(records, answers, meta, "family", k),
        "by_ability": stratified(records, answers, meta, "ability", k),
        "by_bin": stratified(records, answers, meta, "bin", k),
    }


def write_report(path: str | Path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True))


def reliability_coverage_rows(groups: Mapping[str, dict],
                              k: int = DEFAULT_K) -> list[dict]:
    """Rows for a coverage-vs-reliability plot: pass@k on x, k-of-k on y."""
    return [{"group": g, "n": s["n_instances"],
             "pass_at_k": s[f"pass_at_{k}"], "k_of_k": s["k_of_k"]}
            for g, s in sorted(groups.items())]


def write_reliability_csv(path: str | Path, groups: Mapping[str, dict],
                          k: int = DEFAULT_K) -> None:
    rows = reliability_coverage_rows(groups, k)
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["group", "n", "pass_at_k",
                                                "k_of_k"])
        writer.writeheader()
        writer.writerows(rows)
