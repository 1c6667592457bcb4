"""Scoring semantics, including hand-computed oracles for the chance rates."""

import math

import pytest

from geogate.evalkit import (EvalRecord, InstanceMeta, human_simple_pass,
                             k_of_k, metadata_from_index, pass_at_1, pass_at_k,
                             read_eval_jsonl, reliability_coverage_rows,
                             report, stratified, summarize, write_eval_jsonl,
                             write_reliability_csv)


def rec(iid, preds, subject="m1", t=None):
    return EvalRecord(iid, subject, tuple(preds), t)


ANSWERS = {"a": "1", "b": "2", "c": "3", "d": "4"}


def test_pass_at_1_counts_top_prediction():
    records = [rec("a", ["1", "2", "3"]), rec("b", ["1", "2", "2"]),
               rec("c", ["3"]), rec("d", ["1"])]
    assert pass_at_1(records, ANSWERS) == 0.5


def test_pass_at_k_counts_coverage():
    records = [rec("a", ["2", "3", "1"]), rec("b", ["1", "3", "4"]),
               rec("c", ["3", "3", "3"]), rec("d", ["4", "1", "1"])]
    assert pass_at_k(records, ANSWERS, k=3) == 0.75
    assert pass_at_k(records, ANSWERS, k=1) == 0.5


def test_k_of_k_requires_unanimity():
    records = [rec("a", ["1", "1", "1"]), rec("b", ["2", "2", "3"]),
               rec("c", ["3", "3"]), rec("d", ["4", "4", "4", "2"])]
    # c has only 2 predictions, so it cannot satisfy 3-of-3
    assert k_of_k(records, ANSWERS, k=3) == 0.5


def test_missing_instances_count_incorrect():
    records = [rec("a", ["1"])]
    assert pass_at_1(records, ANSWERS) == 0.25
    assert pass_at_k(records, ANSWERS) == 0.25
    assert k_of_k(records, ANSWERS) == 0.0


def test_duplicate_instance_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        pass_at_1([rec("a", ["1"]), rec("a", ["2"])], ANSWERS)


def test_empty_universe_rejected():
    with pytest.raises(ValueError, match="empty instance universe"):
        pass_at_1([], {})


def test_chance_rates_match_candidate_counts():
    # guessing uniformly over m candidates: pass@1 = 1/m,
    # pass@3 = 1-(1-1/m)^3 with replacement, 3-of-3 = 1/m^3
    for m in (4, 6):
        p1 = 1 / m
        p3 = 1 - (1 - 1 / m) ** 3
        kk = (1 / m) ** 3
        assert math.isclose(p3, 3 * p1 - 3 * p1 ** 2 + p1 ** 3)
        assert kk < p1 < p3


def test_human_simple_pass_two_of_n_in_time():
    answers = {"a": "1", "b": "2"}
    records = [
        rec("a", ["1"], subject="h1", t=5.0),
        rec("a", ["1"], subject="h2", t=8.0),
        rec("a", ["2"], subject="h3", t=2.0),
        rec("b", ["2"], subject="h1", t=5.0),
        rec("b", ["2"], subject="h2", t=30.0),   # over the limit
        rec("b", ["3"], subject="h3", t=4.0),
    ]
    assert human_simple_pass(records, answers, time_limit_s=10.0) == 0.5
    assert human_simple_pass(records, answers, time_limit_s=60.0) == 1.0
    assert human_simple_pass(records, answers, time_limit_s=10.0,
                             min_correct=1) == 1.0


def test_stratified_groups():
    meta = {
        "a": InstanceMeta("polyomino", "MOR", "easy", "1"),
        "b": InstanceMeta("polyomino", "MOR", "hard", "2"),
        "c": InstanceMeta("pyramid", "SV", "easy", "3"),
        "d": InstanceMeta("pyramid", "SV", "hard", "4"),
    }
    records = [rec("a", ["1", "1", "1"]), rec("b", ["9", "9", "9"]),
               rec("c", ["3", "1", "1"]), rec("d", ["4", "4", "4"])]
    by_fam = stratified(records, ANSWERS, meta, "family")
    assert by_fam["polyomino"]["pass_at_1"] == 0.5
    assert by_fam["pyramid"]["pass_at_1"] == 1.0
    by_bin = stratified(records, ANSWERS, meta, "bin")
    assert by_bin["easy"]["k_of_k"] == 0.5
    with pytest.raises(ValueError, match="stratify"):
        stratified(records, ANSWERS, meta, "color")


def test_report_structure_and_reliability_rows(tmp_path):
    meta = {k: InstanceMeta("polyomino", "MOR", "easy", v)
            for k, v in ANSWERS.items()}
    records = [rec(k, [v, v, v]) for k, v in ANSWERS.items()]
    doc = report(records, ANSWERS, meta)
    assert doc["overall"]["pass_at_1"] == 1.0
    assert doc["by_ability"]["MOR"]["k_of_k"] == 1.0
    rows = reliability_coverage_rows(doc["by_family"])
    assert rows == [{"group": "polyomino", "n": 4, "pass_at_k": 1.0,
                     "k_of_k": 1.0}]
    csv_path = tmp_path / "rel.csv"
    write_reliability_csv(csv_path, doc["by_family"])
    assert "polyomino,4,1.0,1.0" in csv_path.read_text()


def test_jsonl_roundtrip(tmp_path):
    records = [rec("a", ["1", "2"], t=3.5), rec("b", ["2"])]
    path = tmp_path / "eval.jsonl"
    write_eval_jsonl(path, records)
    assert read_eval_jsonl(path) == records
    path.write_text('{"instance_id": "x"}\n')
    with pytest.raises(ValueError, match="line 1"):
        read_eval_jsonl(path)


def test_metadata_from_index():
    index = {"instances": [
        {"instance_id": "a", "family": "pyramid", "ability": "SV",
         "bin": "easy", "correct_label": "2"}]}
    meta = metadata_from_index(index)
    assert meta["a"] == InstanceMeta("pyramid", "SV", "easy", "2")


def test_record_validation():
    with pytest.raises(ValueError, match="at least one prediction"):
        EvalRecord("a", "s", ())
    with pytest.raises(ValueError, match="positive"):
        EvalRecord("a", "s", ("1",), response_time_s=0.0)


def test_summarize_keys():
    s = summarize([rec("a", ["1", "1", "1"])], {"a": "1"})
    assert s == {"n_instances": 1, "pass_at_1": 1.0, "pass_at_3": 1.0,
                 "k_of_k": 1.0}
