"""Synthesis pipeline: determinism, certification, dataset IO, bin plans."""

import json

import pytest

from geogate.difficulty import default_surrogate
from geogate.pipeline import (Instance, SynthesisError, apportion, bin_plan,
                              load_index, load_instance, render_instance_png,
                              synthesize, synthesize_batch, write_instance)
from geogate.resources import FAMILY_TYPES


@pytest.mark.parametrize("family", FAMILY_TYPES)
def test_synthesize_is_reproducible(family):
    a = synthesize(family, 2718)
    b = synthesize(family, 2718)
    assert a.instance_id == b.instance_id
    assert a.to_dict() == b.to_dict()
    assert a.panels == b.panels                      # byte-identical SVG
    c = synthesize(family, 2719)
    assert c.instance_id != a.instance_id


def test_instance_id_ignores_rendering():
    with_panels = synthesize("polyomino", 11, render=True)
    without = synthesize("polyomino", 11, render=False)
    assert with_panels.instance_id == without.instance_id
    assert without.panels == {}


def test_public_view_leaks_nothing():
    inst = synthesize("unfolded", 5)
    view = inst.public_view()
    text = json.dumps(view)
    assert inst.correct_label not in view.values()
    assert "correct_label" not in text
    assert "near_miss_kind" not in text
    assert "params" not in view
    assert "seed" not in view


def test_candidate_order_is_shuffled():
    labels = {synthesize("agent_sight", seed, render=False).correct_label
              for seed in range(12)}
    assert len(labels) > 1


def test_correct_label_indexes_correct_candidate():
    inst = synthesize("pyramid", 99)
    idx = inst.candidate_labels.index(inst.correct_label)
    assert inst.candidates[idx]["near_miss_kind"] == "correct"
    others = [c for i, c in enumerate(inst.candidates) if i != idx]
    assert all(c["near_miss_kind"] != "correct" for c in others)


def test_text_candidates_have_no_panels():
    inst = synthesize("sun_direction", 7)
    assert all(t is not None for t in inst.candidate_texts)
    assert all(not svg for svg in inst.panels["candidates"])
    assert len(inst.panels["stimulus"]) == 1


def test_unknown_family_raises():
    with pytest.raises(SynthesisError, match="unknown family"):
        synthesize("tetris", 1)


def test_png_rendering_roundtrip():
    inst = synthesize("polyomino", 21)
    png = render_instance_png(inst, "stimulus", 0)
    assert png[:8] == b"\x89PNG\r\n\x1a\n"
    with pytest.raises(ValueError):
        render_instance_png(synthesize("sun_direction", 3), "candidates", 0)


def test_apportion_largest_remainder():
    assert apportion(1050, (10, 6, 5)) == [500, 300, 250]
    assert sum(apportion(17, (3, 2, 2))) == 17
    assert apportion(0, (1, 1)) == [0, 0]


def test_bin_plan_totals():
    counts = {f: 150 for f in FAMILY_TYPES}
    plan = bin_plan(counts)
    assert all(sum(row.values()) == 150 for row in plan.values())
    totals = {b: sum(row[b] for row in plan.values())
              for b in ("easy", "medium", "hard")}
    assert totals == {"easy": 500, "medium": 300, "hard": 250}


def test_batch_writes_loadable_dataset(tmp_path):
    counts = {"polyomino": 2, "sun_direction": 2}
    index = synthesize_batch(tmp_path, 1001, counts=counts,
                             model=default_surrogate())
    assert len(index["instances"]) == 4
    reloaded = load_index(tmp_path)
    assert reloaded["instances"] == index["instances"]
    for row in index["instances"]:
        assert row["bin"] in ("easy", "medium", "hard")
        inst = load_instance(tmp_path, row["instance_id"])
        assert inst.instance_id == row["instance_id"]
        assert inst.correct_label == row["correct_label"]
        assert inst.panels["stimulus"]
        inst_dir = tmp_path / "instances" / row["instance_id"]
        assert (inst_dir / "instance.json").exists()
        assert (inst_dir / "stimulus_0.svg").exists()


def test_batch_without_model_has_no_bins(tmp_path):
    index = synthesize_batch(tmp_path, 77, counts={"unfolded": 2})
    assert all(row["bin"] is None for row in index["instances"])


def test_instance_json_roundtrip(tmp_path):
    inst = synthesize("full_views", 404)
    write_instance(tmp_path, inst)
    clone = load_instance(tmp_path, inst.instance_id)
    assert clone.to_dict() == inst.to_dict()
    assert clone.panels == inst.panels


def test_bin_targets_respected(tmp_path):
    model = default_surrogate()
    inst = synthesize("pyramid", 31, bin="hard", model=model)
    assert inst.difficulty["bin"] == "hard"
    d = model.predict_from_params("pyramid", inst.params)
    assert model.bin_of(d) == "hard"
