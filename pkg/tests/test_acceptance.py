"""Acceptance gate: every headline guarantee, one pass/fail line each.

Run with `pytest -v tests/test_acceptance.py`; each test prints a single
`[PASS] ...` line with the measured quantity when its criterion holds.
"""

import hashlib
import itertools
import json
import math
import time

import numpy as np
import pytest

from geogate.difficulty import default_surrogate, fit_difficulty_model, quantile_fit
from geogate.difficulty.model import CalibrationPoint, signed_features
from geogate.difficulty.isotonic import pava
from geogate.evalkit import (EvalRecord, k_of_k, metadata_from_index,
                             pass_at_1, pass_at_k, stratified)
from geogate.families import FAMILIES, validate_scene
from geogate.geometry import CubeNet, fold_net
from geogate.geometry.cubenet import foldable_hexominoes, free_hexominoes
from geogate.manifest import sample_params
from geogate.pipeline import (load_index, render_instance_panels, synthesize,
                              synthesize_batch)
from geogate.resources import FAMILY_TYPES, load_all_shipped, load_shipped_manifest
from geogate.rng import Stream

BENCH_SEED = 20_260_824
CONTINUOUS_FAMILIES = ("sun_direction", "pyramid", "full_views")


def ok(line: str) -> None:
    print(f"[PASS] {line}")


@pytest.fixture(scope="session")
def benchmark(tmp_path_factory):
    """The shipped benchmark: 7 families x 150, stratified 500/300/250."""
    out = tmp_path_factory.mktemp("benchmark")
    start = time.monotonic()
    index = synthesize_batch(out, BENCH_SEED,
                             counts={f: 150 for f in FAMILY_TYPES},
                             model=default_surrogate())
    elapsed = time.monotonic() - start
    return out, index, elapsed


@pytest.fixture(scope="session")
def synthetic_model():
    """Calibrated model over the continuous-knob families, 310 points each."""
    manifests = load_all_shipped()
    rng = np.random.default_rng(0)
    points = []
    for fam in CONTINUOUS_FAMILIES:
        man = manifests[fam]
        for i in range(310):
            values = sample_params(man, 20_000 + i).values
            hard = signed_features(man, values).mean()
            t = math.log(5 + 30 * hard) + rng.normal(0, 0.05)
            s = float(np.clip(0.95 - 0.5 * hard + rng.normal(0, 0.05), 0, 1))
            points.append(CalibrationPoint(fam, values, t, s))
    model = fit_difficulty_model(
        points, {f: manifests[f] for f in CONTINUOUS_FAMILIES})
    return model, points


def test_primary_01_benchmark_composition(benchmark):
    _, index, elapsed = benchmark
    rows = index["instances"]
    assert len(rows) == 1050
    per_family = {f: sum(r["family"] == f for r in rows) for f in FAMILY_TYPES}
    assert all(n == 150 for n in per_family.values())
    bins = {b: sum(r["bin"] == b for r in rows)
            for b in ("easy", "medium", "hard")}
    assert bins == {"easy": 500, "medium": 300, "hard": 250}
    assert elapsed < 300, f"generation took {elapsed:.0f}s"
    ok(f"benchmark composition: 1050 instances, bins {bins}, {elapsed:.0f}s")


def test_primary_02_uniqueness_certification():
    per_family = 1000
    violations = 0
    for family_name in FAMILY_TYPES:
        manifest = load_shipped_manifest(family_name)
        family = FAMILIES[family_name]
        accepted = 0
        seed = 0
        while accepted < per_family:
            seed += 1
            params = sample_params(manifest, seed)
            stream = Stream.from_seed(seed).split("scene").split(family_name)
            scene = family.generate_scene(params, stream.split("generate"))
            cset = family.make_candidates(scene, params,
                                          stream.split("candidates"))
            if not validate_scene(family, scene, cset, manifest,
                                  params.values["COLOR_MAP"]).accepted:
                continue
            accepted += 1
            # the sweep below is the certification, done here independently
            truths = [family.candidate_true(scene, c.content)
                      for c in cset.candidates]
            if sum(truths) != 1 or not truths[cset.correct_index]:
                violations += 1
    assert violations == 0
    ok(f"uniqueness certification: {per_family}/family x 7, "
       f"{violations} violations")


def test_primary_03_label_inertness(benchmark):
    out, index, _ = benchmark
    swap = {"Pastel1": "Pastel2", "Pastel2": "Pastel1"}
    changed_panels = 0
    for row in index["instances"][:200]:
        doc = json.loads((out / "instances" / row["instance_id"]
                          / "instance.json").read_text())
        from geogate.pipeline import Instance

        inst = Instance.from_dict(doc)
        before = render_instance_panels(inst)
        core_before = (inst.prompt, inst.candidates, inst.correct_label)
        inst.style["palette"] = swap[inst.style["palette"]]
        after = render_instance_panels(inst)
        core_after = (inst.prompt, inst.candidates, inst.correct_label)
        assert core_before == core_after
        if before != after:
            changed_panels += 1
    assert changed_panels == 200
    ok("label inertness: 200 palette swaps changed panel bytes only")


def test_primary_04_determinism(tmp_path):
    def dataset_hash(root):
        digest = hashlib.sha256()
        for path in sorted(root.rglob("*")):
            if path.is_file():
                digest.update(str(path.relative_to(root)).encode())
                digest.update(path.read_bytes())
        return digest.hexdigest()

    counts = {f: 12 for f in FAMILY_TYPES}
    synthesize_batch(tmp_path / "a", 424242, counts=counts,
                     model=default_surrogate())
    synthesize_batch(tmp_path / "b", 424242, counts=counts,
                     model=default_surrogate())
    ha, hb = dataset_hash(tmp_path / "a"), dataset_hash(tmp_path / "b")
    assert ha == hb
    ok(f"determinism: regenerated dataset hash {ha[:16]} identical")


def test_primary_05_chance_level(benchmark):
    _, index, _ = benchmark
    start = time.monotonic()
    meta = metadata_from_index(index)
    answers = {iid: m.correct_label for iid, m in meta.items()}
    labels_by_family = {f: load_shipped_manifest(f).variant_labels
                        for f in FAMILY_TYPES}
    rng = np.random.default_rng(7)
    reps = 20
    p1s, kks, ability_runs = [], [], []
    for _ in range(reps):
        records = []
        for iid, m in meta.items():
            labels = labels_by_family[m.family]
            preds = tuple(labels[j] for j in
                          rng.integers(0, len(labels), size=3))
            records.append(EvalRecord(iid, "random", preds))
        p1s.append(pass_at_1(records, answers))
        kks.append(k_of_k(records, answers))
        ability_runs.append({g: s["pass_at_1"] for g, s in
                             stratified(records, answers, meta,
                                        "ability").items()})
    p1 = float(np.mean(p1s))
    kk = float(np.mean(kks))
    ability = {g: float(np.mean([run[g] for run in ability_runs]))
               for g in ("SP", "SO", "MOR", "SV")}
    expected = {"SP": 1 / 6, "SO": 1 / 4, "MOR": 1 / 6, "SV": 1 / 4}
    elapsed = time.monotonic() - start
    assert abs(p1 - 0.214) <= 0.015, p1
    for g, e in expected.items():
        assert abs(ability[g] - e) <= 0.02, (g, ability[g])
    assert abs(kk - 0.011) <= 0.005, kk
    assert elapsed < 60
    ok(f"chance level: pass@1 {p1:.3f} (0.214), k-of-k {kk:.4f} (0.011), "
       f"abilities within 2pp, {elapsed:.0f}s")


def exact_isotonic(y, w):
    """Exhaustive monotone-cone projection over contiguous block partitions."""
    n = len(y)
    best, best_cost = None, float("inf")
    for cuts in itertools.product([0, 1], repeat=n - 1):
        bounds = [0] + [i + 1 for i, c in enumerate(cuts) if c] + [n]
        means = []
        fitted = np.empty(n)
        for a, b in zip(bounds, bounds[1:]):
            m = np.average(y[a:b], weights=w[a:b])
            means.append(m)
            fitted[a:b] = m
        if any(m2 < m1 - 1e-15 for m1, m2 in zip(means, means[1:])):
            continue
        cost = float(np.sum(w * (y - fitted) ** 2))
        if cost < best_cost:
            best_cost, best = cost, fitted
    return best


def test_primary_06_pava_oracle():
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(500):
        n = int(rng.integers(1, 9))
        y = rng.normal(size=n)
        w = rng.uniform(0.5, 2.0, size=n)
        diff = np.max(np.abs(pava(y, w) - exact_isotonic(y, w)))
        worst = max(worst, float(diff))
    assert worst <= 1e-9
    ok(f"PAVA oracle: 500 exhaustive projections, max deviation {worst:.2e}")


def test_primary_07_quantile_fit():
    rng = np.random.default_rng(2)
    y = rng.normal(size=501)                      # odd n: unique median
    coef = quantile_fit(np.zeros((501, 1)), y, 0.5)
    med_err = abs(coef[0] - np.median(y))
    assert med_err <= 1e-9

    X = rng.uniform(0, 1, size=(10_000, 1))
    yy = 0.25 + 0.5 * X[:, 0] + rng.normal(0, 0.1, 10_000)
    slope = quantile_fit(X, yy, 0.5)[1]
    assert abs(slope - 0.5) <= 0.02
    ok(f"quantile fit: median exact ({med_err:.1e}), "
       f"slope {slope:.4f} within +-0.02 at n=10000")


def test_primary_08_binning_balance(synthetic_model):
    model, points = synthetic_model
    ds = [model.predict_from_params(p.family, p.values) for p in points]
    n = len(ds)
    assert n >= 900
    counts = {"easy": 0, "medium": 0, "hard": 0}
    for d in ds:
        counts[model.bin_of(d)] += 1
    for b, c in counts.items():
        assert abs(c - n / 3) <= 1, (b, c)
    ok(f"binning balance: n={n}, bins {counts}, each within n/3 +- 1")


def test_primary_09_inversion_success(synthetic_model):
    model, _ = synthetic_model
    stream = Stream.from_seed(123)
    hits = 0
    for i in range(100):
        d_star = 0.1 + 0.8 * stream.uniform(0.0, 1.0)
        family = CONTINUOUS_FAMILIES[i % len(CONTINUOUS_FAMILIES)]
        values = model.invert(family, d_star, stream=stream)
        if abs(model.predict_from_params(family, values) - d_star) <= 0.05:
            hits += 1
    assert hits >= 95
    ok(f"inversion: {hits}/100 targets within eps=0.05")


def test_primary_10_cubenet_oracle(benchmark):
    out, index, _ = benchmark
    assert len(free_hexominoes()) == 35
    assert len(foldable_hexominoes()) == 11

    checked = 0
    for row in index["instances"]:
        if row["family"] != "unfolded":
            continue
        doc = json.loads((out / "instances" / row["instance_id"]
                          / "instance.json").read_text())
        correct_idx = doc["candidate_labels"].index(doc["correct_label"])
        nets = [CubeNet({tuple(c): str(l) for c, l in
                         zip(cand["content"]["cells"],
                             cand["content"]["labels"])})
                for cand in doc["candidates"]]
        target = fold_net(nets[correct_idx])
        assert target is not None
        for i, net in enumerate(nets):
            cube = fold_net(net)
            matches = cube is not None and cube.equivalent(target)
            assert matches == (i == correct_idx)
        checked += 1
    assert checked == 150
    ok(f"cube-net oracle: 11/35 hexominoes fold; {checked} instances verified")


def test_primary_11_metric_ordering():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        n = int(rng.integers(1, 30))
        answers = {f"i{j}": str(rng.integers(1, 5)) for j in range(n)}
        records = []
        for j in range(n):
            if rng.random() < 0.1:
                continue                          # missing response
            k = int(rng.integers(1, 5))
            preds = tuple(str(v) for v in rng.integers(1, 5, size=k))
            records.append(EvalRecord(f"i{j}", "m", preds))
        kk = k_of_k(records, answers)
        p1 = pass_at_1(records, answers)
        pk = pass_at_k(records, answers)
        assert kk <= p1 + 1e-12
        assert p1 <= pk + 1e-12
    ok("metric ordering: k-of-k <= pass@1 <= pass@k on 1000 fuzzed sets")


def _scrub(obj, banned):
    text = json.dumps(obj)
    return [b for b in banned if b in text]


def test_primary_12_service_integrity():
    import threading

    from fastapi.testclient import TestClient

    from geogate.service import ServiceConfig, create_app

    banned = ["correct_label", "near_miss_kind", "params", "seed",
              "difficulty", "instance_id"]
    app = create_app(ServiceConfig(ttl_seconds=60.0, admin_token="t0ken"))
    with TestClient(app) as client:
        leaks = []
        leaks += _scrub(client.get("/v1/health").json(), banned)
        doc = client.post("/v1/challenge", json={"family": "unfolded"}).json()
        leaks += _scrub(doc, banned)
        svg = client.get(doc["stimulus"][0]["svg_url"]).text
        leaks += [b for b in banned if b in svg]

        # 100-way concurrent duplicate verify: exactly one verdict
        codes = []
        barrier = threading.Barrier(100)
        label = doc["candidates"][0]["label"]

        def hit():
            barrier.wait()
            codes.append(client.post(
                f"/v1/challenge/{doc['token']}/answer",
                json={"label": label}).status_code)

        threads = [threading.Thread(target=hit) for _ in range(100)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert codes.count(200) == 1
        assert codes.count(409) == 99
        assert leaks == []

    # expired sessions never produce pilot rows
    app2 = create_app(ServiceConfig(ttl_seconds=0.02, admin_token="t0ken"))
    with TestClient(app2) as client:
        doc = client.post("/v1/challenge", json={}).json()
        time.sleep(0.06)
        resp = client.post(f"/v1/challenge/{doc['token']}/answer",
                           json={"label": doc["candidates"][0]["label"]})
        assert resp.status_code == 410
        assert client.app.state.geogate.pilot_records() == []
    ok("service integrity: no leakage, 1/100 concurrent verdicts, "
       "expired sessions leave no pilot rows")
