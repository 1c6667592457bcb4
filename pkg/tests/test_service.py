"""Service behavior: solve flow, session hygiene, leakage, operator surface."""

import json
import threading
import time

import pytest
from fastapi.testclient import TestClient

from geogate.service import ServiceConfig, create_app


@pytest.fixture()
def client():
    app = create_app(ServiceConfig(ttl_seconds=60.0, admin_token="s3cret"))
    with TestClient(app) as c:
        yield c


def issue(client, **kwargs):
    resp = client.post("/v1/challenge", json=kwargs)
    assert resp.status_code == 200, resp.text
    return resp.json()


def peek_correct(client, token):
    state = client.app.state.geogate
    return state.get_session(token).instance.correct_label


def test_health(client):
    doc = client.get("/v1/health").json()
    assert doc["status"] == "ok"
    assert "polyomino" in doc["families"]


def test_challenge_shape_and_no_leakage(client):
    doc = issue(client, family="polyomino")
    assert doc["family"] == "polyomino"
    assert len(doc["candidates"]) == 6
    assert doc["stimulus"]
    text = json.dumps(doc)
    assert "correct" not in text
    assert "near_miss" not in text
    assert "seed" not in text
    assert "params" not in text
    assert "PIECE_SIZE" not in text


def test_panels_served_by_token(client):
    doc = issue(client, family="unfolded")
    svg = client.get(doc["stimulus"][0]["svg_url"])
    assert svg.status_code == 200
    assert svg.headers["content-type"].startswith("image/svg")
    assert svg.text.startswith("<svg")
    png = client.get(doc["candidates"][0]["panel_png_url"])
    assert png.status_code == 200
    assert png.content[:4] == b"\x89PNG"
    assert client.get(f"/v1/panels/{doc['token']}/stimulus/9.svg").status_code == 404
    assert client.get("/v1/panels/feedbead/stimulus/0.svg").status_code == 404


def test_text_candidates_have_no_panel_urls(client):
    doc = issue(client, family="sun_direction")
    assert all(c["text"] for c in doc["candidates"])
    assert all(c["panel_svg_url"] is None for c in doc["candidates"])


def test_answer_flow_correct_and_incorrect(client):
    doc = issue(client, family="pyramid")
    correct = peek_correct(client, doc["token"])
    resp = client.post(f"/v1/challenge/{doc['token']}/answer",
                       json={"label": correct, "respondent_id": "r1"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["correct"] is True
    assert body["correct_label"] == correct
    assert body["response_time_s"] > 0

    doc2 = issue(client, family="pyramid")
    wrong = next(c["label"] for c in doc2["candidates"]
                 if c["label"] != peek_correct(client, doc2["token"]))
    body2 = client.post(f"/v1/challenge/{doc2['token']}/answer",
                        json={"label": wrong}).json()
    assert body2["correct"] is False


def test_sessions_are_single_use(client):
    doc = issue(client)
    token = doc["token"]
    label = doc["candidates"][0]["label"]
    assert client.post(f"/v1/challenge/{token}/answer",
                       json={"label": label}).status_code == 200
    assert client.post(f"/v1/challenge/{token}/answer",
                       json={"label": label}).status_code == 409


def test_unknown_token_404(client):
    assert client.post("/v1/challenge/deadbeef/answer",
                       json={"label": "1"}).status_code == 404


def test_expired_session_410():
    app = create_app(ServiceConfig(ttl_seconds=0.05, admin_token=None))
    with TestClient(app) as client:
        doc = issue(client)
        time.sleep(0.1)
        resp = client.post(f"/v1/challenge/{doc['token']}/answer",
                           json={"label": doc["candidates"][0]["label"]})
        assert resp.status_code == 410
        assert client.get(doc["stimulus"][0]["svg_url"]).status_code == 410


def test_malformed_label_consumes_session(client):
    doc = issue(client)
    token = doc["token"]
    assert client.post(f"/v1/challenge/{token}/answer",
                       json={"label": "zzz"}).status_code == 422
    assert client.post(f"/v1/challenge/{token}/answer",
                       json={"label": doc["candidates"][0]["label"]}
                       ).status_code == 409


def test_unknown_family_422(client):
    assert client.post("/v1/challenge",
                       json={"family": "sudoku"}).status_code == 422


def test_bin_conditioned_challenge_uses_surrogate(client):
    doc = issue(client, family="pyramid", bin="hard")
    state = client.app.state.geogate
    inst = state.get_session(doc["token"]).instance
    assert inst.difficulty["bin"] == "hard"


def test_concurrent_answers_single_winner(client):
    doc = issue(client)
    token = doc["token"]
    label = doc["candidates"][0]["label"]
    codes = []
    barrier = threading.Barrier(20)

    def hit():
        barrier.wait()
        codes.append(client.post(f"/v1/challenge/{token}/answer",
                                 json={"label": label}).status_code)

    threads = [threading.Thread(target=hit) for _ in range(20)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(codes).count(200) == 1
    assert codes.count(409) == 19


def test_admin_requires_token(client):
    assert client.get("/v1/admin/stats").status_code == 403
    assert client.get("/v1/admin/stats",
                      headers={"X-Admin-Token": "wrong"}).status_code == 403
    assert client.get("/v1/admin/stats",
                      headers={"X-Admin-Token": "s3cret"}).status_code == 200


def test_admin_unconfigured_503():
    app = create_app(ServiceConfig(admin_token=None))
    with TestClient(app) as client:
        assert client.get("/v1/admin/stats").status_code == 503


def test_admin_stats_and_pilot_log(client):
    admin = {"X-Admin-Token": "s3cret"}
    doc = issue(client, family="revolution")
    correct = peek_correct(client, doc["token"])
    client.post(f"/v1/challenge/{doc['token']}/answer",
                json={"label": correct, "respondent_id": "h7"})
    stats = client.get("/v1/admin/stats", headers=admin).json()
    assert stats["served"] >= 1
    assert stats["answered"] >= 1
    csv_text = client.get("/v1/admin/pilot.csv", headers=admin).text
    lines = csv_text.strip().splitlines()
    assert lines[0] == "instance_id,respondent_id,response_time_s,correct"
    assert any("h7" in line and line.endswith("1") for line in lines[1:])


def test_admin_manifests_exposes_knob_domains(client):
    admin = {"X-Admin-Token": "s3cret"}
    doc = client.get("/v1/admin/manifests", headers=admin).json()
    assert doc["pyramid"]["params"]["GRID_SIZE"]["min"] == 3
    assert set(doc) == {"agent_sight", "sun_direction", "polyomino",
                        "unfolded", "pyramid", "revolution", "full_views"}


def test_admin_preview_renders_with_answer(client):
    admin = {"X-Admin-Token": "s3cret"}
    resp = client.post("/v1/admin/preview", headers=admin,
                       json={"family": "polyomino", "seed": 4})
    assert resp.status_code == 200
    doc = resp.json()
    assert doc["correct_label"] in doc["candidate_labels"]
    assert doc["stimulus_svg"][0].startswith("<svg")
    assert "PIECE_SIZE" in doc["params"]
    bad = client.post("/v1/admin/preview", headers=admin,
                      json={"family": "nope"})
    assert bad.status_code == 422


def test_admin_fit_then_binned_generation(client):
    admin = {"X-Admin-Token": "s3cret"}
    # not enough pilot data yet
    assert client.post("/v1/admin/calibration/fit", headers=admin,
                       json={"min_per_family": 2}).status_code == 422

    state = client.app.state.geogate
    for i in range(12):
        doc = issue(client, family="polyomino")
        inst = state.get_session(doc["token"]).instance
        # answer correctly so timed-correct trials exist
        client.post(f"/v1/challenge/{doc['token']}/answer",
                    json={"label": inst.correct_label,
                          "respondent_id": f"h{i}"})
    resp = client.post("/v1/admin/calibration/fit", headers=admin,
                       json={"min_per_family": 5})
    assert resp.status_code == 200, resp.text
    body = resp.json()
    assert body["families"] == ["polyomino"]
    assert body["points_used"] >= 5
    assert state.model is not None

    # binned generation for the fitted family now rides the fitted model
    doc = issue(client, family="polyomino", bin="easy")
    inst = state.get_session(doc["token"]).instance
    assert inst.difficulty["bin"] == "easy"


def test_dataset_backed_service(tmp_path):
    from geogate.pipeline import synthesize_batch

    synthesize_batch(tmp_path, 3, counts={"unfolded": 3})
    app = create_app(ServiceConfig(dataset_dir=tmp_path))
    with TestClient(app) as client:
        doc = issue(client)
        assert doc["family"] == "unfolded"
        correct = peek_correct(client, doc["token"])
        body = client.post(f"/v1/challenge/{doc['token']}/answer",
                           json={"label": correct}).json()
        assert body["correct"] is True
