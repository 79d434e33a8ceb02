"""HTTP endpoints over a temporary store."""

import json

import pytest
from fastapi.testclient import TestClient

from ufg.model import layout_from_json, validate_level_json
from ufg.service import create_app
from ufg.session import SessionStore


@pytest.fixture()
def client(tmp_path):
    return TestClient(create_app(SessionStore(tmp_path)))


def _create(client, **overrides):
    body = {"params": {"seed": 1}, "policy": {}}
    body["params"].update(overrides)
    resp = client.post("/sessions", json=body)
    assert resp.status_code == 201
    return resp.json()


def test_create_session(client):
    doc = _create(client)
    assert doc["state"]["status"] == "active"
    assert doc["state"]["generation"]["index"] == 0
    assert len(doc["state"]["generation"]["candidates"]) == 9
    assert doc["id"] == doc["state"]["id"]


def test_create_session_defaults(client):
    resp = client.post("/sessions", json={})
    assert resp.status_code == 201
    assert resp.json()["state"]["params"]["max_iterations"] == 10


def test_get_session_state(client):
    sid = _create(client)["id"]
    resp = client.get(f"/sessions/{sid}")
    assert resp.status_code == 200
    assert resp.json()["id"] == sid


def test_unknown_session_404(client):
    assert client.get("/sessions/missing").status_code == 404
    assert client.get("/sessions/missing/history").status_code == 404
    assert client.get("/sessions/missing/export/0").status_code == 404


def test_selection_advances_generation(client):
    sid = _create(client)["id"]
    resp = client.post(f"/sessions/{sid}/selection", json={"ids": [0, 4]})
    assert resp.status_code == 200
    state = resp.json()
    assert state["generation"]["index"] == 1
    assert state["generation"]["parent_ids"] == [0, 4]
    assert state["corpus_size"] == 9
    assert state["tree"] is not None


def test_invalid_params_rejected(client):
    resp = client.post("/sessions", json={"params": {"mutation_rate": 2.0}})
    assert resp.status_code == 422
    resp = client.post("/sessions", json={"policy": {"warmup_generations": 0}})
    assert resp.status_code == 422


def test_bad_selections_rejected(client):
    sid = _create(client)["id"]
    for ids in ([1], [3, 3], [0, 99], [0, 1, 2]):
        resp = client.post(f"/sessions/{sid}/selection", json={"ids": ids})
        assert resp.status_code == 400, ids
    assert client.get(f"/sessions/{sid}").json()["generation"]["index"] == 0


def test_finished_session_conflicts(client):
    sid = _create(client, max_iterations=1)["id"]
    assert client.post(f"/sessions/{sid}/selection", json={"ids": [0, 1]}).status_code == 200
    resp = client.post(f"/sessions/{sid}/selection", json={"ids": [0, 1]})
    assert resp.status_code == 409


def test_export_endpoint_returns_level_bytes(client):
    sid = _create(client)["id"]
    resp = client.get(f"/sessions/{sid}/export/3")
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("application/json")
    doc = json.loads(resp.content)
    validate_level_json(doc)
    layout_from_json(doc)
    assert doc["meta"]["candidate"] == 3
    assert client.get(f"/sessions/{sid}/export/3").content == resp.content


def test_export_unknown_candidate_404(client):
    sid = _create(client)["id"]
    assert client.get(f"/sessions/{sid}/export/99").status_code == 404


def test_history_endpoint_is_replayable_transcript(client):
    sid = _create(client)["id"]
    client.post(f"/sessions/{sid}/selection", json={"ids": [2, 6]})
    doc = client.get(f"/sessions/{sid}/history").json()
    assert doc["id"] == sid
    assert doc["selections"][0] == {"generation": 0, "selector": "human", "ids": [2, 6]}
    assert set(doc) == {"id", "params", "policy", "status", "selections"}


def test_cors_allows_browser_clients(client):
    resp = client.get("/sessions/missing", headers={"Origin": "http://localhost:5173"})
    assert resp.headers.get("access-control-allow-origin") == "*"


def test_full_session_over_http(client):
    sid = _create(client, seed=33)["id"]
    state = client.get(f"/sessions/{sid}").json()
    submits = 0
    while state["status"] == "active":
        resp = client.post(f"/sessions/{sid}/selection", json={"ids": [0, 1]})
        assert resp.status_code == 200
        state = resp.json()
        submits += 1
    assert state["generation"]["index"] == 10
    assert state["turn"] == "finished"
    assert submits == 6  # warmup 3, then alternating agent rounds
