import json

import pytest
from fastapi.testclient import TestClient

from aquanim.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def _rebin_spec(fps=10, duration=1.0):
    return {
        "chart": {"kind": "histogram",
                  "samples": [0.3, 0.5, 1.2, 1.4, 2.2, 2.9, 3.5, 4.4, 5.1, 6.6],
                  "bin_count": 7, "range": [0.0, 7.0]},
        "transition": {"kind": "histogram_rebin", "new_bin_count": 13},
        "render": {"fps": fps, "duration": duration, "width": 320, "height": 200},
    }


def test_health(client):
    response = client.get("/api/v1/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_transitions_listing(client):
    payload = client.get("/api/v1/transitions").json()
    kinds = {entry["kind"] for entry in payload["transitions"]}
    assert kinds == {"histogram_data_change", "histogram_rebin",
                     "histogram_rebin_diffusive", "proportion_tip",
                     "stacked_vertical_reorder", "stacked_horizontal_reorder",
                     "fluctuation_to_mosaic"}
    for entry in payload["transitions"]:
        assert "params" in entry and "chart" in entry


def test_keyframes_rebin_frame_count(client):
    response = client.post("/api/v1/keyframes", content=json.dumps(_rebin_spec()))
    assert response.status_code == 200
    doc = response.json()
    assert len(doc["frames"]) == 10 * 1 + 1
    assert doc["version"] == 1 and doc["fps"] == 10


def test_keyframes_deterministic_response(client):
    body = json.dumps(_rebin_spec())
    first = client.post("/api/v1/keyframes", content=body)
    second = client.post("/api/v1/keyframes", content=body)
    assert first.content == second.content


def test_unknown_transition_kind_is_400(client):
    spec = _rebin_spec()
    spec["transition"] = {"kind": "wobble"}
    response = client.post("/api/v1/keyframes", content=json.dumps(spec))
    assert response.status_code == 400
    body = response.json()
    assert body["error"] == "SpecError"
    assert "wobble" in body["detail"]


def test_engine_precondition_is_422(client):
    spec = {
        "chart": {"kind": "histogram", "counts": [2, 1, 1], "range": [0, 3]},
        "transition": {"kind": "proportion_tip", "selected_bins": []},
        "render": {"fps": 5, "duration": 1.0},
    }
    response = client.post("/api/v1/keyframes", content=json.dumps(spec))
    assert response.status_code == 422
    assert response.json()["error"] == "EmptySelection"


def test_invalid_json_body_is_400(client):
    response = client.post("/api/v1/keyframes", content="{nope")
    assert response.status_code == 400
    assert response.json()["error"] == "ParseError"


def test_oversized_request_is_rejected(client):
    spec = _rebin_spec()
    spec["chart"]["samples"] = [0.5] * 300000  # ~2 MB of JSON
    response = client.post("/api/v1/keyframes", content=json.dumps(spec))
    assert response.status_code == 413
