"""HTTP facade: endpoint bodies mirror the CLI records, errors map to
400/422, validation failures stay 200 with ok false."""

import json

import pytest
from fastapi.testclient import TestClient

from conftest import FIXTURES
from wdparity.cli import main
from wdparity.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_healthz(client):
    resp = client.get("/healthz")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_eps_local_split_fixture(client):
    text = (FIXTURES / "split_mult_local.datum").read_text()
    resp = client.post("/eps-local", json={"datum": text})
    assert resp.status_code == 200
    body = resp.json()
    assert body["eps"] == -1
    assert body["panchishkin_eps"] == -1
    assert body["routes_agree"] is True
    assert body["ok"] is True
    assert len(body["identities"]) == 3
    assert all(item["ok"] for item in body["identities"])


def test_eps_local_without_block_warns(client):
    text = (FIXTURES / "ramified_local.datum").read_text()
    resp = client.post("/eps-local", json={"datum": text})
    assert resp.status_code == 200
    body = resp.json()
    assert body["eps"] == -1
    assert body["panchishkin_eps"] is None
    assert body["warnings"]


def test_global_fixture(client):
    text = (FIXTURES / "split_mult.datum").read_text()
    resp = client.post("/global", json={"datum": text})
    assert resp.status_code == 200
    body = resp.json()
    assert body["eps"] == -1
    assert body["eps_tilde"] == 1
    assert body["h1f_tilde"] == 2
    assert body["invariant"] == 1
    assert body["ok"] is True


def test_formulary_fixture(client):
    text = (FIXTURES / "qp1.num").read_text()
    resp = client.post("/formulary", json={"datum": text})
    assert resp.status_code == 200
    body = resp.json()
    assert body["table"]["h1"] == 2
    assert body["table"]["h1_f"] == 1
    assert body["table"]["h1_g"] == 2
    assert body["ok"] is True


def test_verify_fixtures(client):
    for name in ("split_mult.datum", "qp.num", "ramified_local.datum"):
        text = (FIXTURES / name).read_text()
        resp = client.post("/verify", json={"datum": text})
        assert resp.status_code == 200
        assert resp.json()["ok"] is True, name


def test_selfcheck_deterministic(client):
    a = client.post("/selfcheck", json={"seed": 0, "cases": 10})
    b = client.post("/selfcheck", json={"seed": 0, "cases": 10})
    assert a.status_code == b.status_code == 200
    assert a.json() == b.json()
    assert a.json()["ok"] is True
    assert [s["suite"] for s in a.json()["suites"]] == [
        "reduction identities", "monodromy invariants", "formulary invariants"]


def test_response_equals_cli_record(client, capsys):
    """The service body and the CLI record are the same JSON document."""
    path = FIXTURES / "split_mult.datum"
    code = main(["global", "--output", "record", str(path)])
    assert code == 0
    cli_record = json.loads(capsys.readouterr().out)
    resp = client.post("/global", json={"datum": path.read_text()})
    assert resp.json() == cli_record


def test_malformed_datum_maps_to_400(client):
    resp = client.post("/global", json={"datum": "{ nope"})
    assert resp.status_code == 400
    assert "line 1" in resp.json()["detail"]


def test_wrong_kind_maps_to_400(client):
    text = (FIXTURES / "qp.num").read_text()
    resp = client.post("/eps-local", json={"datum": text})
    assert resp.status_code == 400
    assert "kind local" in resp.json()["detail"]


def test_validation_failure_stays_200(client, tmp_path):
    doc = json.loads((FIXTURES / "split_mult.datum").read_text())
    flagged = [p for p in doc["places"] if p.get("ramified") is True]
    flagged[0]["ramified"] = False
    resp = client.post("/verify", json={"datum": json.dumps(doc)})
    assert resp.status_code == 200
    body = resp.json()
    assert body["ok"] is False
    assert any(not item["ok"] for item in body["checks"])


def test_request_schema_enforced(client):
    assert client.post("/eps-local", json={}).status_code == 422
    assert client.post("/selfcheck",
                       json={"seed": 0, "cases": 0}).status_code == 422
