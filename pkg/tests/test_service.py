"""HTTP surface: request validation, payload shapes, error mapping."""

import math

import pytest
from fastapi.testclient import TestClient

from zmap.service import app

Z68 = complex(3.610326860525178, 2.568086087959661)


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_value_rhp(client):
    r = client.post("/value", json={"n": 6, "m": 8, "a": "2/3",
                                    "method": "rhp", "N0": 42})
    assert r.status_code == 200
    body = r.json()
    got = complex(body["value_re"], body["value_im"])
    assert abs(got - Z68) <= 1e-6
    assert body["tolerance_met"] is True
    assert body["diagnostics"]["condition_estimate"] > 0


def test_value_stable(client):
    r = client.post("/value", json={"n": 6, "m": 8, "a": "2/3",
                                    "method": "stable"})
    body = r.json()
    got = complex(body["value_re"], body["value_im"])
    assert abs(got - Z68) <= 1e-9


def test_value_oracle(client):
    r = client.post("/value", json={"n": 6, "m": 8, "a": "2/3",
                                    "method": "oracle",
                                    "precision_bits": 256})
    body = r.json()
    got = complex(body["value_re"], body["value_im"])
    assert abs(got - Z68) <= 1e-12


def test_value_parity_maps_to_400(client):
    r = client.post("/value", json={"n": 1, "m": 2, "a": "2/3"})
    assert r.status_code == 400
    assert r.json()["error"] == "ParityViolation"


def test_value_bad_exponent_is_422(client):
    r = client.post("/value", json={"n": 6, "m": 8, "a": 5.0})
    assert r.status_code == 422


def test_lattice_payload(client):
    r = client.post("/lattice", json={"a": "2/3", "N": 10,
                                      "method": "stable"})
    body = r.json()
    assert body["tolerance_met"] is True
    assert len(body["values"]) == 11 * 11
    assert body["max_cross_ratio_residual"] <= 1e-9


def test_lattice_naive_flagged_ok_on_cross_ratio(client):
    r = client.post("/lattice", json={"a": "2/3", "N": 30,
                                      "method": "naive"})
    body = r.json()
    assert body["max_cross_ratio_residual"] <= 1e-9
    assert body["tolerance_met"] is True


def test_painleve_endpoint(client):
    r = client.post("/painleve", json={"a": "2/3", "N": 300})
    body = r.json()
    assert body["iters"] <= 15
    assert body["max_modulus_error"] <= 1e-12
    x0 = complex(body["x0_re"], body["x0_im"])
    assert abs(x0 - complex(math.cos(math.pi / 6), math.sin(math.pi / 6))) <= 1e-10


def test_model_endpoint_both(client):
    r = client.post("/model", json={"m": 20, "method": "both"})
    body = r.json()
    assert body["nystrom"]["y0_error"] <= 1e-11
    assert body["spectral"]["y0_error"] <= 1e-11
    assert body["tolerance_met"] is True


def test_instability_endpoint(client):
    r = client.post("/instability", json={"a": "2/3", "N": 35})
    body = r.json()
    naive = dict((int(n), e) for n, e in body["naive_diagonal"]["points"])
    modulus = dict((int(n), e) for n, e in body["modulus_indicator"]["points"])
    assert max(e for n, e in naive.items() if n <= 30) >= 1e-2
    assert max(e for n, e in modulus.items() if n <= 30) >= 1e-3


def test_compare_endpoint(client):
    r = client.post("/compare", json={"a": "1", "points": [[2, 2], [4, 4]],
                                      "N0": 42})
    body = r.json()
    assert body["max_stable_vs_rhp"] <= 1e-8
    for row in body["rows"]:
        assert row["stable_vs_rhp"] <= 1e-8


def test_compare_rejects_odd_points(client):
    r = client.post("/compare", json={"a": "2/3", "points": [[1, 2]]})
    assert r.status_code == 422
