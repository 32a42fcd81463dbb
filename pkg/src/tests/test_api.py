"""
Tests for the suite and series endpoints
"""
from fastapi.testclient import TestClient

from ..main import app

client = TestClient(app)


def test_run_tensor_suite():
    """Tensor suite runs with settings defaults"""
    response = client.post("/api/v1/suites/tensor", json={})
    assert response.status_code == 200

    data = response.json()
    assert data["command"] == "tensor"
    assert len(data["checks"]) == 6
    assert all(check["status"] == "pass" for check in data["checks"])
    assert all(check["paper_anchor"] == "tens-pr-decomp" for check in data["checks"])


def test_run_requested_product():
    response = client.post("/api/v1/suites/tensor", json={"lhs": "0,1", "rhs": "0,1", "rank": 2})
    assert response.status_code == 200
    details = response.json()["checks"][0]["details"]
    assert details["decomposition"] == {"2w2": 1, "2w1": 1, "0": 1}


def test_unknown_suite():
    response = client.post("/api/v1/suites/unknown", json={})
    assert response.status_code == 404


def test_request_validation():
    """Field constraints reject out-of-range parameters"""
    response = client.post("/api/v1/suites/classify", json={"ell": 0})
    assert response.status_code == 422

    response = client.post("/api/v1/suites/tensor", json={"type": "B"})
    assert response.status_code == 422


def test_suite_value_errors_are_unprocessable():
    response = client.post("/api/v1/suites/tensor", json={"lhs": "a", "rhs": "1"})
    assert response.status_code == 422
    assert "Dynkin labels" in response.json()["detail"]

    response = client.post("/api/v1/suites/chars", json={"max_weight": "1/3"})
    assert response.status_code == 422


def test_heisenberg_series():
    response = client.get("/api/v1/series/heisenberg", params={"rank": 1, "order": "6"})
    assert response.status_code == 200

    data = response.json()
    assert data["kind"] == "heisenberg"
    assert data["order"] == "6"
    assert [data["coefficients"][str(n)] for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]
    assert data["coefficients"]["1/2"] == 0


def test_plus_series():
    response = client.get("/api/v1/series/heisenberg-plus", params={"order": "4"})
    assert response.status_code == 200
    assert [response.json()["coefficients"][str(n)] for n in range(5)] == [1, 0, 1, 1, 3]


def test_series_errors():
    assert client.get("/api/v1/series/virasoro").status_code == 404
    assert client.get("/api/v1/series/fock", params={"rank": 0}).status_code == 422
