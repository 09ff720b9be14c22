# tests/test_api.py

import pytest
from fastapi.testclient import TestClient

from src.api.app import create_app

GAUSSIAN = {"u": 0, "v": 1, "w": 1}


@pytest.fixture
def client():
    with TestClient(create_app()) as c:
        yield c


def query(g=2, cm=GAUSSIAN, multipliers=(1, 1)):
    return {"g": g, "cm": cm, "multipliers": list(multipliers)}


def test_healthz(client):
    assert client.get("/healthz").json() == {"status": "ok"}


def test_count(client):
    response = client.post("/v1/census/count", json={"query": query(3, multipliers=(1, 1, 1)), "t": 3})
    assert response.status_code == 200
    assert response.json()["count"] == 55


def test_count_without_cm(client):
    response = client.post("/v1/census/count", json={"query": query(cm=None), "t": 2})
    assert response.json()["count"] == 4


def test_enumerate(client):
    response = client.post("/v1/census/enumerate", json={"query": query(), "t": 2})
    data = response.json()
    assert data["count"] == 6
    assert "basis" not in data["curves"][0]
    assert data["curves"][-1]["coords"] == [1, 1, 1, 0]


def test_enumerate_with_basis(client):
    response = client.post("/v1/census/enumerate", json={"query": query(), "t": 1, "with_basis": True})
    curves = response.json()["curves"]
    assert curves[1]["basis"] == {"lambda": [1, 0, 0, 0], "mu": [0, 0, 1, 0]}


def test_sweep(client):
    response = client.post("/v1/census/sweep", json={"query": query(), "t_max": 2})
    rows = response.json()
    assert [row["count"] for row in rows] == [0, 2, 6]
    assert rows[0]["bound"] == 0.0


def test_sweep_range(client):
    response = client.post("/v1/census/sweep", json={"query": query(), "t_min": 3, "t_max": 2})
    assert response.status_code == 422


def test_bounds(client):
    response = client.post("/v1/bounds", json={"query": query(), "t": 2})
    assert response.json()["kind"] == "census2_bound"


def test_verify(client):
    response = client.post("/v1/verify", json={"query": query(), "t": 2, "box": 2})
    assert response.status_code == 200
    assert response.json()["passed"] is True


@pytest.mark.parametrize(
    "path, body",
    [
        ("/v1/census/count", {"query": query(cm={"u": 2, "v": 1, "w": 1}), "t": 2}),
        ("/v1/census/count", {"query": query(multipliers=(1, 1, 1)), "t": 2}),
        ("/v1/census/count", {"query": query(), "t": -1}),
        ("/v1/census/count", {"query": query(), "t": 10_001}),
        ("/v1/verify", {"query": query(cm=None), "t": 2}),
        ("/v1/census/enumerate", {"query": query(cm=None), "t": 2, "with_basis": True}),
    ],
)
def test_rejected_requests(client, path, body):
    assert client.post(path, json=body).status_code == 422
