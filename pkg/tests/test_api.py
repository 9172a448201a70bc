import pytest
from fastapi.testclient import TestClient

from main import app
from services.mf_service import cubic_e1


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as test_client:
        yield test_client


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"
    assert "x-compute-time-ms" in response.headers


def test_root(client):
    assert client.get("/").json()["message"] == "nchodge API"


def test_milnor(client):
    response = client.post("/api/milnor", json={"f": "x0^3+x1^3+x2^3+x3^3", "n": 2})
    assert response.status_code == 200
    assert response.json()["hilbert"] == [1, 4, 6, 4, 1]


def test_hodge(client):
    response = client.post("/api/hodge", json={"f": "x0^4+x1^4+x2^4+x3^4", "n": 2})
    assert response.json()["classical"] == {"h2,0": 1, "h1,1": 19, "h0,2": 1}
    assert response.json()["hp0_dim"] == 21


def test_psi(client):
    response = client.post("/api/psi", json={
        "f": "x0^3+x1^3+x2^3+x3^3", "n": 2, "q": "x0*x1", "j": 2, "m": 0,
    })
    assert response.status_code == 200
    assert response.json()["cycle"] is True


def test_chern(client):
    response = client.post("/api/chern", json={
        "f": "x0^3+x1^3", "n": 0, "mf": cubic_e1().to_payload(),
    })
    assert response.status_code == 200
    assert response.json() == {"raw": "-3*x0+3*x1", "reduced": {"x0": "-3", "x1": "3"}}


def test_tensor_and_qrank(client):
    payload = cubic_e1().to_payload()
    product = client.post("/api/tensor", json={"mf1": payload, "mf2": payload}).json()
    assert len(product["A"]) == 2
    response = client.post("/api/qrank", json={"f": "x0^3+x1^3+x2^3+x3^3", "n": 2, "mfs": [product]})
    assert response.json() == {"rank": 1, "count": 1}


def test_fermat(client):
    response = client.get("/api/fermat", params={"m": 3, "n": 2})
    assert response.json()["count"] == 6
    response = client.get("/api/fermat", params={"m": 2, "n": 2, "count_only": True})
    assert response.json() == {"count": 1}


def test_verify(client):
    response = client.get("/api/verify/fermat")
    assert response.status_code == 200
    assert response.json()["passed"] is True


def test_bad_polynomial_is_400(client):
    response = client.post("/api/milnor", json={"f": "x0^3+", "n": 2})
    assert response.status_code == 400


def test_non_isolated_is_400(client):
    response = client.post("/api/milnor", json={"f": "x0^2", "n": 0})
    assert response.status_code == 400


def test_degree_cap_is_422(client):
    response = client.post("/api/milnor", json={"f": "x0^3+x1^3+x2^3+x3^3", "n": 2, "max_degree": 1})
    assert response.status_code == 422


def test_bad_factorization_is_400(client):
    response = client.post("/api/chern", json={
        "f": "x0^3+x1^3", "n": 0, "mf": {"f": "x0^3+x1^3", "A": [["x0"]], "B": [["x0"]]},
    })
    assert response.status_code == 400


def test_odd_dimension_is_422(client):
    response = client.post("/api/milnor", json={"f": "x0^3+x1^3+x2^3", "n": 1})
    assert response.status_code == 422
    assert "чётной" in response.json()["detail"][0]["msg"]
