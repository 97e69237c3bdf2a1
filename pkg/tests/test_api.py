import pytest
from fastapi.testclient import TestClient

from sesqui.main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture(scope="module")
def sealed_instance(client):
    response = client.post("/api/instances?reveal=true",
                           json={"family": "f541", "degree": 2, "variant": "norm", "seed": 4})
    assert response.status_code == 200
    return response.json()


def test_health(client):
    """Teste la route de santé"""
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"
    assert "X-Process-Time" in response.headers


def test_example_f101(client):
    """Teste la vérification de l'exemple F_{101^2} par l'API"""
    response = client.get("/api/examples/f101")
    assert response.status_code == 200
    data = response.json()
    assert data["ok"] is True
    assert data["checks"]["z_pi_cyclique"] is True


def test_unknown_example(client):
    """Teste le code 422 pour un exemple inconnu"""
    response = client.get("/api/examples/f7")
    assert response.status_code == 422
    assert response.json()["code"] == "UNKNOWN_FAMILY"


def test_instance_hides_sealed_block(client):
    """Teste que la vérité scellée n'est renvoyée qu'avec reveal"""
    body = {"family": "f541", "degree": 2, "seed": 4}
    hidden = client.post("/api/instances", json=body).json()
    assert "sealed" not in hidden
    assert hidden["orientation"]["m"] == "5"
    revealed = client.post("/api/instances?reveal=true", json=body).json()
    assert "sealed" in revealed
    assert revealed["sealed"]["norm"] is not None


def test_attack_with_reveal(client, sealed_instance):
    """Teste l'attaque sur N(λ) avec comparaison à la vérité scellée"""
    response = client.post("/api/attacks?reveal=true", json=sealed_instance)
    assert response.status_code == 200
    data = response.json()
    assert data["variant"] == "norm"
    assert data["verdict"] == "PASS"
    assert data["norm"] == sealed_instance["sealed"]["norm"]


def test_attack_without_reveal(client, sealed_instance):
    """Teste qu'aucun verdict n'est donné sans reveal"""
    response = client.post("/api/attacks", json=sealed_instance)
    assert response.status_code == 200
    assert response.json()["verdict"] is None


def test_infeasible_degree(client):
    """Teste le code 422 quand aucun noyau orienté de degré 3 n'existe"""
    response = client.post("/api/instances", json={"family": "gaussian", "degree": 3, "p": 541, "m": 5})
    assert response.status_code == 422
    assert response.json()["code"] == "NO_SPLIT_PRIME_KERNEL"


def test_degree_over_budget(client):
    """Teste le code 413 pour un degré hors budget"""
    response = client.post("/api/instances", json={"family": "f541", "degree": 17})
    assert response.status_code == 413
    assert response.json()["code"] == "BUDGET_EXCEEDED"


def test_pairing(client, sealed_instance):
    """Teste l'évaluation de T̂ et de la Tate réduite sur P + Q"""
    for op, size in (("sesqui", 2), ("tate", 1)):
        response = client.post("/api/pairings",
                               json={"instance": sealed_instance, "op": op, "P": [1, 1], "Q": [1, 1]})
        assert response.status_code == 200
        data = response.json()
        assert data["m"] == "5"
        assert len(data["logs"]) == size
