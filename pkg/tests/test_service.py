import math

import numpy as np
import pytest
from fastapi.testclient import TestClient

from giantatoms.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


class TestCoefficientsEndpoint:
    def test_braided_half_pi(self, client):
        response = client.post("/coefficients", json={
            "config": "braided", "phi": math.pi / 2, "gamma": 1.0})
        assert response.status_code == 200
        body = response.json()
        assert set(body) == {"lamb_shift", "g_ab", "g_cd", "gamma_individual",
                             "gamma_ab", "gamma_cd", "gamma", "phi"}
        assert body["g_ab"] == pytest.approx(1.0, abs=1e-14)
        assert body["gamma_individual"]["a"] == pytest.approx(0.0, abs=1e-14)
        assert body["gamma_ab"] == pytest.approx(0.0, abs=1e-14)

    def test_custom_layout(self, client):
        layout = {"a": [0.0, 2.0], "b": [1.0, 3.0],
                  "c": [0.0, 2.0], "d": [1.0, 3.0]}
        response = client.post("/coefficients", json={
            "config": "custom", "layout": layout, "phi": math.pi / 2})
        assert response.status_code == 200
        assert response.json()["g_ab"] == pytest.approx(1.0, abs=1e-14)

    def test_custom_without_layout_rejected(self, client):
        response = client.post("/coefficients", json={
            "config": "custom", "phi": 0.0})
        assert response.status_code == 422

    def test_invalid_gamma_rejected(self, client):
        response = client.post("/coefficients", json={
            "config": "small", "phi": 0.0, "gamma": -1.0})
        assert response.status_code == 422


class TestEvolveEndpoint:
    def test_braided_transfer(self, client):
        response = client.post("/evolve", json={
            "config": "braided", "phi": math.pi / 2,
            "t_max": math.pi, "steps": 100})
        assert response.status_code == 200
        body = response.json()
        assert len(body["t"]) == 101
        assert body["c_bd"][50] == pytest.approx(1.0, abs=1e-10)
        assert body["c_ac"][0] == pytest.approx(1.0, abs=1e-12)
        assert body["norm"][100] == pytest.approx(1.0, abs=1e-12)

    def test_lindblad_method(self, client):
        payload = {"config": "small", "phi": 0.0, "t_max": 2.0, "steps": 20}
        amp = client.post("/evolve", json=payload).json()
        lind = client.post("/evolve", json={**payload, "method": "lindblad"}).json()
        np.testing.assert_allclose(lind["c_bd"], amp["c_bd"], atol=1e-6)

    def test_initial_sign(self, client):
        response = client.post("/evolve", json={
            "config": "braided", "phi": math.pi / 2, "t_max": math.pi,
            "steps": 10, "initial_sign": -1})
        assert response.status_code == 200
        assert response.json()["c_ac"][0] == pytest.approx(1.0, abs=1e-12)

    def test_invalid_method_rejected(self, client):
        response = client.post("/evolve", json={
            "config": "small", "phi": 0.0, "method": "magic"})
        assert response.status_code == 422

    def test_invalid_sign_rejected(self, client):
        response = client.post("/evolve", json={
            "config": "small", "phi": 0.0, "initial_sign": 3})
        assert response.status_code == 422


class TestSweepEndpoint:
    def test_grid_shape(self, client):
        response = client.post("/sweep", json={
            "config": "small", "pair": "bd", "phi_steps": 4, "t_steps": 5,
            "t_max": 2.0})
        assert response.status_code == 200
        body = response.json()
        assert len(body["phi"]) == 5
        assert len(body["t"]) == 6
        assert len(body["values"]) == 5
        assert len(body["values"][0]) == 6
        assert body["phi"][0] == 0.0
        assert body["phi"][-1] == pytest.approx(2 * math.pi)


class TestPeaksEndpoint:
    def test_braided_peak(self, client):
        response = client.post("/peaks", json={
            "config": "braided", "phi": math.pi / 2, "pair": "bd",
            "t_horizon": 10.0})
        assert response.status_code == 200
        body = response.json()
        assert body["value"] == pytest.approx(1.0, abs=1e-9)
        assert math.sin(body["t_at_peak"]) ** 2 == pytest.approx(1.0, abs=1e-9)
        assert body["coarse_samples"] == 10000

    def test_invalid_horizon_rejected(self, client):
        response = client.post("/peaks", json={
            "config": "braided", "phi": math.pi / 2, "t_horizon": -1.0})
        assert response.status_code == 422
