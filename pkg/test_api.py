#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for the HTTP front end.
"""

import sys

import pytest

from api import app
from sweep_api import register_sweep_blueprint

if "sweep_api" not in app.blueprints:
    register_sweep_blueprint(app)


@pytest.fixture
def client():
    app.config["TESTING"] = True
    with app.test_client() as client:
        yield client


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.get_json()["status"] == "ok"


def test_root_lists_modes(client):
    body = client.get("/").get_json()
    assert "correspond" in body["modes"]
    assert body["degree_bound"] >= 0


def test_run_success(client):
    problem = {"mode": "azumaya", "p": 3, "payload": {"point": {"a": [2], "b": [0]}}}
    response = client.post("/run", json=problem)
    assert response.status_code == 200
    assert response.get_json()["is_isomorphism"]


def test_run_bad_input(client):
    response = client.post("/run", json={"mode": "pcurv", "p": 6, "payload": {}})
    assert response.status_code == 400
    assert response.get_json()["error"] == "NotPrime"


def test_run_without_body(client):
    response = client.post("/run", data="not json", content_type="text/plain")
    assert response.status_code == 400


def test_selftest_endpoint(client):
    response = client.post("/selftest", json={"seed": 5, "scale": 0.02, "criteria": [2]})
    assert response.status_code == 200
    body = response.get_json()
    assert body["ok"]
    assert body["seed"] == 5


def test_unknown_endpoint(client):
    response = client.get("/nope")
    assert response.status_code == 404


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
