"""Shared fixtures: JSON descriptions used by the service, CLI and acceptance tests."""
import numpy as np
import pytest

GAUSS_I2 = {"kind": "GAUSSIAN", "covariance": [[1.0, 0.0], [0.0, 1.0]]}
BALL2 = {"kind": "lpball", "p": 2, "radius": 1.0, "dim": 2}
SQUARE2 = {"kind": "lpball", "p": "inf", "radius": 1.0, "dim": 2}
SLAB_X = {"kind": "slab", "u": [1.0, 0.0], "width": 1.0}


@pytest.fixture
def rng():
    return np.random.default_rng(20260819)


@pytest.fixture(scope="session")
def client():
    from fastapi.testclient import TestClient

    from minmax_hyper.service.app import app

    with TestClient(app) as c:
        yield c
