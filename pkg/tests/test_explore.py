"""Open-question probes: these report data, they never assert the conjecture."""
import math

import numpy as np
import pytest

from minmax_hyper import explore
from minmax_hyper.gauss_stable import euclidean_ball, gaussian, slab


def test_candidate_constants_at_the_reference_exponents():
    c = explore.min_constant_candidates(1.0, 2.0)
    assert c["gamma_ratio"] == pytest.approx(1.0, abs=1e-12)
    assert c["gamma_shift_ratio"] == pytest.approx(math.sqrt(2.0), rel=1e-12)


def test_candidate_constants_generic_exponents():
    from scipy.special import gammaln

    c = explore.min_constant_candidates(1.5, 3.0)
    assert c["gamma_ratio"] == pytest.approx(
        math.exp(gammaln(3.0) / 3.0 - gammaln(1.5) / 1.5), rel=1e-12)


def test_min_constant_probe_one_dimensional_gaussian():
    # gauge of N(0,1) in the unit interval is |Z|: the n = 1 ratio is the
    # half-normal norm ratio sqrt(pi/2) ~ 1.2533; deeper minima flatten the
    # density and push the ratio toward sqrt(2)
    out = explore.min_constant_probe(np.eye(1), euclidean_ball(1),
                                     n_grid=[1, 4, 64, 512],
                                     n_samples=10**5, seed=0)
    assert out["asserted"] is False
    first = out["rows"][0]
    want = math.sqrt(math.pi / 2.0)
    assert abs(first["ratio"] - want) < 4 * first["stderr"] + 1e-3
    assert out["sup_ratio"] > first["ratio"]
    assert out["sup_ratio"] < math.sqrt(2.0) + 0.05
    assert set(out["candidates"]) == {"gamma_ratio", "gamma_shift_ratio"}


def test_dilation_sweep_orthogonal_slabs():
    g = gaussian(np.eye(2))
    sets = [slab([1.0, 0.0], 1.0), slab([0.0, 1.0], 1.0)]
    out = explore.dilation_sweep(g, sets, scale_grid=[1.0, 1.1, 1.5],
                                 n_samples=10**5, seed=0)
    assert out["asserted"] is False
    # independent slabs: equality at scale 1, strict domination just above
    assert not out["rows"][0]["clears_interval"]
    assert abs(out["rows"][0]["diff"]) < 6 * out["rows"][0]["stderr"]
    assert out["first_clearing_scale"] == pytest.approx(1.1)
    p1 = 2.0 * 0.8413447460685429 - 1.0  # P(|Z| <= 1)
    assert out["rhs_product"] == pytest.approx(p1 * p1, abs=0.01)
