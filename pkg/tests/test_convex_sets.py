"""Gauge oracles for the symmetric convex sets and the vector laws."""
import math

import numpy as np
import pytest

from minmax_hyper.errors import DomainError, ParseError
from minmax_hyper.gauss_stable import (
    GAUSSIAN,
    MAX_DIM,
    STABLE_INDEP,
    STABLE_SUBGAUSSIAN,
    convexity_check,
    ellipsoid,
    euclidean_ball,
    gauge_consistency_check,
    gaussian,
    intersection,
    lpball,
    parse_law,
    parse_matrix,
    parse_set,
    sample,
    slab,
    stable_indep,
    stable_subgaussian,
    symmetry_check,
)
from minmax_hyper.rng import stream_rng


# --- gauges ------------------------------------------------------------------

def test_euclidean_ball_gauge_three_four_five():
    b = euclidean_ball(2, 5.0)
    assert float(b.gauge(np.array([[3.0, 4.0]]))[0]) == pytest.approx(1.0, rel=1e-14)
    assert b.membership(np.array([[3.0, 3.9]]))[0]
    assert not b.membership(np.array([[3.0, 4.1]]))[0]


def test_slab_gauge_projects_onto_the_normal():
    s = slab([1.0, 0.0], 2.0)
    x = np.array([[1.0, 99.0], [-4.0, 0.0]])
    np.testing.assert_allclose(s.gauge(x), [0.5, 2.0], rtol=1e-14)
    # the direction's magnitude scales the slab: u and width enter as a ratio
    s2 = slab([2.0, 0.0], 4.0)
    np.testing.assert_allclose(s2.gauge(x), s.gauge(x), rtol=1e-12)


def test_ellipsoid_gauge_quadratic_form():
    q = np.diag([1.0 / 4.0, 1.0])  # semi-axes 2 and 1
    e = ellipsoid(q)
    np.testing.assert_allclose(
        e.gauge(np.array([[2.0, 0.0], [0.0, 1.0], [2.0, 1.0]])),
        [1.0, 1.0, math.sqrt(2.0)], rtol=1e-12)


def test_lpball_gauges():
    x = np.array([[1.0, -1.0]])
    assert float(lpball(1.0, 1.0, 2).gauge(x)[0]) == pytest.approx(2.0)
    assert float(lpball(2.0, 1.0, 2).gauge(x)[0]) == pytest.approx(math.sqrt(2.0))
    assert float(lpball(np.inf, 1.0, 2).gauge(x)[0]) == pytest.approx(1.0)
    assert float(lpball(np.inf, 0.5, 2).gauge(x)[0]) == pytest.approx(2.0)


def test_lpball_rejects_nonconvex_exponents():
    with pytest.raises(DomainError):
        lpball(0.5, 1.0, 2)  # p < 1 is not a norm ball


def test_intersection_gauge_is_the_max():
    both = intersection([slab([1.0, 0.0], 1.0), slab([0.0, 1.0], 2.0)])
    x = np.array([[0.5, 3.0]])
    assert float(both.gauge(x)[0]) == pytest.approx(1.5)


def test_every_builtin_set_passes_the_geometry_checks():
    sets = [
        euclidean_ball(3),
        slab([1.0, 2.0, -1.0], 1.5),
        ellipsoid(np.diag([4.0, 1.0, 0.25])),
        lpball(1.0, 2.0, 3),
        lpball(np.inf, 1.0, 3),
        intersection([euclidean_ball(3), lpball(np.inf, 0.8, 3)]),
    ]
    for cs in sets:
        assert convexity_check(cs), cs.name
        assert symmetry_check(cs), cs.name
        assert gauge_consistency_check(cs), cs.name


def test_gauge_scales_linearly():
    e = ellipsoid(np.array([[2.0, 0.5], [0.5, 1.0]]))
    x = stream_rng(3, 0).standard_normal((100, 2))
    np.testing.assert_allclose(e.gauge(3.0 * x), 3.0 * e.gauge(x), rtol=1e-12)


# --- parsing -----------------------------------------------------------------

def test_parse_matrix_both_wire_formats():
    m1 = parse_matrix({"dim": 2, "data": [1.0, 0.0, 0.0, 2.0]}, "cov")
    m2 = parse_matrix([[1.0, 0.0], [0.0, 2.0]], "cov")
    np.testing.assert_array_equal(m1, np.diag([1.0, 2.0]))
    np.testing.assert_array_equal(m1, m2)
    with pytest.raises((ParseError, DomainError)):
        parse_matrix({"dim": 2, "data": [1.0, 0.0, 0.0]}, "cov")  # wrong length
    with pytest.raises(ParseError):
        parse_matrix([[1.0, 0.0]], "cov")  # not square
    with pytest.raises(ParseError):
        parse_matrix([[1.0], [1.0, 2.0]], "cov")  # ragged
    with pytest.raises(ParseError):
        parse_matrix("I2", "cov")


def test_parse_set_roundtrip_all_kinds():
    specs = [
        {"kind": "slab", "u": [1.0, 0.0], "width": 1.0},
        {"kind": "ellipsoid", "Q": {"dim": 2, "data": [1.0, 0.0, 0.0, 4.0]}},
        {"kind": "lpball", "p": 2, "radius": 1.0, "dim": 2},
        {"kind": "lpball", "p": "inf", "radius": 1.0, "dim": 2},
        {"kind": "intersection", "sets": [
            {"kind": "slab", "u": [1.0, 0.0], "width": 1.0},
            {"kind": "slab", "u": [0.0, 1.0], "width": 1.0},
        ]},
    ]
    for spec in specs:
        cs = parse_set(spec)
        assert cs.dim == 2
        # to_json gives back something parse_set accepts
        assert parse_set(cs.to_json()).dim == 2
    # JSON text is accepted too
    assert parse_set('{"kind": "lpball", "p": 2, "radius": 1, "dim": 3}').dim == 3


def test_parse_set_errors():
    with pytest.raises(ParseError):
        parse_set({"kind": "polytope"})
    with pytest.raises(ParseError):
        parse_set({"kind": "slab", "u": [1.0, 0.0]})  # missing width
    with pytest.raises(ParseError):
        parse_set("not json")
    with pytest.raises(ParseError):
        parse_set([1, 2, 3])


def test_dimension_cap_enforced():
    with pytest.raises(DomainError):
        euclidean_ball(MAX_DIM + 1)
    with pytest.raises(DomainError):
        stable_indep(1.5, [1.0] * (MAX_DIM + 1))


# --- laws --------------------------------------------------------------------

def test_gaussian_law_basics():
    g = gaussian(np.eye(2))
    assert g.kind == GAUSSIAN and g.dim == 2 and g.alpha == 2.0
    x = sample(g, 200_000, stream_rng(1, 0))
    assert x.shape == (200_000, 2)
    cov = np.cov(x.T)
    np.testing.assert_allclose(cov, np.eye(2), atol=0.02)


def test_gaussian_respects_the_covariance():
    g = gaussian(np.array([[4.0, 0.0], [0.0, 1.0]]))
    x = sample(g, 200_000, stream_rng(2, 0))
    assert float(np.var(x[:, 0])) == pytest.approx(4.0, rel=0.03)
    assert float(np.var(x[:, 1])) == pytest.approx(1.0, rel=0.03)


def test_gaussian_rejects_bad_covariance():
    with pytest.raises(DomainError):
        gaussian(np.array([[1.0, 2.0], [2.0, 1.0]]))  # not PSD
    with pytest.raises(DomainError):
        gaussian(np.array([[1.0, 0.5], [0.4, 1.0]]))  # not symmetric


def test_subgaussian_alpha2_collapses_to_doubled_gaussian():
    # characteristic function exp(-(t' Sigma t)) = N(0, 2 Sigma)
    law = stable_subgaussian(2.0, np.eye(2))
    x = sample(law, 200_000, stream_rng(4, 0))
    np.testing.assert_allclose(np.cov(x.T), 2.0 * np.eye(2), atol=0.05)


def test_subgaussian_heavy_alpha_samples_are_finite_and_heavy():
    law = stable_subgaussian(1.0, np.eye(2))
    x = sample(law, 100_000, stream_rng(5, 0))
    assert np.all(np.isfinite(x))
    # alpha = 1 has no mean: the far tail is visibly occupied
    assert float(np.mean(np.abs(x[:, 0]) > 50.0)) > 1e-4


def test_stable_indep_cauchy_quartile():
    law = stable_indep(1.0, [1.0, 2.0])
    assert law.kind == STABLE_INDEP
    x = sample(law, 400_000, stream_rng(6, 0))
    # standard Cauchy has Q3 = 1; the second coordinate is scaled by 2
    assert float(np.quantile(x[:, 0], 0.75)) == pytest.approx(1.0, abs=0.02)
    assert float(np.quantile(x[:, 1], 0.75)) == pytest.approx(2.0, abs=0.04)


def test_parse_law_roundtrip():
    for law in (gaussian(np.eye(2)),
                stable_subgaussian(1.5, np.eye(3)),
                stable_indep(0.8, [1.0, 2.0])):
        again = parse_law(law.describe())
        assert again.kind == law.kind
        assert again.dim == law.dim
        assert again.alpha == law.alpha


def test_parse_law_errors():
    with pytest.raises(DomainError):
        parse_law({"covariance": [[1.0]]})
    with pytest.raises(DomainError):
        parse_law({"kind": "poisson"})
    with pytest.raises(DomainError):
        stable_subgaussian(2.5, np.eye(2))
    with pytest.raises(DomainError):
        stable_indep(1.0, [])


def test_sample_budget_validation():
    g = gaussian(np.eye(2))
    with pytest.raises(DomainError):
        sample(g, -1, stream_rng(0, 0))
    with pytest.raises(DomainError):
        sample(g, 10**9 + 1, stream_rng(0, 0))


def test_law_names_are_descriptive():
    assert gaussian(np.eye(2)).name == "gaussian(d=2)"
    assert stable_subgaussian(1.5, np.eye(2)).name == "stable_subgaussian(alpha=1.5,d=2)"
    assert stable_indep(1.0, [1.0]).name == "stable_indep(alpha=1,d=1)"
