"""Cross-law transfer checks, anchored on the exp(1) vs exp(2) pair.

exp(2) is exp(1)/2 in distribution, so every norm of every composed word
scales by exactly 1/2: domination constants are 1/2, the two-sided dilation
is 1/2 and the fitted tail-thinning constant is 1.
"""
import math

import pytest

from minmax_hyper.comparison import (
    SMALL_BALL,
    TAIL,
    TWO_SIDED,
    min_domination_B,
    small_ball_comparison,
    tail_comparison,
    thinning_equivalence,
    two_sided_comparison,
)
from minmax_hyper.distributions import exponential, parse_spec, uniform
from minmax_hyper.errors import (
    DomainError,
    HypothesisFailed,
    InfiniteMoment,
)
from minmax_hyper.hyper import HyperParams

FAST = HyperParams(n_grid=tuple(2**j for j in range(11)), t_grid_size=200)
E1, E2 = exponential(1.0), exponential(2.0)


def test_min_domination_scaling_is_exact():
    assert min_domination_B(E2, E1, FAST) == pytest.approx(2.0, rel=1e-9)
    assert min_domination_B(E1, E2, FAST) == pytest.approx(0.5, rel=1e-9)


def test_min_domination_divergent_moment_raises():
    with pytest.raises(InfiniteMoment):
        min_domination_B(E1, parse_spec("pareto(3,1)"), HyperParams(p=1.0, q=3.0))


def test_small_ball_transfer_exp_pair():
    v = small_ball_comparison(E1, E2, FAST)
    assert v.direction == SMALL_BALL
    assert v.holds
    assert v.B_domination == pytest.approx(0.5, rel=1e-9)
    c = v.constants
    assert c["C"] == pytest.approx(math.sqrt(2.0), rel=1e-9)
    # recipe arithmetic is deterministic given (C, B, lam, beta)
    assert c["tau"] == pytest.approx(c["lambda"] * c["D"] / (c["K"] * c["B"]), rel=1e-12)
    assert 0.0 < c["tau"] < 1.0
    assert c["tau_empirical"] is None or c["tau_empirical"] >= c["tau"]
    assert not v.witnesses


def test_small_ball_transfer_validates_lambda_and_beta():
    with pytest.raises(DomainError):
        small_ball_comparison(E1, E2, FAST, lam=1.0)
    with pytest.raises(DomainError):
        small_ball_comparison(E1, E2, FAST, beta=0.4)  # below p/q


def test_small_ball_transfer_needs_min_conditions():
    with pytest.raises(HypothesisFailed):
        small_ball_comparison(parse_spec("atomzero(0.3,exp(1))"), E2, FAST)


def test_tail_transfer_exp_pair():
    v = tail_comparison(E1, E2, FAST)
    assert v.direction == TAIL
    assert v.holds
    c = v.constants
    p, q, lam = 1.0, 2.0, c["lambda"]
    assert c["A"] == pytest.approx(
        2.0 ** ((q + 1) / q) * c["C"] * c["D"] / lam, rel=1e-12)
    assert c["B"] == pytest.approx(
        c["A"] * (c["C"] ** p / (1.0 - lam**p)) ** (1.0 / (q - p)), rel=1e-12)
    assert c["t0"] == pytest.approx(lam * 0.5, rel=1e-9)  # lam ||Y||_1, Y = exp(2)
    assert not v.witnesses


def test_tail_transfer_divergent_moment_raises():
    with pytest.raises(InfiniteMoment):
        tail_comparison(E1, parse_spec("pareto(3,1)"), HyperParams(p=1.0, q=3.0))


def test_two_sided_exp_pair_finds_the_scale():
    v = two_sided_comparison(E1, E2, FAST)
    assert v.direction == TWO_SIDED
    assert v.holds
    # Y = X/2 exactly: the certified dilation lands at 1/2
    assert v.constants["D"] == pytest.approx(0.5, rel=1e-5)
    assert v.constants["B_min"] == pytest.approx(0.5, rel=1e-9)
    assert v.constants["B_max"] == pytest.approx(0.5, rel=1e-9)


def test_two_sided_requires_both_condition_families():
    with pytest.raises(HypothesisFailed):
        two_sided_comparison(parse_spec("atomzero(0.3,exp(1))"), E2, FAST)


def test_thinning_fitted_exp_pair():
    out = thinning_equivalence(E1, E2, FAST)
    # P(Y > t)/P(X > t) = e^-t <= 1: the fitted constant is exactly 1
    assert out["C_tail"] == 1.0
    assert out["fitted"]
    assert out["keep_probability"] == 1.0
    assert out["all_hold"]
    assert out["pointwise_display_ok"]
    assert all(r["norm_ok"] and r["mean_lower_ok"] for r in out["rows"])
    assert out["forward"]["holds"]
    assert out["forward"]["A"] > 0 and out["forward"]["B"] > 0


def test_thinning_explicit_constant_builds_the_atom():
    out = thinning_equivalence(E1, E1, FAST, C_tail=2.0)
    assert not out["fitted"]
    assert out["keep_probability"] == pytest.approx(0.5, rel=1e-12)
    assert "atomzero" in out["thinned"]
    assert out["single_copy_relative_gap"] < 1e-9
    assert all(r["mean_lower_ok"] for r in out["rows"])
    assert out["all_hold"]


def test_thinning_unbounded_ratio_reported_not_crashed():
    # Y = uniform(0,2) has mass beyond uniform(0,1)'s support
    out = thinning_equivalence(uniform(0.0, 1.0), uniform(0.0, 2.0), FAST)
    assert out["C_tail"] == math.inf
    assert not out["all_hold"]
    assert out["witnesses"]


def test_thinning_rejects_sub_unit_constant():
    with pytest.raises(DomainError):
        thinning_equivalence(E1, E2, FAST, C_tail=0.5)
