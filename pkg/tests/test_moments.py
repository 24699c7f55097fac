"""Word algebra and quadrature oracles.

Every numeric target here is a closed form derived by hand:
  min of n uniforms       E = 1/(n+1),  E X^2 = 2/((n+1)(n+2))
  max of n uniforms       E = n/(n+1)
  min of k exp(1)         law exp(k), E X^r = Gamma(1+r)/k^r
  max of 2 (min of 3 U)   E = 2/4 - 1/7 = 5/14
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from minmax_hyper.distributions import exponential, parse_spec, uniform, zero_inflated
from minmax_hyper.errors import DomainError, InfiniteMoment, ParseError
from minmax_hyper.moments import (
    MAX,
    MIN,
    Word,
    alternating_words,
    clipped_moment,
    compose_cdf,
    max_moment_bounds,
    max_tail_sandwich,
    raw_moment,
    tail_cumulative,
    upper_partial_moment,
)
from minmax_hyper.rng import stream_rng


# --- word algebra -----------------------------------------------------------

def test_word_parse_shapes():
    w = Word.parse("max2.min3")
    assert w.steps == ((MAX, 2), (MIN, 3))
    assert str(w) == "max2.min3"
    assert w.total_copies == 6
    assert not w.is_identity


def test_word_identity_forms():
    for text in ("id", "identity", "", "min1", "max1.min1"):
        assert Word.parse(text).is_identity
    assert str(Word.parse("id")) == "id"


@pytest.mark.parametrize("bad", ["foo2", "max2..min3", "max-1", "min", "2max"])
def test_word_parse_rejects(bad):
    with pytest.raises(ParseError):
        Word.parse(bad)


def test_word_parse_zero_count_is_a_domain_error():
    # "max0" tokenizes fine; the count check fires in the constructor
    with pytest.raises(DomainError):
        Word.parse("max0")


def test_word_constructor_validates():
    with pytest.raises(DomainError):
        Word((("med", 2),))
    with pytest.raises(DomainError):
        Word(((MIN, 0),))


@given(st.lists(st.tuples(st.sampled_from([MIN, MAX]),
                          st.integers(min_value=1, max_value=999)),
                min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_word_roundtrips_through_text(steps):
    w = Word(tuple(steps))
    assert Word.parse(str(w)) == w


# --- composition oracles ----------------------------------------------------

def test_uniform_min_moments_closed_form():
    u = uniform(0.0, 1.0)
    for n in (1, 2, 7, 100):
        c = compose_cdf(u, Word(((MIN, n),)))
        assert raw_moment(c, 1.0) == pytest.approx(1.0 / (n + 1), rel=1e-9)
        assert raw_moment(c, 2.0) == pytest.approx(2.0 / ((n + 1) * (n + 2)), rel=1e-9)


def test_uniform_max_mean_closed_form():
    u = uniform(0.0, 1.0)
    for n in (1, 3, 50):
        c = compose_cdf(u, Word(((MAX, n),)))
        assert raw_moment(c, 1.0) == pytest.approx(n / (n + 1.0), rel=1e-9)


def test_uniform_iterated_word_golden():
    # E[max of 2 independent (min of 3 uniforms)] = 5/14
    c = compose_cdf(uniform(0.0, 1.0), Word.parse("max2.min3"))
    assert raw_moment(c, 1.0) == pytest.approx(5.0 / 14.0, rel=1e-10)


def test_exp_min_is_rate_scaled_exponential():
    e1 = exponential(1.0)
    for k in (2, 5):
        c = compose_cdf(e1, Word(((MIN, k),)))
        for r in (0.5, 1.0, 3.0):
            want = special.gamma(1.0 + r) / k**r
            assert raw_moment(c, r) == pytest.approx(want, rel=1e-9)


def test_min_composition_survives_huge_counts():
    # n = 2^30 forces tail^n through log space; the closed forms still hold
    n = 2**30
    c = compose_cdf(uniform(0.0, 1.0), Word(((MIN, n),)))
    assert raw_moment(c, 1.0) == pytest.approx(1.0 / (n + 1), rel=1e-8)
    assert raw_moment(c, 2.0) == pytest.approx(2.0 / ((n + 1.0) * (n + 2.0)), rel=1e-8)


def test_word_nesting_collapses_like_copy_counts():
    # min2 of min3 is min6 in distribution
    e1 = exponential(1.0)
    a = compose_cdf(e1, Word.parse("min2.min3"))
    b = compose_cdf(e1, Word.parse("min6"))
    t = np.linspace(0.0, 3.0, 30)
    np.testing.assert_allclose(a.tail(t), b.tail(t), rtol=1e-12)
    assert raw_moment(a, 2.0) == pytest.approx(raw_moment(b, 2.0), rel=1e-10)


def test_atom_mass_propagates_through_words():
    z = zero_inflated(0.3, exponential(1.0))
    assert compose_cdf(z, Word.parse("min2")).atom_at_zero == pytest.approx(0.51)
    assert compose_cdf(z, Word.parse("max2")).atom_at_zero == pytest.approx(0.09)
    assert compose_cdf(z, Word.parse("max2.min2")).atom_at_zero == pytest.approx(0.51**2)


def test_composed_name_mentions_the_word():
    c = compose_cdf(exponential(1.0), Word.parse("max2.min3"))
    assert "max2" in c.name and "min3" in c.name and "exp(1)" in c.name


def test_compose_tournament_monte_carlo_cross_check():
    # sampling route vs quadrature route for one nontrivial word
    spec = parse_spec("weibull(2,1)")
    word = Word.parse("min2.max3")
    want = raw_moment(compose_cdf(spec, word), 1.0)
    rng = stream_rng(42, 0)
    m = 200_000
    x = spec.sampler(rng, m * 6).reshape(m, 2, 3)
    stat = x.max(axis=2).min(axis=1)
    est, se = float(stat.mean()), float(stat.std()) / math.sqrt(m)
    assert abs(est - want) < 4 * se


# --- moment machinery -------------------------------------------------------

def test_raw_moment_oracles():
    assert raw_moment(exponential(1.0), 2.5) == pytest.approx(special.gamma(3.5), rel=1e-9)
    assert raw_moment(parse_spec("pareto(3,1)"), 2.0) == pytest.approx(3.0, rel=1e-9)
    assert raw_moment(parse_spec("halfnormal(1)"), 1.0) == pytest.approx(
        math.sqrt(2.0 / math.pi), rel=1e-9)
    assert raw_moment(parse_spec("lognormal(0,1)"), 2.0) == pytest.approx(
        math.exp(2.0), rel=1e-8)
    assert raw_moment(parse_spec("constant(2)"), 7.0) == pytest.approx(128.0, rel=1e-12)


def test_raw_moment_refuses_divergent_orders():
    with pytest.raises(InfiniteMoment):
        raw_moment(parse_spec("pareto(3,1)"), 3.0)
    with pytest.raises(InfiniteMoment):
        raw_moment(parse_spec("stablemod(1.5)"), 1.5)


def test_tail_cumulative_matches_clip_formula():
    # E(t ^ X) = 1 - e^-t for exp(1)
    table = tail_cumulative(exponential(1.0), 1.0)
    t = np.array([0.3, 1.0, 4.0])
    np.testing.assert_allclose(table.cum(t), -np.expm1(-t), rtol=1e-9)
    # E(t ^ X)^2 = int_0^t 2s e^-s ds = 2(1 - e^-t - t e^-t)
    table2 = tail_cumulative(exponential(1.0), 2.0)
    want = 2.0 * (1.0 - np.exp(-t) - t * np.exp(-t))
    np.testing.assert_allclose(table2.cum(t), want, rtol=1e-9)


def test_clipped_moment_oracle():
    # s = 0, scale = 1 reduces to E(t ^ X)^r
    got = clipped_moment(exponential(1.0), 0.0, 2.0, 1.0, 1.0)
    assert got == pytest.approx(-math.expm1(-2.0), rel=1e-9)
    # degenerate clip window
    assert clipped_moment(exponential(1.0), 2.0, 2.0, 1.0, 3.0) == pytest.approx(8.0)
    with pytest.raises(DomainError):
        clipped_moment(exponential(1.0), 2.0, 1.0, 1.0, 1.0)


def test_upper_partial_moment_oracle():
    # E[X^2; X > a] = (a^2 + 2a + 2) e^-a for exp(1)
    for a in (0.5, 1.0, 3.0):
        want = (a * a + 2 * a + 2) * math.exp(-a)
        assert upper_partial_moment(exponential(1.0), 2.0, a) == pytest.approx(
            want, rel=1e-9)


def test_max_moment_bounds_sandwich_the_true_moment():
    spec = exponential(1.0)
    for n in (1, 10, 100):
        lo, hi, b = max_moment_bounds(spec, n, 2.0)
        assert lo == pytest.approx(hi / 2.0, rel=1e-12)
        truth = raw_moment(compose_cdf(spec, Word(((MAX, n),))), 2.0)
        assert lo <= truth * (1 + 1e-9)
        assert truth <= hi * (1 + 1e-9)
        assert b == pytest.approx(float(spec.quantile(1.0 - 1.0 / n)), rel=1e-9)


def test_max_moment_bounds_divergent_order_raises():
    with pytest.raises(InfiniteMoment):
        max_moment_bounds(parse_spec("pareto(3,1)"), 10, 3.0)


def test_max_tail_sandwich_uniform_golden():
    lo, exact, hi = max_tail_sandwich(uniform(0.0, 1.0), 0.5, 3)
    # nu = 3 * 0.5 = 1.5: lower 1.5/2.5, exact 1 - 0.5^3, upper min(1.5, 1)
    assert lo == pytest.approx(0.6, rel=1e-12)
    assert exact == pytest.approx(0.875, rel=1e-12)
    assert hi == pytest.approx(1.0, rel=1e-12)


@given(st.integers(min_value=1, max_value=10**6),
       st.floats(min_value=0.01, max_value=5.0,
                 allow_nan=False, allow_infinity=False))
@settings(max_examples=80, deadline=None)
def test_max_tail_sandwich_always_brackets(n, t):
    lo, exact, hi = max_tail_sandwich(exponential(1.0), t, n)
    assert lo <= exact <= hi
    assert exact == pytest.approx(-math.expm1(n * math.log1p(-math.exp(-t))),
                                  rel=1e-10)


def test_alternating_words_enumeration():
    words = alternating_words(2, (2, 4, 8))
    assert len(words) == 90  # 9 one-pair words + 81 two-pair words
    assert len({str(w) for w in words}) == 90
    for w in words:
        ops = [op for op, _ in w.steps]
        assert ops == [MAX, MIN] * (len(ops) // 2)


def test_min_mean_decreases_in_copy_count():
    u = uniform(0.0, 1.0)
    means = [raw_moment(compose_cdf(u, Word(((MIN, n),))), 1.0)
             for n in (1, 2, 4, 8, 16)]
    assert all(a > b for a, b in zip(means, means[1:]))
