"""Determinism of the batch plan and the stable samplers."""
import math

import numpy as np
import pytest

from minmax_hyper.rng import (
    DEFAULT_BATCH,
    plan_batches,
    positive_stable,
    run_batches,
    stream_rng,
    symmetric_stable,
)


def test_plan_batches_partitions_the_total():
    assert plan_batches(10, 4) == [4, 4, 2]
    assert plan_batches(8, 4) == [4, 4]
    assert plan_batches(3) == [3]
    assert sum(plan_batches(10**6)) == 10**6


def test_stream_rng_is_keyed_not_sequential():
    a = stream_rng(1, 0).random(4)
    b = stream_rng(1, 1).random(4)
    c = stream_rng(1, 0).random(4)
    assert not np.allclose(a, b)
    np.testing.assert_array_equal(a, c)


def test_run_batches_thread_count_never_changes_the_result():
    def worker(rng, m):
        x = rng.random(m)
        return (x.sum(), (x * x).sum(), np.int64(m))

    r1 = run_batches(worker, seed=5, base_stream=0, total=100_000,
                     threads=1, batch_size=1 << 12)
    r4 = run_batches(worker, seed=5, base_stream=0, total=100_000,
                     threads=4, batch_size=1 << 12)
    assert r1 == r4  # bit identical, not just close


def test_run_batches_list_results_concatenate_in_order():
    def worker(rng, m):
        return ([float(rng.random())],)

    (vals,) = run_batches(worker, seed=9, base_stream=0, total=5 * (1 << 12),
                          threads=3, batch_size=1 << 12)
    expect = [float(stream_rng(9, i).random()) for i in range(5)]
    assert vals == expect


def test_symmetric_stable_alpha2_is_gaussian():
    rng = stream_rng(11, 0)
    x = symmetric_stable(rng, 2.0, 400_000)
    # S(2) = N(0, 2)
    assert float(np.var(x)) == pytest.approx(2.0, rel=0.02)
    assert float(np.mean(x)) == pytest.approx(0.0, abs=0.02)


def test_symmetric_stable_alpha1_is_cauchy():
    rng = stream_rng(12, 0)
    x = symmetric_stable(rng, 1.0, 400_000)
    # standard Cauchy quartiles at -1 and 1
    q1, q3 = np.quantile(x, [0.25, 0.75])
    assert q1 == pytest.approx(-1.0, abs=0.02)
    assert q3 == pytest.approx(1.0, abs=0.02)


@pytest.mark.parametrize("alpha", [0.4, 0.7])
def test_positive_stable_laplace_transform(alpha):
    # E exp(-u A) = exp(-u^alpha); check at u = 1 and u = 2
    rng = stream_rng(13, 0)
    a = positive_stable(rng, alpha, 400_000)
    assert np.all(a > 0.0)
    for u in (1.0, 2.0):
        est = float(np.mean(np.exp(-u * a)))
        se = float(np.std(np.exp(-u * a))) / math.sqrt(a.size)
        assert abs(est - math.exp(-(u**alpha))) < 5 * se + 1e-4


def test_default_batch_is_a_power_of_two():
    assert DEFAULT_BATCH & (DEFAULT_BATCH - 1) == 0
