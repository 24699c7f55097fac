"""Deterministic stream-keyed sampling.

Every Monte Carlo routine draws from counter-based Philox streams keyed by
(seed, stream). Work is pre-split into fixed-size batches, one stream per
batch, and partial results are reduced in submission order, so results are
bit-identical no matter how many worker threads execute the batches.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

_U64 = (1 << 64) - 1

DEFAULT_BATCH = 1 << 18


def stream_rng(seed: int, stream: int) -> np.random.Generator:
    """Generator for one (seed, stream) pair; streams never overlap."""
    key = np.array([seed & _U64, stream & _U64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def plan_batches(total: int, batch_size: int = DEFAULT_BATCH) -> list[int]:
    if total < 0:
        raise ValueError("total must be nonnegative")
    counts = [batch_size] * (total // batch_size)
    if total % batch_size:
        counts.append(total % batch_size)
    return counts


def run_batches(
    worker: Callable[[np.random.Generator, int], tuple],
    seed: int,
    base_stream: int,
    total: int,
    threads: int = 1,
    batch_size: int = DEFAULT_BATCH,
) -> tuple:
    """Run ``worker(rng, count)`` over pre-planned batches and sum the results.

    ``worker`` must return a tuple of ndarrays/floats that are additive across
    batches (counts, partial sums, ...). The reduction order is the batch
    order, never the completion order.
    """
    counts = plan_batches(total, batch_size)
    jobs = [(stream_rng(seed, base_stream + i), c) for i, c in enumerate(counts)]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda j: worker(j[0], j[1]), jobs))
    else:
        parts = [worker(rng, c) for rng, c in jobs]
    out = list(parts[0])
    for part in parts[1:]:
        for k, value in enumerate(part):
            out[k] = out[k] + value
    return tuple(out)


def symmetric_stable(rng: np.random.Generator, alpha: float, size) -> np.ndarray:
    """Standard symmetric alpha-stable draws, char. function exp(-|t|^alpha).

    Chambers-Mallows-Stuck form; alpha = 2 reduces to N(0, 2) and alpha = 1
    to the standard Cauchy.
    """
    if not 0.0 < alpha <= 2.0:
        raise ValueError("alpha must lie in (0, 2]")
    u = rng.uniform(-np.pi / 2.0, np.pi / 2.0, size=size)
    w = rng.exponential(1.0, size=size)
    if alpha == 1.0:
        return np.tan(u)
    x = np.sin(alpha * u) / np.cos(u) ** (1.0 / alpha)
    x *= (np.cos((1.0 - alpha) * u) / w) ** ((1.0 - alpha) / alpha)
    return x


def positive_stable(rng: np.random.Generator, alpha: float, size) -> np.ndarray:
    """Totally skewed positive alpha-stable draws with E exp(-uA) = exp(-u^alpha).

    Kanter's representation, valid for 0 < alpha < 1.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("one-sided index must lie in (0, 1)")
    theta = rng.uniform(0.0, np.pi, size=size)
    w = rng.exponential(1.0, size=size)
    a = (
        np.sin(alpha * theta) ** alpha
        * np.sin((1.0 - alpha) * theta) ** (1.0 - alpha)
        / np.sin(theta)
    ) ** (1.0 / (1.0 - alpha))
    return (a / w) ** ((1.0 - alpha) / alpha)
