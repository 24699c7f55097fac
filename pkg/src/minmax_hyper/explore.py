"""Numeric exploration of open questions: estimates with intervals, never
pass/fail assertions.

Two probes live here. The first estimates the best constant in the
min-hypercontractivity display ||min over n replicates||_q <=
C ||min over n replicates||_p for the norm of a Gaussian vector, next to
two closed-form candidates: the literal gamma-ratio candidate
Gamma(q)^(1/q) / Gamma(p)^(1/p) and the shifted form
Gamma(1+q)^(1/q) / Gamma(1+p)^(1/p) that a linear small-ball limit
produces (the minimum of n draws with a linear small-ball profile is
asymptotically exponential, whose r-th moment is Gamma(1+r)). The two
candidates disagree; both are reported and neither is asserted.

The second sweeps the dilation factor in the product-correlation display
mu(scale * intersection) >= prod mu(A_i) and reports the smallest grid
scale at which the inequality clears its interval.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from .errors import DomainError
from .gauss_stable.checks import _batch_for, _check_budget
from .gauss_stable.laws import GAUSSIAN, VectorLaw, gaussian, sample
from .rng import run_batches


def min_constant_candidates(p: float, q: float) -> dict:
    """Closed-form candidates for the best min-hypercontractive constant."""
    if not (0.0 < p < q and math.isfinite(q)):
        raise DomainError(f"need 0 < p < q, got p={p!r}, q={q!r}")
    literal = math.exp(gammaln(q) / q - gammaln(p) / p)
    shifted = math.exp(gammaln(1.0 + q) / q - gammaln(1.0 + p) / p)
    return {"gamma_ratio": literal, "gamma_shift_ratio": shifted}


def min_constant_probe(sigma, norm_set, p: float = 1.0, q: float = 2.0,
                       n_grid=None, n_samples: int = 10**5, seed: int = 0,
                       threads: int = 1) -> dict:
    """Empirical sup over n of ||min_n gauge(G)||_q / ||min_n gauge(G)||_p.

    Exploration only: the report carries the profile, its sup, and the two
    candidate constants, with no verdict.
    """
    law = sigma if isinstance(sigma, VectorLaw) else gaussian(sigma)
    if law.kind != GAUSSIAN:
        raise DomainError("the probe is stated for GAUSSIAN laws")
    if norm_set.dim != law.dim:
        raise DomainError("set dimension must match the law")
    if not (0.0 < p < q and math.isfinite(q)):
        raise DomainError(f"need 0 < p < q, got p={p!r}, q={q!r}")
    if n_grid is None:
        n_grid = (1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024)
    n_grid = [int(v) for v in n_grid]
    if any(v < 1 for v in n_grid):
        raise DomainError("tournament sizes must be >= 1")
    budget = _check_budget(n_samples)

    rows = []
    for idx, n in enumerate(n_grid):
        reps = max(64, budget // n)

        def worker(rng, m, n=n):
            g = norm_set.gauge(sample(law, m * n, rng)).reshape(m, n).min(axis=1)
            gq, gp = g**q, g**p
            return (gq.sum(), (gq * gq).sum(), gp.sum(), (gp * gp).sum(),
                    (gq * gp).sum(), np.int64(m))

        sq, sq2, sp, sp2, spq, m = run_batches(
            worker, seed, idx * 10_000, reps, threads=threads,
            batch_size=max(16, _batch_for(law.dim) // n))
        m = int(m)
        a, b = sq / m, sp / m
        va = max(sq2 / m - a * a, 0.0) / m
        vb = max(sp2 / m - b * b, 0.0) / m
        cab = (spq / m - a * b) / m
        ratio = a ** (1.0 / q) / b ** (1.0 / p) if a > 0 and b > 0 else float("nan")
        # delta method on (a, b) -> a^(1/q) / b^(1/p)
        if a > 0 and b > 0:
            da, db = ratio / (q * a), -ratio / (p * b)
            se = math.sqrt(max(da * da * va + db * db * vb + 2 * da * db * cab, 0.0))
        else:
            se = float("nan")
        rows.append({"n": n, "replicates": m, "ratio": ratio, "stderr": se})
    sup = max(rows, key=lambda r: r["ratio"])
    return {
        "law": law.name, "set": norm_set.name, "p": p, "q": q,
        "rows": rows, "sup_ratio": sup["ratio"], "sup_at_n": sup["n"],
        "candidates": min_constant_candidates(p, q),
        "asserted": False,
        "notes": ["open question: estimates reported, never asserted"],
        "seed": seed,
    }


def dilation_sweep(law: VectorLaw, sets, scale_grid=None,
                   n_samples: int = 10**6, seed: int = 0,
                   threads: int = 1) -> dict:
    """Smallest dilation of the intersection whose mass clears the product
    of the marginals, over a grid of scales. Exploration only."""
    if law.kind != GAUSSIAN:
        raise DomainError("the sweep is stated for GAUSSIAN laws")
    sets = list(sets)
    if not 2 <= len(sets) <= 8:
        raise DomainError("between 2 and 8 sets")
    if any(c.dim != law.dim for c in sets):
        raise DomainError("set dimensions must match the law")
    if scale_grid is None:
        scale_grid = np.linspace(1.0, 2.0, 11)
    scales = np.asarray(scale_grid, dtype=float)
    if np.any(scales < 1.0) or not np.all(np.isfinite(scales)):
        raise DomainError("scales must be finite and >= 1")
    n = _check_budget(n_samples)
    l = len(sets)
    k = scales.size

    def worker(rng, m):
        x = sample(law, m, rng)
        g = np.stack([c.gauge(x) for c in sets], axis=1)
        ind = np.empty((m, k + l), dtype=np.float64)
        gmax = g.max(axis=1)
        for j, s in enumerate(scales):
            ind[:, j] = gmax <= s
        ind[:, k:] = g <= 1.0
        return (ind.sum(axis=0), ind.T @ ind)

    counts, joints = run_batches(worker, seed, 0, n, threads=threads,
                                 batch_size=_batch_for(law.dim, l + k))
    p = counts / n
    cov = joints / n - np.outer(p, p)
    prod = float(np.prod(p[k:]))
    rows = []
    first = None
    for j, s in enumerate(scales):
        grad = np.zeros(k + l)
        grad[j] = 1.0
        for i in range(k, k + l):
            grad[i] = -prod / p[i] if p[i] > 0 else 0.0
        var = float(grad @ cov @ grad) / n
        se = math.sqrt(max(var, 0.0))
        diff = float(p[j]) - prod
        clears = bool(diff >= 4.0 * se)
        rows.append({"scale": float(s), "lhs": float(p[j]), "diff": diff,
                     "stderr": se, "clears_interval": clears})
        if first is None and clears:
            first = float(s)
    return {
        "law": law.name, "sets": [c.name for c in sets],
        "rhs_product": prod, "rows": rows,
        "first_clearing_scale": first,
        "asserted": False,
        "notes": ["open question: estimates reported, never asserted"],
        "samples": n, "seed": seed,
    }
