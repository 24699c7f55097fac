"""Moments of iterated minima/maxima via exact CDF composition.

A word like ``max2.min3`` denotes the statistic built right-to-left: draw
i.i.d. copies, take minima of blocks of 3, then the maximum of 2 such
minima. Composition acts on the law itself, in log space, so no sampling
error enters: (MIN, k) maps the tail u to u^k and (MAX, n) maps the CDF F
to F^n. Moments are then tail integrals

    E W^r = r * integral_0^inf t^(r-1) P(W > t) dt

evaluated by adaptive quadrature on edges placed at quantiles of the
composed law, with a certified geometric extension for unbounded tails.
"""
from __future__ import annotations

import itertools
import math
import re
import warnings
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .distributions import DistributionSpec, log1mexp
from .errors import (
    DomainError,
    InfiniteMoment,
    NonConvergent,
    ParseError,
    QuantileAtAtom,
)
from .quadrature import CumulativeIntegral, integrate_adaptive

MIN = "min"
MAX = "max"

_WORD_STEP = re.compile(r"^(min|max)([0-9]+)$")


@dataclass(frozen=True)
class Word:
    """Ordered (op, count) steps; the last step acts first on the base law."""

    steps: tuple = ()

    def __post_init__(self):
        for op, count in self.steps:
            if op not in (MIN, MAX):
                raise DomainError(f"word op must be 'min' or 'max', got {op!r}")
            if not isinstance(count, int) or count < 1:
                raise DomainError(f"word counts must be integers >= 1, got {count!r}")

    @classmethod
    def parse(cls, text: str) -> "Word":
        text = (text or "").strip()
        if text in ("", "id", "identity"):
            return cls(())
        steps = []
        pos = 0
        for piece in text.split("."):
            m = _WORD_STEP.match(piece)
            if m is None:
                raise ParseError(f"bad word step {piece!r}", position=pos)
            steps.append((m.group(1), int(m.group(2))))
            pos += len(piece) + 1
        return cls(tuple(steps))

    @property
    def is_identity(self) -> bool:
        return all(count == 1 for _, count in self.steps)

    @property
    def total_copies(self) -> int:
        out = 1
        for _, count in self.steps:
            out *= count
        return out

    def __str__(self):
        if not self.steps:
            return "id"
        return ".".join(f"{op}{count}" for op, count in self.steps)


@dataclass(frozen=True)
class MomentQuery:
    spec: DistributionSpec
    word: Word = Word(())
    r: float = 1.0
    rel_tol: float = 1e-9


def _apply_min(spec: DistributionSpec, k: int) -> DistributionSpec:
    base_lt = spec.log_tail
    base_q = spec.quantile
    base_tq = spec.tail_quantile
    base_sample = spec.sampler
    base_fin = spec.q_moment_finite
    a0 = spec.atom_at_zero

    def log_tail(t):
        return k * base_lt(t)

    def tail(t):
        return np.exp(log_tail(t))

    def cdf(t):
        return -np.expm1(log_tail(t))

    def quantile(u):
        u = np.asarray(u, dtype=float)
        return base_q(-np.expm1(np.log1p(-u) / k))

    def tail_quantile(eps):
        eps = np.asarray(eps, dtype=float)
        return base_tq(eps ** (1.0 / k))

    def sampler(rng, size=None):
        n_out = int(np.prod(size)) if size is not None else 1
        draws = base_sample(rng, n_out * k)
        out = np.asarray(draws, dtype=float).reshape(n_out, k).min(axis=1)
        if size is None:
            return out[0]
        return out.reshape(size)

    return DistributionSpec(
        name=f"min{k}({spec.name})",
        tail=tail,
        cdf=cdf,
        log_tail=log_tail,
        quantile=quantile,
        tail_quantile=tail_quantile,
        sampler=sampler,
        q_moment_finite=lambda r: base_fin(r / k),
        atom_at_zero=1.0 if a0 >= 1.0
        else (-math.expm1(k * math.log1p(-a0)) if a0 > 0 else 0.0),
    )


def _apply_max(spec: DistributionSpec, n: int) -> DistributionSpec:
    base_lt = spec.log_tail
    base_q = spec.quantile
    base_tq = spec.tail_quantile
    base_sample = spec.sampler
    base_fin = spec.q_moment_finite
    a0 = spec.atom_at_zero

    def log_cdf_base(t):
        return log1mexp(base_lt(t))

    def log_tail(t):
        return log1mexp(n * log_cdf_base(t))

    def tail(t):
        return -np.expm1(n * log_cdf_base(t))

    def cdf(t):
        return np.exp(n * log_cdf_base(t))

    def quantile(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore"):
            return base_q(np.exp(np.log(u) / n))

    def tail_quantile(eps):
        eps = np.asarray(eps, dtype=float)
        return base_tq(-np.expm1(np.log1p(-eps) / n))

    def sampler(rng, size=None):
        n_out = int(np.prod(size)) if size is not None else 1
        draws = base_sample(rng, n_out * n)
        out = np.asarray(draws, dtype=float).reshape(n_out, n).max(axis=1)
        if size is None:
            return out[0]
        return out.reshape(size)

    return DistributionSpec(
        name=f"max{n}({spec.name})",
        tail=tail,
        cdf=cdf,
        log_tail=log_tail,
        quantile=quantile,
        tail_quantile=tail_quantile,
        sampler=sampler,
        q_moment_finite=base_fin,
        atom_at_zero=a0**n if a0 > 0 else 0.0,
    )


def compose_cdf(spec: DistributionSpec, word: Word) -> DistributionSpec:
    """Law of the iterated statistic; the word's last step acts first."""
    out = spec
    for op, count in reversed(word.steps):
        if count == 1:
            continue
        out = _apply_min(out, count) if op == MIN else _apply_max(out, count)
    return out


# --- tail-integral machinery -------------------------------------------------

# quantile / tail levels where initial panel edges sit; the ladder extends
# unbounded supports until increments certify the remainder
_CORE_LEVELS = (1e-12, 1e-9, 1e-6, 1e-4, 1e-3, 0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9)
_CORE_TAILS = (0.05, 0.01, 1e-3, 1e-4, 1e-6, 1e-9)
_LADDER = tuple(10.0 ** (-e) for e in range(12, 292, 3))
_RATIO_CAP = 0.9  # extension increments must decay at least this fast


def _tail_integrand(spec: DistributionSpec, r: float):
    rm1 = r - 1.0

    def f(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            lt = spec.log_tail(t)
            if rm1 == 0.0:
                out = np.exp(lt)
            else:
                out = r * np.exp(rm1 * np.log(t) + lt)
        return np.where(np.isfinite(out), out, 0.0)

    return f


def _core_edges(spec: DistributionSpec):
    qs = np.asarray(spec.quantile(np.array(_CORE_LEVELS)), dtype=float)
    ts = np.asarray(spec.tail_quantile(np.array(_CORE_TAILS)), dtype=float)
    sup = float(spec.tail_quantile(0.0))
    pool = [np.array([0.0]), qs, ts]
    live = 1.0 - spec.atom_at_zero
    if 0.0 < live < 1.0:
        # an atom at zero shrinks the live tail below the absolute ladder
        # levels; rescale so the edges still straddle the surviving mass
        scaled = np.asarray(
            spec.tail_quantile(np.array(_CORE_TAILS) * live), dtype=float
        )
        pool.append(scaled[np.isfinite(scaled)])
    if math.isfinite(sup):
        # bounded support: bridge the gap to the top with ladder levels so a
        # sharply decaying composed tail never leaves one unresolvable panel
        levels = np.array(_LADDER)
        if 0.0 < live < 1.0:
            levels = np.concatenate([levels, levels * live])
        bridge = np.asarray(spec.tail_quantile(levels), dtype=float)
        pool.append(bridge[np.isfinite(bridge)])
        pool.append(np.array([sup]))
    edges = np.unique(np.concatenate(pool))
    edges = edges[np.isfinite(edges) & (edges >= 0.0)]
    return edges, math.isfinite(sup)


def _extension_edges(spec: DistributionSpec, start: float):
    """Ladder of tail-level points past `start`, strictly increasing."""
    pts = np.asarray(spec.tail_quantile(np.array(_LADDER)), dtype=float)
    out = []
    last = start
    for p in pts:
        if math.isfinite(p) and p > last * (1 + 1e-12) and p > last:
            out.append(float(p))
            last = p
    return out


def raw_moment(spec: DistributionSpec, r: float, rel_tol: float = 1e-9) -> float:
    """E X^r by tail integration, certified to ~rel_tol or NonConvergent."""
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"moment exponent must be positive, got {r!r}")
    if not 0 < rel_tol <= 1e-3:
        raise DomainError(f"rel_tol must lie in (0, 1e-3], got {rel_tol!r}")
    if not spec.q_moment_finite(r):
        raise InfiniteMoment(f"{spec.name} declares E X^{r} infinite")

    f = _tail_integrand(spec, r)
    edges, bounded = _core_edges(spec)
    if edges.size < 2:
        return float(edges[0]) ** r if edges.size else 0.0
    res = integrate_adaptive(f, edges, rel_tol=0.5 * rel_tol)
    total = res.value
    if bounded:
        return total

    last = float(edges[-1])
    ext = _extension_edges(spec, last)
    prev_inc = None
    certified = not np.isfinite(spec.log_tail(last)) or total == 0.0
    floor = 0.002 * rel_tol * max(total, 1e-300)
    for nxt in ext:
        inc = integrate_adaptive(f, [last, nxt], rel_tol=1e-8, abs_floor=floor).value
        total += inc
        last = nxt
        if inc == 0.0:
            certified = True
            break
        if prev_inc is not None and prev_inc > 0.0:
            rho = inc / prev_inc
            if rho < _RATIO_CAP and inc * rho / (1.0 - rho) <= 0.25 * rel_tol * total:
                certified = True
                break
        prev_inc = inc
    if not certified:
        raise NonConvergent(
            f"tail integral of {spec.name} at r={r} does not decay fast "
            f"enough to certify rel_tol={rel_tol:g} (last increment {prev_inc!r})"
        )
    return total


def moment_norm(query: MomentQuery) -> float:
    """‖W‖_r = (E W^r)^(1/r) for the word-composed statistic."""
    spec = compose_cdf(query.spec, query.word)
    value = raw_moment(spec, query.r, query.rel_tol)
    return value ** (1.0 / query.r)


@lru_cache(maxsize=128)
def tail_cumulative(spec: DistributionSpec, r: float, rel_tol: float = 1e-10):
    """CumulativeIntegral of r·u^(r-1)·tail(u): x ↦ E(x ∧ X)^r.

    The table spans [0, T] with T at composed tail level ~1e-291 (or the
    support top); `total` is the integral over the covered span only, which
    for the built-ins with comfortably finite r-moments equals E X^r to
    ~1e-10. Cached per (spec, r, rel_tol).
    """
    f = _tail_integrand(spec, r)
    edges, bounded = _core_edges(spec)
    all_edges = list(edges)
    if not bounded and all_edges:
        all_edges.extend(_extension_edges(spec, all_edges[-1]))
    return CumulativeIntegral(f, all_edges, rel_tol=rel_tol)


def clipped_moment(spec: DistributionSpec, s: float, t: float, scale: float, r: float) -> float:
    """E(s ∨ scale·X ∧ t)^r = s^r + scale^r·(K_r(t/scale) − K_r(s/scale)).

    K_r(x) = integral_0^x r u^(r-1) P(X > u) du; the identity follows from
    the layer-cake formula applied to the clipped statistic.
    """
    if not (0 <= s <= t):
        raise DomainError(f"clip bounds need 0 <= s <= t, got ({s!r}, {t!r})")
    if not math.isfinite(t):
        raise DomainError("upper clip t must be finite")
    if not (scale > 0 and math.isfinite(scale)):
        raise DomainError(f"scale must be positive and finite, got {scale!r}")
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"exponent must be positive, got {r!r}")
    if s == t:
        return t**r
    table = tail_cumulative(spec, r)
    ks, kt = table.cum(np.array([s / scale, t / scale]))
    return s**r + scale**r * max(kt - ks, 0.0)


def upper_partial_moment(spec: DistributionSpec, r: float, a: float, table=None) -> float:
    """E[X^r; X > a] = a^r·P(X > a) + integral_a^inf r u^(r-1) P(X > u) du."""
    if table is None:
        table = tail_cumulative(spec, r)
    return float(a) ** r * float(spec.tail(a)) + float(table.upper(a))


def max_moment_bounds(spec: DistributionSpec, N: int, r: float):
    """Sandwich for E max(X_1..X_N)^r around the 1/N tail quantile b_N.

    upper = b_N^r + N·integral_{b_N}^inf r u^(r-1) tail(u) du; lower = upper/2.
    The upper bound uses P(M_N > t) ≤ min(1, N·tail(t)); the lower uses
    1 − (1−u)^N ≥ (1 − 1/e)·min(1, N·u) ≥ min(1, N·u)/2.
    """
    if N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    if not spec.q_moment_finite(r):
        raise InfiniteMoment(f"{spec.name} declares E X^{r} infinite")
    if N == 1:
        b = float(spec.quantile(0.0))
    else:
        b = float(spec.tail_quantile(1.0 / N))
    level = 1.0 / N
    tail_b = float(spec.tail(b))
    if tail_b < level * (1 - 1e-9) and b > 0:
        just_left = float(spec.tail(b * (1 - 1e-12)))
        if just_left > level * (1 + 1e-9):
            warnings.warn(
                f"b_N={b:g} for {spec.name} sits on an atom: tail jumps "
                f"across 1/N={level:g}",
                QuantileAtAtom,
            )
    # the sandwich is a factor 2 wide; 1e-9 keeps power tails with r just
    # under the finiteness boundary (slowly convergent integrals) in reach
    table = tail_cumulative(spec, r, rel_tol=1e-9)
    upper = b**r + N * float(table.upper(b))
    return 0.5 * upper, upper, b


def max_tail_sandwich(spec: DistributionSpec, t: float, n: int):
    """(nu/(1+nu), 1−(1−u)^n, min(nu, 1)) with u = P(X > t)."""
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t!r}")
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    u = float(spec.tail(t))
    nu = n * u
    lower = nu / (1.0 + nu)
    mid = -math.expm1(n * math.log1p(-u)) if u < 1.0 else 1.0
    upper = min(nu, 1.0)
    slop = 1e-12
    if not (lower <= mid + slop and mid <= upper + slop):
        raise AssertionError(
            f"tail sandwich ordering violated: {lower} <= {mid} <= {upper}"
        )
    return lower, mid, upper


def alternating_words(max_pairs: int = 2, counts=(2, 4, 8)):
    """All words (max n1).(min k1)...(max nl).(min kl) with l ≤ max_pairs.

    Counts range over `counts` per slot. One pair gives len(counts)^2 words,
    two pairs len(counts)^4; with the default counts that is 9 + 81 = 90.
    """
    out = []
    for pairs in range(1, max_pairs + 1):
        for combo in itertools.product(counts, repeat=2 * pairs):
            steps = []
            for i in range(pairs):
                steps.append((MAX, int(combo[2 * i])))
                steps.append((MIN, int(combo[2 * i + 1])))
            out.append(Word(tuple(steps)))
    return out
