"""Hypercontractivity checkers for iterated minima and maxima.

Two families of equivalent conditions are verified on finite grids:

* the min side ties ``sup_n ||m_n||_q / ||m_n||_p`` to the behaviour of the
  CDF near 0 (ratios P(X <= tau t)/P(X <= t)) and to a clipped-moment
  inequality E(t ^ sigma X)^q <= E(t ^ X)^p in the corresponding norms;
* the max side ties ``sup_n ||M_n||_q / ||M_n||_p`` to truncated upper
  moments E X^q 1{X>t} and tail ratios D^q P(X>Dt)/P(X>t), and to the same
  clip inequality with v in place of ^.

Every verdict is grid-certified: the searched constant satisfies its
inequality at every grid point (plus the analytic t -> 0 / t -> inf norm
constraints), and nothing is claimed between grid points. Searches are
monotone bisections, so reported constants are reproducible to the stated
bisection tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .distributions import DistributionSpec
from .errors import (
    DomainError,
    GridTooCoarse,
    InfiniteMoment,
    NonConvergent,
    NotSubregular,
)
from .moments import (
    MAX,
    MIN,
    Word,
    alternating_words,
    compose_cdf,
    raw_moment,
    tail_cumulative,
)
from .rng import run_batches, stream_rng

DEFAULT_N_GRID = tuple(2**j for j in range(31))
MIN_EPS_LADDER = (0.5, 0.1, 0.01)
MAX_EPS_LADDER = (0.5, 0.1)
_SIGMA_FLOOR = 1e-12
_TAU_FLOOR = 1e-12
_BISECT_REL = 1e-6
_NORM_SLOP = 1e-9


@dataclass(frozen=True)
class HyperParams:
    """Exponent pair, grids and tolerances shared by all checkers."""

    p: float = 1.0
    q: float = 2.0
    n_grid: tuple = DEFAULT_N_GRID
    t_grid_size: int = 400
    rel_tol: float = 1e-8
    rho: float = 0.5
    moment_rel_tol: float = 1e-9

    def __post_init__(self):
        if not (0 < self.p < self.q < math.inf):
            raise DomainError(f"need 0 < p < q, got p={self.p!r}, q={self.q!r}")
        grid = tuple(int(n) for n in self.n_grid)
        if not grid or any(n < 1 for n in grid) or list(grid) != sorted(set(grid)):
            raise DomainError("n_grid must be strictly increasing positive integers")
        object.__setattr__(self, "n_grid", grid)
        if self.t_grid_size < 8:
            raise DomainError("t_grid_size too small to certify anything")
        if not (0 < self.rel_tol <= 1e-3) or not (0 < self.moment_rel_tol <= 1e-3):
            raise DomainError("tolerances must lie in (0, 1e-3]")
        if not (0 < self.rho):
            raise DomainError("rho must be positive")


@dataclass(frozen=True)
class RatioProfile:
    """Per-n norm ratios for one composition kind."""

    kind: str
    entries: tuple  # (n, norm_q, norm_p, ratio)
    skipped: tuple  # (n, reason)

    @property
    def constant(self) -> float:
        if not self.entries:
            return 1.0
        return max(e[3] for e in self.entries)

    @property
    def argmax_n(self) -> int:
        if not self.entries:
            return 1
        return max(self.entries, key=lambda e: e[3])[0]


@dataclass(frozen=True)
class HyperReport:
    kind: str
    C_empirical: float
    C_argmax_n: int
    sigma: float | None
    condition_verdicts: dict
    witnesses: tuple
    ratios: tuple
    skipped_n: tuple
    notes: tuple = ()

    @property
    def all_hold(self) -> bool:
        return all(v["verdict"] == "holds" for v in self.condition_verdicts.values())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "C_empirical": self.C_empirical,
            "C_argmax_n": self.C_argmax_n,
            "sigma": self.sigma,
            "conditions": self.condition_verdicts,
            "witnesses": list(self.witnesses),
            "ratios": [
                {"n": n, "norm_q": a, "norm_p": b, "ratio": r}
                for (n, a, b, r) in self.ratios
            ],
            "skipped_n": [{"n": n, "reason": why} for (n, why) in self.skipped_n],
            "notes": list(self.notes),
        }


# --- closed-form constants ---------------------------------------------------


def moment_truncation_scale(C: float, p: float, q: float) -> float:
    """Scale alpha = 2^(1/(q-p)) C^(q/(q-p)): clipping at alpha||W||_p costs
    at most half the q-th moment of a (p,q)-hypercontractive W."""
    _check_cpq(C, p, q)
    return 2.0 ** (1.0 / (q - p)) * C ** (q / (q - p))


def paley_zygmund_lower(C: float, p: float, q: float, lam: float) -> float:
    """Lower bound ((1-lam^p) C^-p)^(q/(q-p)) for P(W > lam ||W||_p)."""
    _check_cpq(C, p, q)
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam!r}")
    return ((1.0 - lam**p) * C ** (-p)) ** (q / (q - p))


def min_doubling_constant(C: float, p: float, q: float) -> float:
    """K = 2^((2q-p)/(p(q-p))) C^(q/(q-p)): ||m_n||_p <= K ||m_2n||_p."""
    _check_cpq(C, p, q)
    return 2.0 ** ((2 * q - p) / (p * (q - p))) * C ** (q / (q - p))


def small_ball_rate(b: float) -> float:
    """R(b) = 3 b^-1 (1-b)^-1/2, the small-ball regularity rate constant."""
    if not 0.0 < b < 1.0:
        raise DomainError(f"b must lie in (0, 1), got {b!r}")
    return 3.0 / (b * math.sqrt(1.0 - b))


def integral_rate_constants(r: float):
    """(delta, R, beta) from the integral small-ball rate r in (0, 1):
    delta = 1 - sqrt(r), R = r^-1/2, beta = log r / (2 log delta)."""
    if not 0.0 < r < 1.0:
        raise DomainError(f"rate must lie in (0, 1), got {r!r}")
    delta = 1.0 - math.sqrt(r)
    R = r**-0.5
    beta = math.log(r) / (2.0 * math.log(delta))
    return delta, R, beta


def _check_cpq(C, p, q):
    if not (0 < p < q < math.inf):
        raise DomainError(f"need 0 < p < q, got p={p!r}, q={q!r}")
    if not C >= 1.0:
        raise DomainError(f"hyper constant must be >= 1, got {C!r}")


# elementary inequality predicates used by the property suite; each returns
# (hypothesis, conclusion) so tests can assert the implication
def complement_ratio_implication(x, y, beta, p, q):
    """hypothesis: x >= beta^(p/(q-p)) and y^(1/q) <= x^(1/p);
    conclusion: 1-x <= (p/(q beta)) (1-y). Valid for 0<x,y<1, 0<beta<1."""
    hyp = x >= beta ** (p / (q - p)) and y ** (1.0 / q) <= x ** (1.0 / p)
    concl = (1.0 - x) <= (p / (q * beta)) * (1.0 - y) + 1e-15
    return hyp, concl


def complement_power_implication(x, y, p, q):
    """hypothesis: (p/q) x >= y; conclusion: (1-x)^(1/q) <= (1-y)^(1/p)."""
    hyp = (p / q) * x >= y
    concl = (1.0 - x) ** (1.0 / q) <= (1.0 - y) ** (1.0 / p) + 1e-15
    return hyp, concl


# --- ratio profiles ----------------------------------------------------------


@lru_cache(maxsize=256)
def ratio_profile(spec: DistributionSpec, params: HyperParams, kind: str) -> RatioProfile:
    """Norm ratios ||stat_n||_q / ||stat_n||_p over the n grid.

    n values whose composed moments underflow to zero (possible for laws
    whose quantiles collapse super-exponentially) are reported as skipped
    rather than polluting the sup with 0/0.
    """
    if kind not in (MIN, MAX):
        raise DomainError(f"kind must be 'min' or 'max', got {kind!r}")
    entries = []
    skipped = []
    for n in params.n_grid:
        comp = compose_cdf(spec, Word(((kind, int(n)),)))
        if not comp.q_moment_finite(params.q):
            skipped.append((n, "q-moment infinite"))
            continue
        try:
            mq = raw_moment(comp, params.q, params.moment_rel_tol) ** (1.0 / params.q)
            mp = raw_moment(comp, params.p, params.moment_rel_tol) ** (1.0 / params.p)
        except NonConvergent:
            skipped.append((n, "quadrature did not converge"))
            continue
        if not (math.isfinite(mq) and math.isfinite(mp)) or mp <= 0.0:
            skipped.append((n, "moment underflow"))
            continue
        entries.append((n, mq, mp, mq / mp))
    return RatioProfile(kind=kind, entries=tuple(entries), skipped=tuple(skipped))


def empirical_hyper_constant(spec: DistributionSpec, params: HyperParams, kind: str) -> float:
    """sup over the n grid of ||stat_n||_q / ||stat_n||_p (grid-certified)."""
    if kind == MAX and not spec.q_moment_finite(params.q):
        raise InfiniteMoment(f"{spec.name} declares E X^{params.q} infinite")
    profile = ratio_profile(spec, params, kind)
    if not profile.entries:
        return 1.0
    return profile.constant


# --- grids -------------------------------------------------------------------


def _t_grid(spec: DistributionSpec, size: int):
    """Log-spaced t grid between the extreme quantiles of the law."""
    a0 = spec.atom_at_zero
    if a0 > 0:
        lo = float(spec.quantile(a0 + (1 - a0) * 1e-9))
    else:
        lo = float(spec.quantile(1e-9))
    lo = max(lo, 1e-300)
    hi = float(spec.tail_quantile(1e-9))
    if not (hi > lo):
        return np.array([max(hi, lo)])
    return np.geomspace(lo, hi, size)


def _low_t_grid(spec: DistributionSpec, size: int, t_cap: float):
    """Log grid of thresholds at or below t_cap for near-zero CDF ratios."""
    a0 = spec.atom_at_zero
    level = 1e-9 if a0 == 0 else a0 + (1 - a0) * 1e-9
    lo = float(spec.quantile(level))
    lo = max(min(lo, t_cap * 1e-9), 1e-300)
    if not (t_cap > lo):
        lo = t_cap * 1e-12
    return np.geomspace(lo, t_cap, size)


# --- condition checkers: min side --------------------------------------------


def _largest_tau(spec, t_sub, eps, rel_tol):
    """Largest tau in (0,1) with P(X <= tau t) <= eps P(X <= t) on the grid.

    Returns (tau, verdict, witness). Monotone in tau, so plain bisection.
    """
    cdf_t = np.asarray(spec.cdf(t_sub), dtype=float)
    bound = eps * cdf_t * (1.0 + rel_tol)

    def ok(tau):
        return bool(np.all(np.asarray(spec.cdf(tau * t_sub), dtype=float) <= bound))

    hi = 1.0 - 1e-9
    if ok(hi):
        return hi, "holds", None
    lo = _TAU_FLOOR
    if not ok(lo):
        lhs = np.asarray(spec.cdf(lo * t_sub), dtype=float)
        viol = lhs - bound
        i = int(np.argmax(viol))
        rel = viol[i] / max(bound[i], 1e-300)
        verdict = "inconclusive" if rel < 10 * rel_tol else "fails"
        witness = {"t": float(t_sub[i]), "lhs": float(lhs[i]), "rhs": float(eps * cdf_t[i]), "tau": lo}
        return None, verdict, witness
    for _ in range(80):
        mid = math.sqrt(lo * hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= _BISECT_REL * lo:
            break
    return lo, "holds", None


def _sigma_bisect(ok, cap, rel_tol):
    """Largest certified sigma in (0, cap] for a monotone predicate.

    The gap target is tight enough that sigma*(1+10*rel_tol) >= the smallest
    probe known to fail, which is what the tightness certificate reports.
    """
    if ok(cap):
        return cap, None
    gap = min(_BISECT_REL, 5.0 * rel_tol)
    hi = cap
    lo = cap
    while lo > _SIGMA_FLOOR:
        lo *= 0.25
        if ok(lo):
            break
    else:
        return None, lo
    for _ in range(120):
        mid = math.sqrt(lo * hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= gap * lo:
            break
    return lo, None


def _tight_above(ok, sigma, rel_tol):
    """True when sigma*(1+10*rel_tol) fails the predicate (or leaves (0,1])."""
    if sigma >= 1.0:
        return True
    probe = sigma * (1.0 + 10.0 * rel_tol)
    if probe >= 1.0:
        probe = 1.0
        if probe <= sigma:
            return True
    return not ok(probe)


def check_min_conditions(spec: DistributionSpec, params: HyperParams = HyperParams()) -> HyperReport:
    """Grid-certify the near-zero CDF-ratio and clip conditions for minima.

    Conditions reported:
      min-cdf-ratio       largest tau at eps = 0.5 on t <= rho ||X||_p
      min-cdf-ratio-eps*  the same at each eps in the ladder
      min-clip            largest sigma with (E(t^sX)^q)^(1/q) <= (E(t^X)^p)^(1/p)
      min-moment-ratio    the implied ||m_n||_q <= sigma^-1 ||m_n||_p on the n grid
    """
    p, q = params.p, params.q
    if not spec.q_moment_finite(q):
        raise InfiniteMoment(f"{spec.name} declares E X^{q} infinite")
    profile = ratio_profile(spec, params, MIN)
    verdicts: dict = {}
    witnesses = []
    notes = []

    xp = raw_moment(spec, p, params.moment_rel_tol) ** (1.0 / p)
    xq = raw_moment(spec, q, params.moment_rel_tol) ** (1.0 / q)

    if xp == 0.0:
        notes.append("law is identically zero; all conditions vacuous")
        for cid in ("min-cdf-ratio", "min-clip", "min-moment-ratio"):
            verdicts[cid] = {"verdict": "holds", "vacuous": True}
        return HyperReport(
            kind=MIN, C_empirical=1.0, C_argmax_n=1, sigma=1.0,
            condition_verdicts=verdicts, witnesses=(), ratios=profile.entries,
            skipped_n=profile.skipped, notes=tuple(notes),
        )

    if spec.atom_at_zero > 0:
        a0 = spec.atom_at_zero
        w = {"t": 0.0, "lhs": a0, "rhs": 0.0, "reason": "atom at zero"}
        witnesses.append(w)
        verdicts["min-cdf-ratio"] = {"verdict": "fails", "eps": 0.5, "witness": w}
        for eps in MIN_EPS_LADDER:
            verdicts[f"min-cdf-ratio-eps{eps:g}"] = {"verdict": "fails", "eps": eps, "witness": w}
        verdicts["min-clip"] = {"verdict": "fails", "witness": w}
        verdicts["min-moment-ratio"] = {"verdict": "fails", "witness": w}
        notes.append("atom at zero short-circuits every near-zero condition")
        return HyperReport(
            kind=MIN, C_empirical=profile.constant, C_argmax_n=profile.argmax_n,
            sigma=None, condition_verdicts=verdicts, witnesses=tuple(witnesses),
            ratios=profile.entries, skipped_n=profile.skipped, notes=tuple(notes),
        )

    t_cap = params.rho * xp
    t_sub = _low_t_grid(spec, params.t_grid_size, t_cap)

    tau, verdict, witness = _largest_tau(spec, t_sub, 0.5, params.rel_tol)
    verdicts["min-cdf-ratio"] = {"verdict": verdict, "eps": 0.5, "tau": tau, "rho": params.rho}
    if witness:
        verdicts["min-cdf-ratio"]["witness"] = witness
        witnesses.append(witness)
    for eps in MIN_EPS_LADDER:
        tau_e, verdict_e, witness_e = _largest_tau(spec, t_sub, eps, params.rel_tol)
        entry = {"verdict": verdict_e, "eps": eps, "tau": tau_e, "rho": params.rho}
        if witness_e:
            entry["witness"] = witness_e
            witnesses.append(witness_e)
        verdicts[f"min-cdf-ratio-eps{eps:g}"] = entry

    # clip condition: E(t ^ sigma X)^q = sigma^q K_q(t/sigma), and the
    # t -> inf limit forces sigma ||X||_q <= ||X||_p (checked analytically)
    kq = tail_cumulative(spec, q)
    kp = tail_cumulative(spec, p)
    grid = _t_grid(spec, params.t_grid_size)
    rhs = np.asarray(kp.cum(grid), dtype=float) ** (1.0 / p) * (1.0 + params.rel_tol)
    cap = min(1.0, (xp / xq) * (1.0 + _NORM_SLOP)) if xq > 0 else 1.0

    def clip_ok(sigma):
        if sigma * xq > xp * (1.0 + _NORM_SLOP):
            return False
        lhs = (sigma**q * np.asarray(kq.cum(grid / sigma), dtype=float)) ** (1.0 / q)
        return bool(np.all(lhs <= rhs))

    sigma, fail_probe = _sigma_bisect(clip_ok, cap, params.rel_tol)
    if sigma is None:
        lhs = (fail_probe**q * np.asarray(kq.cum(grid / fail_probe), dtype=float)) ** (1.0 / q)
        viol = lhs - rhs
        i = int(np.argmax(viol))
        w = {"t": float(grid[i]), "lhs": float(lhs[i]), "rhs": float(rhs[i]), "sigma": fail_probe}
        witnesses.append(w)
        verdicts["min-clip"] = {"verdict": "fails", "witness": w}
        verdicts["min-moment-ratio"] = {"verdict": "fails", "reason": "no certified sigma"}
    else:
        tight = _tight_above(clip_ok, sigma, params.rel_tol)
        verdicts["min-clip"] = {"verdict": "holds", "sigma": sigma, "tight_above": bool(tight)}
        ok_all, worst = _ratio_cross_check(profile, 1.0 / sigma, params.rel_tol)
        verdicts["min-moment-ratio"] = {
            "verdict": "holds" if ok_all else "fails",
            "bound": 1.0 / sigma,
            "worst_n": worst[0],
            "worst_ratio": worst[1],
        }
        if not ok_all:
            w = {"n": worst[0], "lhs": worst[1], "rhs": 1.0 / sigma}
            witnesses.append(w)
            verdicts["min-moment-ratio"]["witness"] = w

    return HyperReport(
        kind=MIN, C_empirical=profile.constant, C_argmax_n=profile.argmax_n,
        sigma=sigma, condition_verdicts=verdicts, witnesses=tuple(witnesses),
        ratios=profile.entries, skipped_n=profile.skipped, notes=tuple(notes),
    )


def _ratio_cross_check(profile: RatioProfile, bound: float, rel_tol: float):
    worst = (1, 0.0)
    ok_all = True
    for n, _, _, ratio in profile.entries:
        if ratio > worst[1]:
            worst = (n, ratio)
        if ratio > bound * (1.0 + rel_tol):
            ok_all = False
    return ok_all, worst


# --- condition checkers: max side --------------------------------------------


def check_max_conditions(spec: DistributionSpec, params: HyperParams = HyperParams()) -> HyperReport:
    """Grid-certify the truncated-moment and tail-ratio conditions for maxima.

    Conditions reported:
      max-truncated-moment  smallest grid B with E X^q 1{X>t} <= B^q t^q P(X>t)
      max-tail-ratio-eps*   smallest D with D^q P(X>Dt) <= eps P(X>t), plus the
                            constant D (1-eps)^(-1/q) it implies for the
                            truncated-moment condition
      max-clip              largest sigma with (E(t v sX)^q)^(1/q) <= (E(t v X)^p)^(1/p)
      max-moment-ratio      the implied ||M_n||_q <= sigma^-1 ||M_n||_p on the n grid
    """
    p, q = params.p, params.q
    if not spec.q_moment_finite(q):
        raise InfiniteMoment(f"{spec.name} declares E X^{q} infinite")
    profile = ratio_profile(spec, params, MAX)
    verdicts: dict = {}
    witnesses = []
    notes = []

    xp = raw_moment(spec, p, params.moment_rel_tol) ** (1.0 / p)
    xq = raw_moment(spec, q, params.moment_rel_tol) ** (1.0 / q)
    if xp == 0.0:
        notes.append("law is identically zero; all conditions vacuous")
        for cid in ("max-truncated-moment", "max-clip", "max-moment-ratio"):
            verdicts[cid] = {"verdict": "holds", "vacuous": True}
        return HyperReport(
            kind=MAX, C_empirical=1.0, C_argmax_n=1, sigma=1.0,
            condition_verdicts=verdicts, witnesses=(), ratios=profile.entries,
            skipped_n=profile.skipped, notes=tuple(notes),
        )

    kq = tail_cumulative(spec, q)
    kp = tail_cumulative(spec, p)

    t_lo = params.rho * xp
    t_hi = float(spec.tail_quantile(1e-9))
    if t_hi <= t_lo:
        # bounded law whose support ends below rho ||X||_p: degenerate grid
        t_hi = t_lo * (1.0 + 1e-9)
    tg = np.geomspace(t_lo, t_hi, params.t_grid_size)
    tail_tg = np.asarray(spec.tail(tg), dtype=float)
    live = tail_tg > 0.0
    tgl = tg[live]
    tail_l = tail_tg[live]

    if tgl.size:
        partial = tgl**q * tail_l + np.asarray(kq.upper(tgl), dtype=float)
        bq = partial / (tgl**q * tail_l)
        i = int(np.argmax(bq))
        B_fit = float(bq[i] ** (1.0 / q))
        verdicts["max-truncated-moment"] = {
            "verdict": "holds",
            "B": B_fit,
            "witness_t": float(tgl[i]),
            "rho": params.rho,
        }
    else:
        B_fit = 1.0
        verdicts["max-truncated-moment"] = {
            "verdict": "holds", "B": B_fit, "vacuous": True, "rho": params.rho,
        }

    for eps in MAX_EPS_LADDER:
        entry = {"verdict": "fails", "eps": eps, "rho": params.rho}
        if not tgl.size:
            entry.update(verdict="holds", D=1.0 + 1e-9, vacuous=True)
        else:
            ladder = 2.0 ** (np.arange(1, 161) / 8.0)
            tails = np.asarray(spec.tail(ladder[:, None] * tgl[None, :]), dtype=float)
            oks = np.all(
                ladder[:, None] ** q * tails <= eps * tail_l[None, :] * (1.0 + params.rel_tol),
                axis=1,
            )
            hits = np.nonzero(oks)[0]
            if hits.size:
                D = float(ladder[hits[0]])
                entry.update(
                    verdict="holds",
                    D=D,
                    B_from_D=float(D * (1.0 - eps) ** (-1.0 / q)),
                )
            else:
                j = int(np.argmax(ladder[-1] ** q * tails[-1] - eps * tail_l))
                w = {"t": float(tgl[j]), "D": float(ladder[-1]),
                     "lhs": float(ladder[-1] ** q * tails[-1][j]),
                     "rhs": float(eps * tail_l[j])}
                entry["witness"] = w
                witnesses.append(w)
        verdicts[f"max-tail-ratio-eps{eps:g}"] = entry

    grid = _t_grid(spec, params.t_grid_size)
    rhs = (grid**p + np.asarray(kp.upper(grid), dtype=float)) ** (1.0 / p) * (1.0 + params.rel_tol)
    cap = min(1.0, (xp / xq) * (1.0 + _NORM_SLOP)) if xq > 0 else 1.0

    def clip_ok(sigma):
        if sigma * xq > xp * (1.0 + _NORM_SLOP):
            return False
        lhs = (grid**q + sigma**q * np.asarray(kq.upper(grid / sigma), dtype=float)) ** (1.0 / q)
        return bool(np.all(lhs <= rhs))

    sigma, fail_probe = _sigma_bisect(clip_ok, cap, params.rel_tol)
    if sigma is None:
        lhs = (grid**q + fail_probe**q * np.asarray(kq.upper(grid / fail_probe), dtype=float)) ** (1.0 / q)
        viol = lhs - rhs
        i = int(np.argmax(viol))
        w = {"t": float(grid[i]), "lhs": float(lhs[i]), "rhs": float(rhs[i]), "sigma": fail_probe}
        witnesses.append(w)
        verdicts["max-clip"] = {"verdict": "fails", "witness": w}
        verdicts["max-moment-ratio"] = {"verdict": "fails", "reason": "no certified sigma"}
    else:
        tight = _tight_above(clip_ok, sigma, params.rel_tol)
        verdicts["max-clip"] = {"verdict": "holds", "sigma": sigma, "tight_above": bool(tight)}
        ok_all, worst = _ratio_cross_check(profile, 1.0 / sigma, params.rel_tol)
        verdicts["max-moment-ratio"] = {
            "verdict": "holds" if ok_all else "fails",
            "bound": 1.0 / sigma,
            "worst_n": worst[0],
            "worst_ratio": worst[1],
        }
        if not ok_all:
            w = {"n": worst[0], "lhs": worst[1], "rhs": 1.0 / sigma}
            witnesses.append(w)
            verdicts["max-moment-ratio"]["witness"] = w

    return HyperReport(
        kind=MAX, C_empirical=profile.constant, C_argmax_n=profile.argmax_n,
        sigma=sigma, condition_verdicts=verdicts, witnesses=tuple(witnesses),
        ratios=profile.entries, skipped_n=profile.skipped, notes=tuple(notes),
    )


# --- two-sided clip ----------------------------------------------------------


def clip_sigma_search(spec: DistributionSpec, params: HyperParams = HyperParams()) -> float:
    """Largest sigma certified for E(s v sigma X ^ t)^q vs E(s v X ^ t)^p.

    The (s, t) net is the upper triangle of a log grid spanning the extreme
    quantiles, extended by the boundary families s = 0 (pure ^), t = inf
    (pure v) and the (0, inf) norm constraint sigma ||X||_q <= ||X||_p.
    """
    p, q = params.p, params.q
    min_rep = check_min_conditions(spec, params)
    if min_rep.condition_verdicts["min-cdf-ratio-eps0.5"]["verdict"] != "holds":
        raise NotSubregular(f"{spec.name}: near-zero CDF-ratio condition fails")
    max_rep = check_max_conditions(spec, params)
    if max_rep.condition_verdicts["max-tail-ratio-eps0.5"]["verdict"] != "holds":
        raise NotSubregular(f"{spec.name}: tail-ratio condition fails")

    xp = raw_moment(spec, p, params.moment_rel_tol) ** (1.0 / p)
    xq = raw_moment(spec, q, params.moment_rel_tol) ** (1.0 / q)
    if xp == 0.0:
        return 1.0
    kq = tail_cumulative(spec, q)
    kp = tail_cumulative(spec, p)

    m = min(params.t_grid_size, 200)
    g = _t_grid(spec, m)
    iu, ju = np.triu_indices(g.size, k=1)
    S, T = g[iu], g[ju]

    kp_s = np.asarray(kp.cum(S), dtype=float)
    kp_t = np.asarray(kp.cum(T), dtype=float)
    rhs_in = (S**p + (kp_t - kp_s)) ** (1.0 / p) * (1.0 + params.rel_tol)
    rhs_min = np.asarray(kp.cum(g), dtype=float) ** (1.0 / p) * (1.0 + params.rel_tol)
    rhs_max = (g**p + np.asarray(kp.upper(g), dtype=float)) ** (1.0 / p) * (1.0 + params.rel_tol)

    def ok(sigma):
        if sigma * xq > xp * (1.0 + _NORM_SLOP):
            return False
        lhs_min = (sigma**q * np.asarray(kq.cum(g / sigma), dtype=float)) ** (1.0 / q)
        if not np.all(lhs_min <= rhs_min):
            return False
        lhs_max = (g**q + sigma**q * np.asarray(kq.upper(g / sigma), dtype=float)) ** (1.0 / q)
        if not np.all(lhs_max <= rhs_max):
            return False
        ks = np.asarray(kq.cum(S / sigma), dtype=float)
        kt = np.asarray(kq.cum(T / sigma), dtype=float)
        lhs_in = (S**q + sigma**q * (kt - ks)) ** (1.0 / q)
        return bool(np.all(lhs_in <= rhs_in))

    cap = min(1.0, (xp / xq) * (1.0 + _NORM_SLOP)) if xq > 0 else 1.0
    sigma, _ = _sigma_bisect(ok, cap, params.rel_tol)
    if sigma is None:
        raise NotSubregular(f"{spec.name}: no certified clip sigma above {_SIGMA_FLOOR}")
    return sigma


def iterated_hyper_check(spec: DistributionSpec, params: HyperParams, words=None) -> dict:
    """Verify ||W||_q <= sigma^-1 ||W||_p for each word, with sigma from the
    two-sided clip search."""
    if words is None:
        words = alternating_words(2, (2, 4, 8))
    sigma = clip_sigma_search(spec, params)
    bound = 1.0 / sigma
    rows = []
    all_hold = True
    for word in words:
        comp = compose_cdf(spec, word)
        nq = raw_moment(comp, params.q, params.moment_rel_tol) ** (1.0 / params.q)
        npn = raw_moment(comp, params.p, params.moment_rel_tol) ** (1.0 / params.p)
        ratio = nq / npn if npn > 0 else float("inf")
        holds = ratio <= bound * (1.0 + params.rel_tol)
        all_hold &= holds
        rows.append({
            "word": str(word), "norm_q": nq, "norm_p": npn,
            "ratio": ratio, "holds": bool(holds),
        })
    return {
        "sigma": sigma,
        "bound": bound,
        "words": rows,
        "all_hold": bool(all_hold),
    }


# --- class membership and functional checks ----------------------------------


def class_F_membership(x, values, first_deriv, second_deriv, f0):
    """Check the clip-mixture class criterion on a positive grid.

    Requires 0 <= x f'(x) <= f(x) at every grid point and
    f(0) >= integral of x * max(f'', 0) dx (trapezoid on the grid).
    Raises GridTooCoarse when the supplied first derivative disagrees with
    finite differences of the values by more than 1e-4 relative.
    """
    x = np.asarray(x, dtype=float)
    f = np.asarray(values, dtype=float)
    fp = np.asarray(first_deriv, dtype=float)
    fpp = np.asarray(second_deriv, dtype=float)
    if x.ndim != 1 or x.size < 3 or np.any(np.diff(x) <= 0) or np.any(x <= 0):
        raise DomainError("need a strictly increasing positive grid of size >= 3")
    if not (x.shape == f.shape == fp.shape == fpp.shape):
        raise DomainError("grid and value arrays must share a shape")

    fd = np.gradient(f, x)
    scale = np.maximum(np.abs(fp), np.maximum(np.abs(fd), 1e-12))
    mismatch = np.abs(fd - fp) / scale
    # endpoints use one-sided differences; only interior points gate
    if np.max(mismatch[1:-1]) > 1e-4:
        i = int(np.argmax(mismatch[1:-1])) + 1
        raise GridTooCoarse(
            f"first derivative inconsistent with values at x={x[i]:g} "
            f"(relative deviation {mismatch[i]:.2e})"
        )

    slack = 1e-12 * np.maximum(np.abs(f), 1.0)
    lower_ok = x * fp >= -slack
    upper_ok = x * fp <= f + slack
    pointwise = lower_ok & upper_ok
    if not np.all(pointwise):
        i = int(np.argmin(pointwise))
        return False, {"x": float(x[i]), "x_fprime": float(x[i] * fp[i]), "f": float(f[i])}
    mass = float(np.trapezoid(x * np.maximum(fpp, 0.0), x))
    if f0 < mass - 1e-9 * max(abs(mass), 1.0):
        return False, {"f0": float(f0), "required_mass": mass}
    return True, None


_H_TAGS = ("MIN-ALL", "CONCAVE-SAMPLE", "CLIP-SAMPLE")


def functional_hyper_check(
    specs,
    h_tag: str,
    sigma: float,
    q: float,
    n_samples: int = 10**6,
    seed: int = 0,
    threads: int = 1,
) -> dict:
    """Monte Carlo check of (E h(sigma X)^q)^(1/q) <= E h(X) + 4 stderr.

    h is drawn from a fixed library: the coordinatewise minimum, the concave
    sum of square roots, or a sum of coordinatewise clips anchored at each
    coordinate's mean.
    """
    if h_tag not in _H_TAGS:
        raise DomainError(f"h_tag must be one of {_H_TAGS}, got {h_tag!r}")
    if not (0 < sigma <= 1):
        raise DomainError(f"sigma must lie in (0, 1], got {sigma!r}")
    specs = list(specs)
    d = len(specs)
    if d < 1:
        raise DomainError("need at least one coordinate law")

    if h_tag == "CLIP-SAMPLE":
        anchors = [raw_moment(s, 1.0, 1e-9) for s in specs]
        lo = np.array([0.25 * a for a in anchors])
        hi = np.array([2.0 * a for a in anchors])

    def h(mat):
        if h_tag == "MIN-ALL":
            return mat.min(axis=1)
        if h_tag == "CONCAVE-SAMPLE":
            return np.sqrt(mat).sum(axis=1)
        return np.clip(mat, lo[None, :], hi[None, :]).sum(axis=1)

    def worker(rng, count):
        cols = [np.asarray(s.sampler(rng, count), dtype=float) for s in specs]
        mat = np.column_stack(cols)
        hs = h(mat)
        hq = h(sigma * mat) ** q
        return (
            float(np.sum(hs)), float(np.sum(hs * hs)),
            float(np.sum(hq)), float(np.sum(hq * hq)),
            count,
        )

    s1, s2, t1, t2, total = run_batches(worker, seed, 0, n_samples, threads=threads)
    mean_h = s1 / total
    var_h = max(s2 / total - mean_h**2, 0.0)
    mean_hq = t1 / total
    var_hq = max(t2 / total - mean_hq**2, 0.0)
    lhs = mean_hq ** (1.0 / q)
    se_rhs = math.sqrt(var_h / total)
    # delta method for the q-th root of a mean
    se_lhs = (
        (1.0 / q) * mean_hq ** (1.0 / q - 1.0) * math.sqrt(var_hq / total)
        if mean_hq > 0
        else 0.0
    )
    se = math.hypot(se_lhs, se_rhs)
    holds = lhs <= mean_h + 4.0 * se
    return {
        "h": h_tag,
        "dimension": d,
        "sigma": sigma,
        "q": q,
        "lhs": lhs,
        "rhs": mean_h,
        "stderr": se,
        "samples": int(total),
        "holds": bool(holds),
    }


def paley_zygmund_check(spec: DistributionSpec, params: HyperParams, lam: float) -> dict:
    """Exact-tail check of P(m_n > lam ||m_n||_p) >= the closed-form lower
    bound built from the empirical constant, over the n grid."""
    profile = ratio_profile(spec, params, MIN)
    C = max(profile.constant, 1.0)
    bound = paley_zygmund_lower(C, params.p, params.q, lam)
    rows = []
    all_hold = True
    for n, _, mp, _ in profile.entries:
        prob = float(np.exp(n * spec.log_tail(lam * mp)))
        holds = prob >= bound * (1.0 - params.rel_tol)
        all_hold &= holds
        rows.append({"n": n, "prob": prob, "bound": bound, "holds": bool(holds)})
    return {
        "lambda": lam,
        "C_empirical": C,
        "bound": bound,
        "rows": rows,
        "skipped_n": [{"n": n, "reason": why} for (n, why) in profile.skipped],
        "all_hold": bool(all_hold),
    }
