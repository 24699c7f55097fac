"""Gaussian and symmetric alpha-stable vector laws with stream-keyed samplers.

Scale conventions (stated in every report header):
  GAUSSIAN(Sigma)             N(0, Sigma).
  STABLE_SUBGAUSSIAN(a, Sigma) X = sqrt(2 A) G with G ~ N(0, Sigma) and A a
                              positive (a/2)-stable scalar normalized to
                              E exp(-u A) = exp(-u^(a/2)); the joint
                              characteristic function is
                              exp(-(t' Sigma t)^(a/2)), so a = 2 collapses
                              to GAUSSIAN(2 Sigma).
  STABLE_INDEP(a, scales)     independent coordinates scales_j * Z_j with
                              Z standard symmetric a-stable
                              (char. function exp(-|t|^a)).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..rng import positive_stable, symmetric_stable
from .sets import MAX_DIM, parse_matrix

GAUSSIAN = "GAUSSIAN"
STABLE_SUBGAUSSIAN = "STABLE_SUBGAUSSIAN"
STABLE_INDEP = "STABLE_INDEP"

MAX_CUMULATIVE_SAMPLES = 10**9


@dataclass(frozen=True)
class VectorLaw:
    kind: str
    dim: int
    alpha: float
    sigma: np.ndarray | None = None    # covariance, GAUSSIAN/SUBGAUSSIAN
    scales: np.ndarray | None = None   # per-coordinate, STABLE_INDEP
    factor: np.ndarray | None = None   # Sigma = factor @ factor.T

    @property
    def name(self) -> str:
        if self.kind == GAUSSIAN:
            return f"gaussian(d={self.dim})"
        if self.kind == STABLE_SUBGAUSSIAN:
            return f"stable_subgaussian(alpha={self.alpha:g},d={self.dim})"
        return f"stable_indep(alpha={self.alpha:g},d={self.dim})"

    def describe(self) -> dict:
        out = {"kind": self.kind, "dim": self.dim, "alpha": self.alpha}
        if self.sigma is not None:
            out["covariance"] = {"dim": self.dim,
                                 "data": [float(v) for v in self.sigma.ravel()]}
        if self.scales is not None:
            out["scales"] = [float(v) for v in self.scales]
        return out


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha <= 2.0):
        raise DomainError(f"alpha must lie in (0, 2], got {alpha!r}")
    return alpha


def _psd_factor(sigma) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(sigma, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise DomainError("covariance must be a square matrix")
    d = s.shape[0]
    if not 1 <= d <= MAX_DIM:
        raise DomainError(f"dimension must lie in 1..{MAX_DIM}, got {d}")
    if not np.all(np.isfinite(s)):
        raise DomainError("covariance must be finite")
    scale = max(1.0, float(np.abs(s).max()))
    if not np.allclose(s, s.T, rtol=0.0, atol=1e-10 * scale):
        raise DomainError("covariance must be symmetric")
    s = 0.5 * (s + s.T)
    try:
        return s, np.linalg.cholesky(s)
    except np.linalg.LinAlgError:
        pass
    # semidefinite: factor through the eigendecomposition
    w, v = np.linalg.eigh(s)
    if w[0] < -1e-10 * max(1.0, abs(w[-1])):
        raise DomainError("covariance not PSD")
    return s, v * np.sqrt(np.clip(w, 0.0, None))


def gaussian(sigma) -> VectorLaw:
    s, f = _psd_factor(sigma)
    return VectorLaw(kind=GAUSSIAN, dim=s.shape[0], alpha=2.0, sigma=s, factor=f)


def stable_subgaussian(alpha: float, sigma) -> VectorLaw:
    alpha = _check_alpha(alpha)
    s, f = _psd_factor(sigma)
    return VectorLaw(kind=STABLE_SUBGAUSSIAN, dim=s.shape[0], alpha=alpha,
                     sigma=s, factor=f)


def stable_indep(alpha: float, scales) -> VectorLaw:
    alpha = _check_alpha(alpha)
    sc = np.atleast_1d(np.asarray(scales, dtype=float))
    if not (np.all(np.isfinite(sc)) and np.all(sc > 0.0)):
        raise DomainError("scales must be positive finite")
    if not 1 <= sc.size <= MAX_DIM:
        raise DomainError(f"dimension must lie in 1..{MAX_DIM}, got {sc.size}")
    return VectorLaw(kind=STABLE_INDEP, dim=sc.size, alpha=alpha, scales=sc)


def parse_law(obj) -> VectorLaw:
    """{"kind": ..., "alpha": ..., "covariance"/"scales": ...}"""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DomainError('law description must be an object with a "kind"')
    kind = str(obj["kind"]).upper()
    if kind == GAUSSIAN:
        return gaussian(parse_matrix(obj["covariance"], "covariance"))
    if kind == STABLE_SUBGAUSSIAN:
        return stable_subgaussian(obj["alpha"],
                                  parse_matrix(obj["covariance"], "covariance"))
    if kind == STABLE_INDEP:
        return stable_indep(obj["alpha"], obj["scales"])
    raise DomainError(f"unknown law kind {obj['kind']!r}")


def sample(law: VectorLaw, n: int, rng: np.random.Generator) -> np.ndarray:
    """(n, dim) draws; deterministic given the generator state."""
    n = int(n)
    if not 0 <= n <= MAX_CUMULATIVE_SAMPLES:
        raise DomainError(f"sample count must lie in 0..1e9, got {n}")
    if law.kind == GAUSSIAN:
        return rng.standard_normal((n, law.dim)) @ law.factor.T
    if law.kind == STABLE_SUBGAUSSIAN:
        g = rng.standard_normal((n, law.dim)) @ law.factor.T
        if law.alpha == 2.0:
            a = np.ones((n, 1))  # degenerate subordinator, exp(-u) transform
        else:
            a = positive_stable(rng, law.alpha / 2.0, (n, 1))
        return np.sqrt(2.0 * a) * g
    z = symmetric_stable(rng, law.alpha, (n, law.dim))
    return z * law.scales
