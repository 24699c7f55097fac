"""Request models for the service endpoints and the CLI thin client.

Scalar-law commands name distributions by constructor text ("exp(1)",
"pareto(3,1)"). Vector-law commands carry JSON descriptions: laws as
{"kind", "alpha", "covariance"/"scales"}, sets as {"kind": "slab"|
"ellipsoid"|"lpball"|"intersection", ...}, matrices either nested lists or
{"dim", "data"} row-major.
"""
from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field


class _Base(BaseModel):
    model_config = {"extra": "forbid"}


class MomentsRequest(_Base):
    dist: str
    word: str = "id"
    r: float = 1.0
    rel_tol: float = Field(default=1e-9, gt=0, le=1e-3)
    mc_check: bool = False          # cross-check against a sampling estimate
    samples: int = 10**6
    seed: int = 0
    threads: int = 1


class BoundsRequest(_Base):
    dist: str
    r: float = 2.0
    n_values: list[int] = [1, 10, 100, 10_000]
    t: Optional[float] = None       # adds tail sandwich rows at this level
    seed: int = 0


class HyperRequest(_Base):
    dist: str
    p: float = 1.0
    q: float = 2.0
    n_grid: Optional[list[int]] = None
    t_grid_size: int = 400
    rel_tol: float = Field(default=1e-8, gt=0, le=1e-3)
    rho: float = 0.5
    lam: Optional[float] = None     # adds the scaled-tail lower-bound rows
    seed: int = 0


class HyperMinmaxRequest(_Base):
    dist: str
    p: float = 1.0
    q: float = 2.0
    pairs: int = Field(default=2, ge=1, le=3)
    counts: list[int] = [2, 4, 8]
    t_grid_size: int = 400
    rel_tol: float = Field(default=1e-8, gt=0, le=1e-3)
    seed: int = 0


class ConstantsRequest(_Base):
    C: float = 2.0
    p: float = 1.0
    q: float = 2.0
    lam: float = 0.5
    b: float = 0.5
    r: float = 0.25


class CompareRequest(_Base):
    dist_x: str
    dist_y: str
    p: float = 1.0
    q: float = 2.0
    direction: Literal["all", "small-ball", "tail", "two-sided", "thinning"] = "all"
    C_tail: Optional[float] = None  # thinning factor; fitted when omitted
    rel_tol: float = Field(default=1e-8, gt=0, le=1e-3)
    seed: int = 0


class SmallBallRequest(_Base):
    law: dict
    set_: dict = Field(alias="set")
    y: Optional[list[float]] = None
    radii: list[float] = [0.25, 0.5, 1.0, 2.0]
    samples: int = 10**6
    seed: int = 0
    threads: int = 1

    model_config = {"extra": "forbid", "populate_by_name": True}


class KanterRequest(_Base):
    law: dict
    set_: dict = Field(alias="set")
    kappa_grid: Optional[list[float]] = None
    shifts: Optional[list[list[float]]] = None
    samples: int = 10**6
    seed: int = 0
    threads: int = 1

    model_config = {"extra": "forbid", "populate_by_name": True}


class RegularityRequest(_Base):
    law: dict
    set_: dict = Field(alias="set")
    b: float = 0.5
    t_grid: Optional[list[float]] = None
    samples: int = 10**6
    seed: int = 0
    threads: int = 1

    model_config = {"extra": "forbid", "populate_by_name": True}


class CorrelationRequest(_Base):
    cov: Any                        # covariance matrix
    sets: list[dict]
    alpha_scale: float = 1.0
    samples: int = 10**6
    seed: int = 0
    threads: int = 1


class SlepianRequest(_Base):
    cov: Any
    sets: list[dict]
    samples: int = 10**6
    seed: int = 0
    threads: int = 1


class MinProfileRequest(_Base):
    cov: Any
    sets: list[dict]
    n_grid: Optional[list[int]] = None
    q: float = 2.0
    samples: int = 10**5
    seed: int = 0
    threads: int = 1


class IntegralCheckRequest(_Base):
    law: dict
    set_: dict = Field(alias="set")
    b: float = 0.5
    t_grid: Optional[list[float]] = None
    samples: int = 10**6
    seed: int = 0
    threads: int = 1

    model_config = {"extra": "forbid", "populate_by_name": True}


class ExploreRequest(_Base):
    p: float = 1.0
    q: float = 2.0
    cov: Any = None                 # probe covariance; identity dim 1 default
    set_: Optional[dict] = Field(default=None, alias="set")
    n_grid: Optional[list[int]] = None
    sweep_sets: Optional[list[dict]] = None  # enables the dilation sweep
    scale_grid: Optional[list[float]] = None
    samples: int = 10**5
    seed: int = 0
    threads: int = 1

    model_config = {"extra": "forbid", "populate_by_name": True}
