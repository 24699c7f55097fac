"""Computational toolkit for moment comparison of iterated minima and maxima.

Scalar laws live in ``distributions``; exact quadrature of composed
min/max words in ``moments``; the norm-ratio and condition checkers in
``hyper``; two-law transfer engines in ``comparison``; vector laws,
convex-set gauges and their Monte Carlo checks in ``gauss_stable``; open
questions as estimate-only probes in ``explore``. The ``service`` package
and the ``minmax-hyper`` CLI expose every checker with deterministic JSON
reports.
"""
from . import comparison, distributions, explore, gauss_stable, hyper, moments, rng
from .comparison import (
    min_domination_B,
    small_ball_comparison,
    tail_comparison,
    thinning_equivalence,
    two_sided_comparison,
)
from .distributions import DistributionSpec, parse_spec
from .errors import (
    DomainError,
    GridTooCoarse,
    HypothesisFailed,
    InfiniteMoment,
    MinmaxHyperError,
    NoFiniteD,
    NonConvergent,
    NotSubregular,
    ParseError,
    QuantileAtAtom,
    RescaleFailed,
    UsageError,
)
from .hyper import (
    HyperParams,
    HyperReport,
    check_max_conditions,
    check_min_conditions,
    clip_sigma_search,
    integral_rate_constants,
    iterated_hyper_check,
    min_doubling_constant,
    moment_truncation_scale,
    paley_zygmund_lower,
    small_ball_rate,
)
from .moments import MomentQuery, Word, compose_cdf, moment_norm, raw_moment

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "comparison", "distributions", "explore", "gauss_stable", "hyper",
    "moments", "rng",
    "min_domination_B", "small_ball_comparison", "tail_comparison",
    "thinning_equivalence", "two_sided_comparison",
    "DistributionSpec", "parse_spec",
    "DomainError", "GridTooCoarse", "HypothesisFailed", "InfiniteMoment",
    "MinmaxHyperError", "NoFiniteD", "NonConvergent", "NotSubregular",
    "ParseError", "QuantileAtAtom", "RescaleFailed", "UsageError",
    "HyperParams", "HyperReport", "check_max_conditions",
    "check_min_conditions", "clip_sigma_search", "integral_rate_constants",
    "iterated_hyper_check", "min_doubling_constant",
    "moment_truncation_scale", "paley_zygmund_lower", "small_ball_rate",
    "MomentQuery", "Word", "compose_cdf", "moment_norm", "raw_moment",
]
