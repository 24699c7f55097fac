"""Vector laws, symmetric convex sets, and Monte Carlo small-ball checks."""
from .checks import (
    SmallBallEstimate,
    Z999,
    anderson_shift_check,
    correlation_check,
    integrated_small_ball_check,
    kanter_bound_check,
    regularity_check,
    shared_vs_independent_min_profile,
    slepian_sqrt2_check,
    small_ball,
    wilson_interval,
)
from .laws import (
    GAUSSIAN,
    STABLE_INDEP,
    STABLE_SUBGAUSSIAN,
    VectorLaw,
    gaussian,
    parse_law,
    sample,
    stable_indep,
    stable_subgaussian,
)
from .sets import (
    ELLIPSOID,
    INTERSECTION,
    LPBALL,
    MAX_DIM,
    SLAB,
    ConvexSet,
    convexity_check,
    ellipsoid,
    euclidean_ball,
    gauge_consistency_check,
    intersection,
    lpball,
    parse_matrix,
    parse_set,
    slab,
    symmetry_check,
)

__all__ = [
    "SmallBallEstimate", "Z999", "anderson_shift_check", "correlation_check",
    "integrated_small_ball_check", "kanter_bound_check", "regularity_check",
    "shared_vs_independent_min_profile", "slepian_sqrt2_check", "small_ball",
    "wilson_interval",
    "GAUSSIAN", "STABLE_INDEP", "STABLE_SUBGAUSSIAN", "VectorLaw", "gaussian",
    "parse_law", "sample", "stable_indep", "stable_subgaussian",
    "ELLIPSOID", "INTERSECTION", "LPBALL", "MAX_DIM", "SLAB", "ConvexSet",
    "convexity_check", "ellipsoid", "euclidean_ball", "gauge_consistency_check",
    "intersection", "lpball", "parse_matrix", "parse_set", "slab",
    "symmetry_check",
]
