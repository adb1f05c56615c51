"""Exact and asymptotic statistics of p-watermelons (vicious walkers without a wall)."""
from .counting import (
    ExactDistribution,
    MelonConfig,
    StripBound,
    binomial_safe,
    count_height_lt,
    count_strip,
    count_total,
    count_total_closed,
    det_big,
    height_distribution,
    height_moment_exact,
    range_cdf_count,
    range_distribution,
)
from .errors import CapacityError, DimensionError, DomainError, MelonError
from .gauss import (
    GaussExpr,
    GaussTerm,
    det_gexpr,
    f_sum_asymptotic,
    f_sum_numeric,
    gexpr_add,
    gexpr_diff,
    gexpr_mul,
    gexpr_scale,
    kappa,
    leading_coefficient,
    moment_asymptotic,
    table1,
    tau,
    xi0,
    xi1,
)
from .limits import (
    LimitCurve,
    convergence_report,
    gaussian_ratio_check,
    height_limit_cdf,
    limit_curve,
    p1_range_closed,
    range_limit_cdf,
    range_T,
    range_T_dz,
    theta_sum,
)
from .oracle import MelonPath, MelonStats, enumerate_melons, stats
from .special import bernoulli, gamma_half, hermite, hermite_zero

__version__ = "0.1.0"
