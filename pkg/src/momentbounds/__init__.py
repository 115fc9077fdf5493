"""Sharp moment bounds for count distributions.

Given the first three moments of a random variable S on {0,..,n} (in any
of several equivalent parameterizations), compute the exact attainable
range of the tail P(S >= k) and the unique distributions achieving each
endpoint, plus the supporting polytope geometry and an independent
brute-force oracle.
"""

from .bounds import (
    BoundsResult,
    lower_bound,
    sharp_bounds,
    sharp_bounds_batch,
    upper_bound,
)
from .exact import Rational, format_sig, sqrt_rational
from .geometry import (
    MembershipResult,
    Simplex,
    brute_force_facets,
    lower_facets,
    membership,
    subdivision,
    upper_facets,
)
from .moments import (
    BahadurParams,
    DeFinettiParams,
    Distribution,
    FactorialMoments,
    InfeasibleMomentsError,
    MomentTriple,
    RawMoments,
    as_moment_triple,
    bahadur_to_definetti,
    definetti_to_bahadur,
    definetti_to_factorial,
    denormalize,
    factorial_to_definetti,
    factorial_to_raw,
    moment_triple_of,
    moments_of,
    normalize,
    pmf_from_factorial,
    raw_to_factorial,
    reliability_from_factorial,
)
from .oracle import (
    OracleReport,
    VerifyReport,
    lp_bounds,
    lp_bounds_prefix,
    random_distribution,
    verify,
)
from .region import RegionRow, feasible_interval, moment_prefix, rows_to_csv, sweep

__version__ = "0.1.0"

__all__ = [
    "BahadurParams",
    "BoundsResult",
    "DeFinettiParams",
    "Distribution",
    "FactorialMoments",
    "InfeasibleMomentsError",
    "MembershipResult",
    "MomentTriple",
    "OracleReport",
    "Rational",
    "RawMoments",
    "RegionRow",
    "Simplex",
    "VerifyReport",
    "as_moment_triple",
    "bahadur_to_definetti",
    "brute_force_facets",
    "definetti_to_bahadur",
    "definetti_to_factorial",
    "denormalize",
    "factorial_to_definetti",
    "factorial_to_raw",
    "feasible_interval",
    "format_sig",
    "lower_bound",
    "lower_facets",
    "lp_bounds",
    "lp_bounds_prefix",
    "membership",
    "moment_prefix",
    "moment_triple_of",
    "moments_of",
    "normalize",
    "pmf_from_factorial",
    "random_distribution",
    "raw_to_factorial",
    "reliability_from_factorial",
    "rows_to_csv",
    "sharp_bounds",
    "sharp_bounds_batch",
    "sqrt_rational",
    "subdivision",
    "sweep",
    "upper_bound",
    "upper_facets",
    "verify",
    "__version__",
]
