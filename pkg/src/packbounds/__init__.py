"""Upper bounds for sphere packing density in Euclidean and hyperbolic space.

Submodules: :mod:`specfun` (log-scaled numerics and special functions),
:mod:`orthopoly` (Gegenbauer polynomials and roots), :mod:`euclid_bounds`
(the four Euclidean density bounds), :mod:`spherical_lp` (the code-bound LP
with verified certificates and the Euclidean transfer), :mod:`hyperbolic`
(volumes, density bounds, ball overlaps), and :mod:`cli`.
"""

from .euclid_bounds import (
    BoundRecord,
    RateResult,
    best_method,
    cap_density,
    cz_bound,
    kl_bound,
    kl_spherical_code_bound,
    levenshtein_bound,
    optimize_asymptotic_rate,
    rogers_bound,
)
from .hyperbolic import (
    HyperbolicGeometry,
    OverlapResult,
    hyp_ball_volume,
    hyp_bound_optimized,
    hyp_density_bound,
    overlap_finite,
    overlap_limit,
    overlap_monte_carlo,
    radius_from_angle,
)
from .orthopoly import (
    GegenbauerContext,
    GegenbauerPoly,
    gegenbauer_eval,
    gegenbauer_largest_root,
    mean_on_sphere,
)
from .specfun import (
    LogScaled,
    Quadrature,
    bessel_first_zero,
    bessel_j,
    incomplete_beta,
    integrate,
    log_binomial,
    log_gamma,
    scaled_erfc_complex,
)
from .spherical_lp import (
    LPCertificate,
    LPProblem,
    TransferProbe,
    euclid_bound_from_certificate,
    lp_solve_spherical,
    transfer_g_to_f,
    verify_certificate,
)

__version__ = "0.1.0"
