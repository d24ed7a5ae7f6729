"""Upper bounds on sphere packing density in R^n.

Four methods are implemented:

* ``rogers`` -- the simplex bound, via a contour integral of the scaled
  complementary error function;
* ``levenshtein`` -- j_(n/2)^n / ((n/2)!^2 4^n) with j the first Bessel zero;
* ``kl`` -- the projection bound through spherical codes in S^n, minimized
  over the degree k of the underlying Gegenbauer root (first local minimum);
* ``cz`` -- the sharpened projection bound that stays in S^(n-1), minimized
  over the k-range where the code angle stays >= pi/3.

All values are kept in log space; dimension 600 lands near 1e-100 without
ever touching a denormal.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np

from .orthopoly import GegenbauerContext
from .specfun import (
    LogScaled,
    NonConvergenceError,
    Quadrature,
    bessel_first_zero,
    integrate,
    log_binomial,
    log_gamma,
    scaled_erfc_complex,
)

__all__ = [
    "BoundRecord",
    "RateResult",
    "METHODS",
    "HISTORICAL_METHODS",
    "rogers_bound",
    "levenshtein_bound",
    "kl_spherical_code_bound",
    "kl_bound",
    "cz_bound",
    "cap_density",
    "optimize_asymptotic_rate",
    "best_method",
    "shared_context",
]

METHODS = ("rogers", "levenshtein", "kl", "cz", "lp_transfer")
# the historical best-bound comparison predates the cz sharpening
HISTORICAL_METHODS = ("rogers", "levenshtein", "kl")

# Independently published Euclidean LP value at n = 120 (eight forced double
# roots).  Kept for documentation/comparison only; never computed here.
LP_EUCLIDEAN_N120_REFERENCE = 1.164e-17


@dataclass(frozen=True)
class BoundRecord:
    """One computed density bound with its optimizer metadata."""

    dimension: int
    method: str
    value: LogScaled
    k_star: int | None = None
    theta_star: float | None = None
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RateResult:
    """Optimal angle and per-dimension exponent of the asymptotic bound."""

    theta_star: float
    rate_log2: float


# Gegenbauer contexts are shared across bound computations; the root caches
# make repeated scans over dimensions cheap.
_CTX_CACHE: dict[int, GegenbauerContext] = {}
_CTX_LOCK = threading.Lock()


def shared_context(n: int) -> GegenbauerContext:
    ctx = _CTX_CACHE.get(n)
    if ctx is None:
        with _CTX_LOCK:
            ctx = _CTX_CACHE.setdefault(n, GegenbauerContext(n))
    return ctx


# ---------------------------------------------------------------------------
# Rogers
# ---------------------------------------------------------------------------


def rogers_bound(n: int, quad: Quadrature | None = None) -> BoundRecord:
    """Simplex-cell density bound in R^n.

    The textbook integrand e^((n+1)(n/2 - sqrt(2n) u i - u^2)) erfc(a - ui)^n
    with a = sqrt(n/2) overflows around n = 50.  Writing
    erfc(z) = e^(-z^2) w(iz) with z = a - ui collapses it to

        e^(z^2) * w(iz)^n,

    whose log has bounded real part once the peak value is factored out;
    w(iz) stays in the right half plane (Im(iz) = a > 0), so the principal
    complex log never jumps a branch.
    """
    if n < 2 or n > 1000:
        raise ValueError("rogers_bound requires 2 <= n <= 1000")
    q = quad or Quadrature(rel_tol=1e-11)
    a = math.sqrt(n / 2.0)
    s2n = math.sqrt(2.0 * n)

    def log_integrand(u: np.ndarray) -> np.ndarray:
        w = scaled_erfc_complex(a - 1j * u)
        return (n / 2.0 - u * u) - 1j * s2n * u + n * np.log(w)

    peak = float(log_integrand(np.array([0.0]))[0].real)

    def scaled(u: np.ndarray) -> np.ndarray:
        return np.exp(log_integrand(u) - peak)

    # truncate where the scaled integrand has dropped 40 nats, by doubling
    cut = 1.0
    while log_integrand(np.array([cut]))[0].real - peak > -40.0:
        cut *= 2.0
    res = integrate(scaled, -cut, cut, q)
    total = complex(res.value)
    imag_residual = abs(total.imag) / abs(total.real)

    log_prefactor = (
        log_gamma(n + 2.0)
        - log_gamma(n / 2.0 + 1.0)
        + (n - 1) / 2.0 * math.log(math.pi)
        - 1.5 * n * math.log(2.0)
    )
    value = LogScaled.from_log(log_prefactor + peak + math.log(total.real))
    return BoundRecord(
        dimension=n,
        method="rogers",
        value=value,
        diagnostics={
            "imag_residual": imag_residual,
            "truncation": cut,
            "quad_error": res.error,
            "quad_nevals": res.nevals,
        },
    )


# ---------------------------------------------------------------------------
# Levenshtein
# ---------------------------------------------------------------------------


def levenshtein_bound(n: int) -> BoundRecord:
    """j_(n/2)^n / ((n/2)!^2 4^n), exact in log space."""
    if n < 1 or n > 800:
        raise ValueError("levenshtein_bound requires 1 <= n <= 800")
    j = bessel_first_zero(n / 2.0)
    logv = n * math.log(j) - 2.0 * log_gamma(n / 2.0 + 1.0) - n * math.log(4.0)
    return BoundRecord(
        dimension=n,
        method="levenshtein",
        value=LogScaled.from_log(logv),
        diagnostics={"bessel_first_zero": j},
    )


# ---------------------------------------------------------------------------
# Spherical-code bound and its two packing descendants
# ---------------------------------------------------------------------------


def kl_spherical_code_bound(
    n: int, theta: float, ctx: GegenbauerContext | None = None
) -> tuple[LogScaled, int]:
    """Upper bound on the size of a spherical code with minimal angle theta.

    Uses the smallest degree k whose largest Gegenbauer root t_(n,k)
    reaches cos(theta):

        A(n, theta) <= 4 C(k+n-2, k) / (1 - t_(n,k+1)).

    Returns the bound and the k used.
    """
    if n < 2:
        raise ValueError("kl_spherical_code_bound requires n >= 2")
    if not 0.0 < theta <= math.pi:
        raise ValueError("theta must lie in (0, pi]")
    ctx = ctx or shared_context(n)
    # absolute slack so that boundary angles (cos(pi/2) = 6.1e-17 in floats,
    # cos theta landing exactly on a root) select the intended degree
    c = math.cos(theta) - 1e-12
    k = 1
    while ctx.largest_root(k) < c:
        k += 1
        if k > ctx.degree_cap:
            raise NonConvergenceError("k-search exhausted the degree cap")
    logv = (
        math.log(4.0)
        + log_binomial(k + n - 2, k)
        - math.log(1.0 - ctx.largest_root(k + 1))
    )
    return LogScaled.from_log(logv), k


def _kl_objective(n: int, ctx: GegenbauerContext, k: int) -> float:
    # log of ((1 - t_(n+1,k))/2)^(n/2) * 4 C(k+n-1, k) / (1 - t_(n+1,k+1));
    # ctx must be the (n+1)-dimensional context
    t_k = ctx.largest_root(k)
    t_k1 = ctx.largest_root(k + 1)
    return (
        (n / 2.0) * math.log((1.0 - t_k) / 2.0)
        + math.log(4.0)
        + log_binomial(k + n - 1, k)
        - math.log(1.0 - t_k1)
    )


def kl_bound(n: int) -> BoundRecord:
    """Packing bound via codes on S^n: scan k upward to the first local
    minimum of the log objective, as the infimum is attained there."""
    if n < 1 or n > 800:
        raise ValueError("kl_bound requires 1 <= n <= 800")
    ctx = shared_context(n + 1)
    prev = _kl_objective(n, ctx, 1)
    k = 2
    while k <= ctx.degree_cap:
        cur = _kl_objective(n, ctx, k)
        if cur > prev:
            k_star = k - 1
            certificate = {
                "objective_prev": _kl_objective(n, ctx, k_star - 1)
                if k_star > 1
                else None,
                "objective": prev,
                "objective_next": cur,
            }
            return BoundRecord(
                dimension=n,
                method="kl",
                value=LogScaled.from_log(prev),
                k_star=k_star,
                theta_star=math.acos(ctx.largest_root(k_star)),
                diagnostics=certificate,
            )
        prev = cur
        k += 1
    raise NonConvergenceError("kl_bound k-search found no local minimum")


def _cz_objective(n: int, ctx: GegenbauerContext, k: int) -> float:
    t_k = ctx.largest_root(k)
    t_k1 = ctx.largest_root(k + 1)
    return (
        (n / 2.0) * math.log((1.0 - t_k) / 2.0)
        + math.log(4.0)
        + log_binomial(k + n - 2, k)
        - math.log(1.0 - t_k1)
    )


def cz_bound(n: int) -> BoundRecord:
    """Packing bound via codes on S^(n-1), restricted to code angles
    theta >= pi/3 (equivalently t_(n,k) <= 1/2), minimized over that range."""
    if n < 1 or n > 800:
        raise ValueError("cz_bound requires 1 <= n <= 800")
    if n == 1:
        # needs the Gegenbauer family on S^0, which does not exist; the
        # kl route through S^1 stays available at n = 1
        raise ValueError("cz_bound is undefined for n = 1")
    ctx = shared_context(n)
    best = None
    best_k = None
    k = 1
    while ctx.largest_root(k) <= 0.5:
        val = _cz_objective(n, ctx, k)
        if best is None or val < best:
            best, best_k = val, k
        k += 1
        if k > ctx.degree_cap:
            raise NonConvergenceError("cz_bound k-search exhausted the degree cap")
    if best is None:
        raise NonConvergenceError(f"empty feasible k-range at n={n}")
    feasible_max = k - 1
    certificate = {
        "objective_prev": _cz_objective(n, ctx, best_k - 1) if best_k > 1 else None,
        "objective": best,
        "objective_next": _cz_objective(n, ctx, best_k + 1)
        if best_k < feasible_max
        else None,
        "feasible_k_max": feasible_max,
    }
    return BoundRecord(
        dimension=n,
        method="cz",
        value=LogScaled.from_log(best),
        k_star=best_k,
        theta_star=math.acos(ctx.largest_root(best_k)),
        diagnostics=certificate,
    )


# ---------------------------------------------------------------------------
# Cap coverage, the asymptotic rate, and the historical comparison
# ---------------------------------------------------------------------------


def cap_density(
    n: int, theta: float, count: float, quad: Quadrature | None = None
) -> float:
    """Fraction of S^(n-1) covered by `count` caps of angular radius theta/2:

        count * int_0^(theta/2) sin^(n-2) x dx / int_0^pi sin^(n-2) x dx
    """
    if n < 2:
        raise ValueError("cap_density requires n >= 2")
    if not 0.0 < theta <= math.pi:
        raise ValueError("theta must lie in (0, pi]")
    if count <= 0:
        raise ValueError("count must be positive")
    q = quad or Quadrature(rel_tol=1e-12)
    m = n - 2
    num = integrate(lambda x: np.sin(x) ** m, 0.0, theta / 2.0, q)
    den = integrate(lambda x: np.sin(x) ** m, 0.0, math.pi, q)
    return count * num.value / den.value


def _rate_objective(theta: float) -> float:
    # log2 of the per-dimension factor: the cap shrinkage sin(theta/2)
    # combined with the entropy-type exponent of the code-size bound
    s = math.sin(theta)
    hi = (1.0 + s) / (2.0 * s)
    lo = (1.0 - s) / (2.0 * s)
    ent = hi * math.log(hi) - (lo * math.log(lo) if lo > 0.0 else 0.0)
    return math.log2(math.sin(theta / 2.0)) + ent / math.log(2.0)


def optimize_asymptotic_rate() -> RateResult:
    """Minimize the asymptotic per-dimension exponent over theta in (0, pi/2].

    Golden-section search to 1e-9; the minimizer sits near 1.0995 and the
    minimum near -0.5990 bits per dimension.
    """
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = 1e-6, math.pi / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = _rate_objective(c), _rate_objective(d)
    while b - a > 1e-9:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = _rate_objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = _rate_objective(d)
    theta = 0.5 * (a + b)
    return RateResult(theta_star=theta, rate_log2=_rate_objective(theta))


def best_method(n: int) -> str:
    """Which of the three historical bounds is smallest at dimension n.

    Ties break toward rogers, then levenshtein.
    """
    if not 4 <= n <= 800:
        raise ValueError("best_method requires 4 <= n <= 800")
    records = {
        "rogers": rogers_bound(n),
        "levenshtein": levenshtein_bound(n),
        "kl": kl_bound(n),
    }
    return min(HISTORICAL_METHODS, key=lambda m: records[m].value.log_value)
