"""Log-scaled arithmetic, quadrature, and special-function primitives.

Everything downstream (density bounds up to dimension 600, hyperbolic
volumes, overlap integrals) funnels through this module, so all magnitudes
are either kept as natural logs (:class:`LogScaled`) or scaled analytically
before a single ``exp`` is taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import betainc, betaln, jv, wofz

__all__ = [
    "LogScaled",
    "Quadrature",
    "QuadResult",
    "NonConvergenceError",
    "IntegrandError",
    "integrate",
    "integrate_real_line",
    "log_gamma",
    "log_binomial",
    "scaled_erfc_complex",
    "bessel_j",
    "bessel_first_zero",
    "incomplete_beta",
]

LN10 = math.log(10.0)

# Nats below the peak at which infinite-interval integrands are truncated.
TAIL_NATS = 40.0


class NonConvergenceError(RuntimeError):
    """A quadrature or root search failed to reach its tolerance."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class IntegrandError(ValueError):
    """The integrand produced NaN where it was sampled."""


# ---------------------------------------------------------------------------
# Log-scaled nonnegative reals
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=False)
class LogScaled:
    """A nonnegative real stored as the natural log of its magnitude.

    Densities in high dimension reach 1e-100 and hyperbolic volumes reach
    e^(n r); both live comfortably here while ordinary binary floats do not.
    Multiplication and division are addition and subtraction of
    ``log_value``; ``is_zero`` short-circuits them.
    """

    is_zero: bool
    log_value: float

    @staticmethod
    def zero() -> "LogScaled":
        return LogScaled(True, -math.inf)

    @staticmethod
    def from_log(log_value: float) -> "LogScaled":
        return LogScaled(False, float(log_value))

    @staticmethod
    def from_float(x: float) -> "LogScaled":
        if x < 0:
            raise ValueError("LogScaled represents nonnegative quantities")
        if x == 0:
            return LogScaled.zero()
        return LogScaled(False, math.log(x))

    def __mul__(self, other: "LogScaled") -> "LogScaled":
        if self.is_zero or other.is_zero:
            return LogScaled.zero()
        return LogScaled(False, self.log_value + other.log_value)

    def __truediv__(self, other: "LogScaled") -> "LogScaled":
        if other.is_zero:
            raise ZeroDivisionError("division by LogScaled zero")
        if self.is_zero:
            return LogScaled.zero()
        return LogScaled(False, self.log_value - other.log_value)

    def power(self, p: float) -> "LogScaled":
        if self.is_zero:
            if p <= 0:
                raise ValueError("0 ** nonpositive power")
            return LogScaled.zero()
        return LogScaled(False, p * self.log_value)

    @property
    def log10(self) -> float:
        return -math.inf if self.is_zero else self.log_value / LN10

    def to_float(self) -> float:
        if self.is_zero:
            return 0.0
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf

    def mantissa_exponent(self) -> tuple[float, int]:
        """Scientific-notation split: mantissa in [1, 10) and decimal exponent."""
        if self.is_zero:
            raise ValueError("zero has no scientific representation")
        l10 = self.log_value / LN10
        e = math.floor(l10)
        m = 10.0 ** (l10 - e)
        if m >= 10.0:  # roundoff at a decade boundary
            m /= 10.0
            e += 1
        if m < 1.0:
            m *= 10.0
            e -= 1
        return m, e

    # ordering treats zero as smaller than every positive value
    def _key(self) -> float:
        return -math.inf if self.is_zero else self.log_value

    def __lt__(self, other: "LogScaled") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "LogScaled") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "LogScaled") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "LogScaled") -> bool:
        return self._key() >= other._key()


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Quadrature:
    """Quadrature configuration shared by every integral in the package."""

    scheme: str = "adaptive_gauss_legendre"
    rel_tol: float = 1e-11
    abs_tol: float = 0.0
    max_refinements: int = 2000

    def __post_init__(self):
        if self.scheme not in ("adaptive_gauss_legendre", "tanh_sinh"):
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")


@dataclass(frozen=True)
class QuadResult:
    value: complex | float
    error: float
    nevals: int
    converged: bool


DEFAULT_QUAD = Quadrature()


@lru_cache(maxsize=32)
def _gl_rule(m: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(m)
    return x, w


def _check_finite(vals: np.ndarray) -> None:
    if not np.all(np.isfinite(vals)):
        raise IntegrandError("integrand returned a non-finite value")


def _panel(f, a: float, b: float) -> tuple[complex, float, int]:
    """Estimate over one panel with nested 16/32-point Gauss-Legendre."""
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    x16, w16 = _gl_rule(16)
    x32, w32 = _gl_rule(32)
    v16 = np.asarray(f(mid + half * x16))
    v32 = np.asarray(f(mid + half * x32))
    _check_finite(v16)
    _check_finite(v32)
    coarse = half * np.sum(w16 * v16)
    fine = half * np.sum(w32 * v32)
    return complex(fine), abs(fine - coarse), 48


def _integrate_gl(f, a: float, b: float, q: Quadrature) -> QuadResult:
    est, err, nev = _panel(f, a, b)
    panels = [(a, b, est, err)]
    total, total_err = est, err
    for _ in range(q.max_refinements):
        if total_err <= max(q.rel_tol * abs(total), q.abs_tol):
            break
        # split the worst panel; ties resolve to the leftmost for determinism
        worst = max(range(len(panels)), key=lambda i: (panels[i][3], -panels[i][0]))
        pa, pb, pest, perr = panels.pop(worst)
        pm = 0.5 * (pa + pb)
        le, lerr, ln_ = _panel(f, pa, pm)
        re_, rerr, rn = _panel(f, pm, pb)
        nev += ln_ + rn
        panels.append((pa, pm, le, lerr))
        panels.append((pm, pb, re_, rerr))
        total = sum(p[2] for p in panels)
        total_err = sum(p[3] for p in panels)
    converged = total_err <= max(q.rel_tol * abs(total), q.abs_tol)
    value = total.real if total.imag == 0 else total
    return QuadResult(value, float(total_err), nev, converged)


@lru_cache(maxsize=32)
def _ts_nodes(level: int) -> tuple[np.ndarray, np.ndarray]:
    """tanh-sinh abscissae/weights on (-1,1) at mesh h = 2^-level.

    Only the nodes new to this level are returned (trapezoid refinement).
    """
    h = 2.0 ** (-level)
    kmax = int(math.ceil(6.0 / h))
    if level == 0:
        k = np.arange(-kmax, kmax + 1)
    else:
        k = np.arange(-kmax, kmax + 1)
        k = k[k % 2 == 1]  # odd multiples of h are new at this level
    t = k * h
    st = 0.5 * math.pi * np.sinh(t)
    x = np.tanh(st)
    w = 0.5 * math.pi * np.cosh(t) / np.cosh(st) ** 2
    # keep clear of the interval ends so mapped abscissae never round onto them
    keep = 1.0 - np.abs(x) > 1e-15
    return x[keep], w[keep]


def _integrate_tanh_sinh(f, a: float, b: float, q: Quadrature) -> QuadResult:
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    total = 0.0 + 0.0j
    nev = 0
    prev = None
    err = math.inf
    max_level = min(12, max(3, q.max_refinements))
    for level in range(max_level + 1):
        x, w = _ts_nodes(level)
        vals = np.asarray(f(mid + half * x))
        _check_finite(vals)
        nev += len(x)
        h = 2.0 ** (-level)
        if level == 0:
            total = h * np.sum(w * vals)
        else:
            total = 0.5 * total + h * np.sum(w * vals)
        est = half * total
        if prev is not None:
            err = abs(est - prev)
            if err <= max(q.rel_tol * abs(est), q.abs_tol) and level >= 2:
                value = est.real if est.imag == 0 else complex(est)
                return QuadResult(value, float(err), nev, True)
        prev = est
    value = prev.real if prev.imag == 0 else complex(prev)
    return QuadResult(value, float(err), nev, False)


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    q: Quadrature = DEFAULT_QUAD,
    *,
    raise_on_failure: bool = True,
) -> QuadResult:
    """Integrate a vectorized real- or complex-valued ``f`` over [a, b].

    ``f`` receives an ndarray of abscissae and must return the values
    elementwise.  The result carries an error estimate; if it exceeds
    ``max(rel_tol*|I|, abs_tol)`` a :class:`NonConvergenceError` is raised
    (or, with ``raise_on_failure=False``, the unconverged result returned).
    Identical inputs always produce bit-identical outputs.
    """
    if a == b:
        return QuadResult(0.0, 0.0, 0, True)
    if a > b:
        res = integrate(f, b, a, q, raise_on_failure=raise_on_failure)
        return QuadResult(-res.value, res.error, res.nevals, res.converged)
    if q.scheme == "tanh_sinh":
        res = _integrate_tanh_sinh(f, a, b, q)
    else:
        res = _integrate_gl(f, a, b, q)
    if not res.converged and raise_on_failure:
        raise NonConvergenceError(
            f"quadrature did not reach tolerance on [{a}, {b}] "
            f"(error estimate {res.error:.3e})",
            partial=res,
        )
    return res


def integrate_real_line(
    f: Callable[[np.ndarray], np.ndarray],
    q: Quadrature = DEFAULT_QUAD,
    *,
    peak: float = 0.0,
) -> QuadResult:
    """Integrate over (-inf, inf) after truncating the tails.

    The interval is cut where log|f| falls :data:`TAIL_NATS` nats below its
    value near ``peak``; the cut is located by outward doubling.  The caller
    is expected to pass an integrand already scaled so that the peak value
    is of order one.
    """
    fpeak = abs(complex(np.asarray(f(np.array([peak])))[0]))
    if fpeak == 0 or not math.isfinite(fpeak):
        raise IntegrandError("integrand peak is zero or non-finite")
    floor = fpeak * math.exp(-TAIL_NATS)

    def cut(direction: float) -> float:
        u = 1.0
        for _ in range(60):
            val = abs(complex(np.asarray(f(np.array([peak + direction * u])))[0]))
            if val < floor:
                return peak + direction * u
            u *= 2.0
        raise NonConvergenceError("could not locate an integrable tail")

    return integrate(f, cut(-1.0), cut(+1.0), q)


# ---------------------------------------------------------------------------
# Special functions
# ---------------------------------------------------------------------------


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if x <= 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def log_binomial(a: int, b: int) -> float:
    """ln C(a, b) for integers 0 <= b <= a, via log-gamma."""
    if a < 0 or b < 0:
        raise ValueError("log_binomial requires nonnegative integers")
    if b > a:
        raise ValueError(f"log_binomial requires b <= a, got ({a}, {b})")
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def scaled_erfc_complex(z):
    """exp(z^2) * erfc(z) for complex z (entire, overflow-free).

    Equals the Faddeeva function w evaluated at iz; accepts scalars or
    arrays.
    """
    return wofz(1j * np.asarray(z, dtype=complex))


def bessel_j(nu: float, x) -> float | np.ndarray:
    """Bessel function of the first kind J_nu(x), real order nu >= 0."""
    if nu < 0:
        raise ValueError("bessel_j requires nu >= 0")
    out = jv(nu, x)
    if not np.all(np.isfinite(out)):
        raise NonConvergenceError(f"bessel_j failed at nu={nu}")
    return out


def _first_zero_seed(nu: float) -> float:
    # Large-order expansion of the first positive zero; crude interpolation
    # below nu = 1 where the expansion degrades (Newton cleans it up).
    if nu < 1.0:
        return 2.404826 + nu * (3.831706 - 2.404826)
    c = nu ** (1.0 / 3.0)
    return (
        nu
        + 1.8557571 * c
        + 1.033150 / c
        - 0.00397 / nu
        - 0.0908 / (c ** 5)
        + 0.043 / (c ** 7)
    )


def _newton_in_bracket(nu: float, lo: float, hi: float) -> float:
    """Polish a sign-change bracket J(lo) > 0 > J(hi) by safeguarded Newton."""
    x = 0.5 * (lo + hi)
    for _ in range(100):
        fx = jv(nu, x)
        if fx > 0:
            lo = x
        else:
            hi = x
        dfx = 0.5 * (jv(nu - 1, x) - jv(nu + 1, x))
        xn = x - fx / dfx if dfx != 0 else 0.5 * (lo + hi)
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= 1e-14 * x:
            return xn
        x = xn
    if hi - lo <= 1e-12 * x:
        return 0.5 * (lo + hi)
    raise NonConvergenceError(f"first Bessel zero did not converge at nu={nu}")


def _first_zero_by_scan(nu: float) -> float:
    """Ascending sign scan from nu (J_nu > 0 on (0, j_nu) and j_nu > nu)."""
    lo = max(nu, 1e-3)
    # comfortably below both the gap to the second zero (~1.9 nu^(1/3)) and pi
    step = max(0.02, 0.05 * max(1.0, nu) ** (1.0 / 3.0))
    if jv(nu, lo) <= 0:
        raise NonConvergenceError(f"unexpected sign at the scan start, nu={nu}")
    x = lo
    for _ in range(100000):
        x += step
        if jv(nu, x) < 0:
            return _newton_in_bracket(nu, x - step, x)
    raise NonConvergenceError(f"sign scan found no zero at nu={nu}")


def bessel_first_zero(nu: float) -> float:
    """First positive zero j_nu of J_nu, for 0 <= nu <= 400.

    Seeded by the large-order expansion and polished by Newton; a positivity
    scan below the root certifies it is the *first* zero, with an ascending
    sign-scan fallback if not.  J_nu is positive on (0, j_nu).
    """
    if nu < 0 or nu > 400:
        raise ValueError("bessel_first_zero requires 0 <= nu <= 400")
    seed = _first_zero_seed(nu)
    # local walk around the seed; the step stays below the first-to-second
    # zero gap (~1.9 nu^(1/3)) so the negative well cannot be stepped over
    step = max(0.05, 0.2 * max(1.0, nu) ** (1.0 / 3.0))

    root = None
    x = seed
    fx = jv(nu, x)
    if fx <= 0:  # seed overshot: back down into the positive run
        for _ in range(400):
            hi = x
            x -= step
            if x <= 0:
                break
            fx = jv(nu, x)
            if fx > 0:
                root = _newton_in_bracket(nu, x, hi)
                break
    else:
        lo = x
        for _ in range(400):
            x += step
            if jv(nu, x) < 0:
                root = _newton_in_bracket(nu, lo, x)
                break
            lo = x
    if root is not None:
        # certify firstness: no sign change below the root
        probes = np.linspace(0.02 * root, 0.98 * root, 48)
        if np.all(jv(nu, probes) > -1e-12):
            return root
    return _first_zero_by_scan(nu)


def incomplete_beta(u: float, alpha: float, beta: float) -> float:
    """B(u; alpha, beta) = integral_0^u t^(a-1) (1-t)^(b-1) dt (unregularized)."""
    if not 0.0 <= u <= 1.0:
        raise ValueError("incomplete_beta requires u in [0, 1]")
    if alpha <= 0 or beta <= 0:
        raise ValueError("incomplete_beta requires alpha, beta > 0")
    return float(betainc(alpha, beta, u) * math.exp(betaln(alpha, beta)))
