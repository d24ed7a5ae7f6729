import math

import numpy as np
import pytest

from packbounds.orthopoly import (
    GegenbauerContext,
    GegenbauerPoly,
    gegenbauer_eval,
    gegenbauer_eval_normalized,
    gegenbauer_largest_root,
    mean_on_sphere,
)


def test_degree_zero_is_one():
    for n in (2, 3, 4, 11):
        ctx = GegenbauerContext(n)
        for t in (-1.0, -0.3, 0.0, 0.99, 1.0):
            assert gegenbauer_eval(ctx, 0, t) == 1.0


def test_chebyshev_u_closed_form_n4():
    # alpha = 1 gives the second-kind Chebyshev family
    ctx = GegenbauerContext(4)
    assert math.isclose(gegenbauer_eval(ctx, 3, 0.5), 8 * 0.125 - 4 * 0.5, rel_tol=1e-14)
    ts = np.linspace(-1, 1, 17)
    for t in ts:
        u3 = 8 * t**3 - 4 * t
        assert math.isclose(gegenbauer_eval(ctx, 3, float(t)), u3, rel_tol=1e-12, abs_tol=1e-13)


def test_legendre_closed_form_n3():
    ctx = GegenbauerContext(3)
    assert math.isclose(gegenbauer_eval(ctx, 2, 0.0), -0.5, rel_tol=1e-14)
    for t in np.linspace(-1, 1, 9):
        p2 = (3 * t * t - 1) / 2
        assert math.isclose(gegenbauer_eval(ctx, 2, float(t)), p2, rel_tol=1e-12, abs_tol=1e-14)


def test_chebyshev_t_basis_n2():
    ctx = GegenbauerContext(2)
    for k in range(8):
        for t in np.linspace(-1, 1, 11):
            assert math.isclose(
                gegenbauer_eval(ctx, k, float(t)),
                math.cos(k * math.acos(float(t))),
                rel_tol=1e-10,
                abs_tol=1e-12,
            )


def test_normalized_matches_raw_ratio():
    for n in (2, 3, 5, 12):
        ctx = GegenbauerContext(n)
        for k in (1, 4, 9):
            at_one = gegenbauer_eval(ctx, k, 1.0)
            for t in (-0.8, 0.1, 0.65):
                assert math.isclose(
                    gegenbauer_eval_normalized(ctx, k, t),
                    gegenbauer_eval(ctx, k, t) / at_one,
                    rel_tol=1e-11,
                    abs_tol=1e-13,
                )
            assert math.isclose(
                math.log(abs(at_one)) if at_one > 0 else 0.0,
                ctx.log_value_at_one(k),
                rel_tol=1e-12,
                abs_tol=1e-12,
            )


def test_normalized_stays_bounded_at_extreme_degree():
    ctx = GegenbauerContext(600)
    vals = ctx.eval_normalized_table(300, np.linspace(-1, 1, 33))
    assert np.all(np.isfinite(vals))
    assert np.max(np.abs(vals)) <= 1.0 + 1e-12


# ---------------------------------------------------------------------------
# largest roots
# ---------------------------------------------------------------------------


def test_root_k1_is_zero():
    for n in (2, 3, 10, 101):
        assert gegenbauer_largest_root(GegenbauerContext(n), 1) == 0.0


def test_root_k2_closed_form():
    for n in (2, 3, 4, 9, 25):
        ctx = GegenbauerContext(n)
        got = gegenbauer_largest_root(ctx, 2)
        if n == 2:
            expected = math.cos(math.pi / 4)  # largest root of T_2
        else:
            expected = 1.0 / math.sqrt(n)
        assert math.isclose(got, expected, abs_tol=1e-12)


def test_root_k3_n4():
    assert math.isclose(
        gegenbauer_largest_root(GegenbauerContext(4), 3), 1 / math.sqrt(2), abs_tol=1e-12
    )


def test_roots_increasing_in_k():
    for n in range(3, 65):
        ctx = GegenbauerContext(n)
        roots = [ctx.largest_root(k) for k in range(1, 51)]
        assert all(a < b for a, b in zip(roots, roots[1:]))
        assert roots[-1] < 1.0


def test_root_cache_reuse_and_thread_safety():
    import concurrent.futures

    ctx = GegenbauerContext(17)
    with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
        res = list(pool.map(lambda k: ctx.largest_root(1 + (k % 30)), range(240)))
    for k in range(1, 31):
        assert ctx.largest_root(k) == res[k - 1]


def _root_by_polynomial_bisection(ctx, k):
    # independent route: bisect the normalized polynomial on (t0, 1)
    lo, hi = 0.0, 1.0
    f = lambda t: ctx.eval_normalized(k, t)  # noqa: E731
    # move lo up to the last sign change below 1
    grid = np.linspace(0.0, 1.0, 600)
    vals = [f(float(t)) for t in grid]
    idx = max(i for i in range(len(grid) - 1) if vals[i] * vals[i + 1] <= 0.0)
    lo, hi = float(grid[idx]), float(grid[idx + 1])
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if f(mid) * f(hi) <= 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@pytest.mark.parametrize("n", [3, 7, 14, 30])
@pytest.mark.parametrize("k", [2, 5, 11, 20])
def test_root_vs_polynomial_bisection(n, k):
    ctx = GegenbauerContext(n)
    assert math.isclose(
        ctx.largest_root(k), _root_by_polynomial_bisection(ctx, k), abs_tol=1e-10
    )


@pytest.mark.parametrize("n,k", [(3, 6), (8, 12), (24, 40), (64, 25)])
def test_root_value_and_no_sign_change_above(n, k):
    ctx = GegenbauerContext(n)
    r = ctx.largest_root(k)
    assert abs(ctx.eval_normalized(k, r)) <= 1e-8
    ts = np.linspace(r + 1e-9, 1.0, 1000)
    vals = ctx.eval_normalized(k, ts)
    assert np.all(vals > 0.0)


def test_degree_cap_enforced():
    ctx = GegenbauerContext(4, degree_cap=10)
    with pytest.raises(ValueError):
        ctx.largest_root(11)


# ---------------------------------------------------------------------------
# means over the sphere
# ---------------------------------------------------------------------------


def test_mean_of_constant_and_of_basis():
    for n in (2, 3, 6):
        ctx = GegenbauerContext(n)
        assert mean_on_sphere(ctx, lambda t: np.ones_like(t)) == pytest.approx(1.0, abs=1e-12)
        for k in (1, 2, 5):
            g = lambda t, k=k: np.asarray(ctx.eval_normalized(k, t))  # noqa: E731
            assert mean_on_sphere(ctx, g) == pytest.approx(0.0, abs=1e-11)


def test_mean_t_squared_flat_weight():
    ctx = GegenbauerContext(3)
    assert mean_on_sphere(ctx, lambda t: t * t) == pytest.approx(1.0 / 3.0, rel=1e-11)


@pytest.mark.parametrize("n", [2, 3, 6, 13])
def test_mean_basis_vs_quadrature(n):
    ctx = GegenbauerContext(n)
    poly = GegenbauerPoly(ctx, (0.7, 0.2, 0.4, 0.1, 0.05))
    assert poly.mean() == 0.7
    quad_path = mean_on_sphere(ctx, lambda t: np.asarray(poly(t)))
    assert math.isclose(quad_path, 0.7, rel_tol=1e-10)


def test_poly_value_at_one():
    ctx = GegenbauerContext(5)
    poly = GegenbauerPoly(ctx, (1.0, 0.5, 0.25))
    direct = sum(
        c * gegenbauer_eval(ctx, k, 1.0) for k, c in enumerate(poly.coefficients)
    )
    assert math.isclose(poly.value_at_one(), direct, rel_tol=1e-12)
    assert math.isclose(poly(1.0), direct, rel_tol=1e-12)
