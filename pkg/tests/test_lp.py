import json
import math

import numpy as np
import pytest

from packbounds.euclid_bounds import cz_bound, kl_spherical_code_bound, shared_context
from packbounds.spherical_lp import (
    LPCertificate,
    LPProblem,
    certificate_from_json,
    certificate_to_json,
    chebyshev_grid,
    euclid_bound_from_certificate,
    lp_solve_spherical,
    simplex_minimize,
    verify_certificate,
)


# ---------------------------------------------------------------------------
# simplex core
# ---------------------------------------------------------------------------


def test_simplex_basic():
    # min -x - y st x + 2y <= 4, 3x + y <= 6 -> vertex (8/5, 6/5)
    res = simplex_minimize(
        np.array([-1.0, -1.0]), np.array([[1.0, 2.0], [3.0, 1.0]]), np.array([4.0, 6.0])
    )
    assert res.status == "optimal"
    assert np.allclose(res.x, [8 / 5, 6 / 5])
    assert math.isclose(res.objective, -14 / 5, rel_tol=1e-12)


def test_simplex_negative_rhs_phase1():
    # min x1 + x2 st x1 >= 1 (written as -x1 <= -1)
    res = simplex_minimize(np.array([1.0, 1.0]), np.array([[-1.0, 0.0]]), np.array([-1.0]))
    assert res.status == "optimal"
    assert np.allclose(res.x, [1.0, 0.0])


def test_simplex_infeasible():
    # x <= -1 with x >= 0 is empty
    res = simplex_minimize(np.array([1.0]), np.array([[1.0]]), np.array([-1.0]))
    assert res.status == "infeasible"


def test_simplex_unbounded():
    # min -x with x only bounded above by nothing
    res = simplex_minimize(np.array([-1.0]), np.array([[-1.0]]), np.array([1.0]))
    assert res.status == "unbounded"


def test_simplex_degenerate_determinism():
    rng = np.random.default_rng(3)
    A = rng.uniform(-1, 1, size=(40, 12))
    b = np.abs(rng.uniform(0, 1, size=40))
    c = rng.uniform(-1, 1, size=12)
    r1 = simplex_minimize(c, A, b)
    r2 = simplex_minimize(c, A, b)
    assert r1.status == r2.status and np.array_equal(r1.x, r2.x)


def test_simplex_dual_readout():
    # the slack reduced costs solve the dual: here max y st y <= 1
    res = simplex_minimize(np.array([-1.0]), np.array([[1.0], [0.5]]), np.array([1.0, 2.0]))
    assert res.status == "optimal"
    assert math.isclose(res.slack_reduced_costs[0], 1.0, rel_tol=1e-12)
    assert math.isclose(res.slack_reduced_costs[1], 0.0, abs_tol=1e-12)


# ---------------------------------------------------------------------------
# problem construction
# ---------------------------------------------------------------------------


def test_grid_includes_endpoints():
    g = chebyshev_grid(math.pi / 2, 33)
    assert g[0] == -1.0
    assert abs(g[-1] - math.cos(math.pi / 2)) < 1e-15
    assert np.all(np.diff(g) >= 0)


def test_problem_validation():
    with pytest.raises(ValueError):
        LPProblem(n=1, theta=math.pi / 2, degree=4)
    with pytest.raises(ValueError):
        LPProblem(n=3, theta=0.0, degree=4)
    with pytest.raises(ValueError):
        LPProblem(n=3, theta=math.pi / 2, degree=0)
    with pytest.raises(ValueError):
        LPProblem(n=3, theta=math.pi / 2, degree=4, constraint_grid=np.array([-1.0, 0.5]))
    with pytest.raises(ValueError):
        LPProblem(n=3, theta=math.pi / 2, degree=4, constraint_grid=np.array([-0.5, 0.0]))


# ---------------------------------------------------------------------------
# solves
# ---------------------------------------------------------------------------


def test_lp_antipodal():
    cert = lp_solve_spherical(LPProblem(n=3, theta=math.pi, degree=4))
    assert cert.certified
    assert abs(cert.objective - 2.0) < 1e-6


def test_lp_cross_polytope_n3():
    cert = lp_solve_spherical(LPProblem(n=3, theta=math.pi / 2, degree=8))
    assert cert.certified
    assert abs(cert.objective - 6.0) < 1e-4


def test_lp_beats_closed_form_n4_pi_third():
    cert = lp_solve_spherical(LPProblem(n=4, theta=math.pi / 3, degree=12))
    closed, _ = kl_spherical_code_bound(4, math.pi / 3)
    assert cert.certified
    assert cert.objective <= closed.to_float() * (1 + 1e-6)


@pytest.mark.parametrize("n", range(2, 13))
def test_lp_soundness_floors(n):
    # explicit codes give lower bounds the certified objective must respect
    for theta, floor in [
        (math.pi, 2.0),
        (math.pi / 2, 2.0 * n),
        (math.acos(-1.0 / n), n + 1.0),
    ]:
        cert = lp_solve_spherical(LPProblem(n=n, theta=theta, degree=14))
        assert cert.certified
        assert cert.objective >= floor - 1e-7


@pytest.mark.parametrize("n", range(3, 11))
@pytest.mark.parametrize("theta", [math.pi / 3, 0.35 * math.pi, math.pi / 2])
def test_lp_dominates_closed_form(n, theta):
    cert = lp_solve_spherical(LPProblem(n=n, theta=theta, degree=20))
    closed, _ = kl_spherical_code_bound(n, theta)
    assert cert.certified
    assert cert.objective <= closed.to_float() * (1 + 1e-6)


def test_degree_monotone_on_fixed_grid():
    theta = 2.0
    grid = chebyshev_grid(theta, 160)
    prev = None
    for d in (4, 6, 8, 10, 12):
        p = LPProblem(n=4, theta=theta, degree=d, constraint_grid=grid)
        cert = lp_solve_spherical(p, max_rounds=1)
        raw = cert.diagnostics["raw_objective"]
        if prev is not None:
            assert raw <= prev + 1e-9
        prev = raw


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def test_verify_linear_certificate_at_pi():
    # at n = 3 the degree-one basis polynomial is t itself, so (1, 1) is
    # exactly g(t) = 1 + t, whose single constraint value is g(-1) = 0
    p = LPProblem(n=3, theta=math.pi, degree=1)
    cert = LPCertificate(
        n=3,
        theta=math.pi,
        coefficients=(1.0, 1.0),
        objective=2.0,
        max_sign_residual=0.0,
        verification_grid_size=0,
        certified=True,
    )
    rep = verify_certificate(cert, p)
    assert rep.ok
    assert abs(rep.max_sign_residual) < 1e-14  # g(-1) = 0 exactly


def test_verify_flags_negative_coefficient():
    p = LPProblem(n=3, theta=math.pi / 2, degree=3)
    cert = LPCertificate(
        n=3,
        theta=math.pi / 2,
        coefficients=(1.0, -1e-3, 0.5, 0.0),
        objective=1.0,
        max_sign_residual=0.0,
        verification_grid_size=0,
        certified=True,
    )
    rep = verify_certificate(cert, p)
    assert not rep.coefficients_ok
    assert rep.min_coefficient_ratio < -1e-4


def test_verify_solver_output():
    p = LPProblem(n=3, theta=math.pi / 2, degree=8)
    cert = lp_solve_spherical(p)
    rep = verify_certificate(cert, p)
    assert rep.ok
    assert rep.max_sign_residual <= 1e-9 * cert.objective


def test_verify_flags_sign_violation():
    # a plainly positive function on the constraint interval
    p = LPProblem(n=3, theta=math.pi / 2, degree=2)
    cert = LPCertificate(
        n=3,
        theta=math.pi / 2,
        coefficients=(1.0, 0.0, 0.0),
        objective=1.0,
        max_sign_residual=0.0,
        verification_grid_size=0,
        certified=True,
    )
    rep = verify_certificate(cert, p)
    assert not rep.sign_ok


# ---------------------------------------------------------------------------
# Euclidean conversion
# ---------------------------------------------------------------------------


def test_euclid_conversion_linear_g():
    for n in (2, 5, 9):
        cert = LPCertificate(
            n=n,
            theta=math.pi,
            coefficients=(1.0, 1.0),
            objective=2.0,
            max_sign_residual=0.0,
            verification_grid_size=0,
            certified=True,
        )
        p = LPProblem(n=n, theta=math.pi, degree=1)
        val = euclid_bound_from_certificate(cert, p)
        assert math.isclose(val.to_float(), 2.0, rel_tol=1e-12)


def test_euclid_conversion_cross_polytope():
    p = LPProblem(n=3, theta=math.pi / 2, degree=8)
    cert = lp_solve_spherical(p)
    val = euclid_bound_from_certificate(cert, p)
    expected = 6.0 * (math.sqrt(2.0) / 2.0) ** 3
    assert math.isclose(val.to_float(), expected, rel_tol=1e-4)


def test_euclid_conversion_rejects_small_theta():
    p = LPProblem(n=3, theta=1.0, degree=4)
    cert = LPCertificate(
        n=3,
        theta=1.0,
        coefficients=(1.0, 1.0),
        objective=2.0,
        max_sign_residual=0.0,
        verification_grid_size=0,
        certified=True,
    )
    with pytest.raises(ValueError):
        euclid_bound_from_certificate(cert, p)


def test_euclid_conversion_rejects_uncertified():
    p = LPProblem(n=3, theta=math.pi, degree=1)
    cert = LPCertificate(
        n=3,
        theta=math.pi,
        coefficients=(1.0, 1.0),
        objective=2.0,
        max_sign_residual=0.0,
        verification_grid_size=0,
        certified=False,
    )
    with pytest.raises(ValueError):
        euclid_bound_from_certificate(cert, p)


def test_euclid_conversion_consistent_with_cz():
    # a synthetic certificate carrying the closed-form objective at the
    # cz-optimal angle must reproduce the cz value through the conversion
    for n in (6, 24, 64):
        rec = cz_bound(n)
        ctx = shared_context(n)
        theta = math.acos(ctx.largest_root(rec.k_star)) + 1e-13
        closed, k = kl_spherical_code_bound(n, theta)
        assert k == rec.k_star
        cert = LPCertificate(
            n=n,
            theta=theta,
            coefficients=(1.0,),
            objective=closed.to_float(),
            max_sign_residual=0.0,
            verification_grid_size=0,
            certified=True,
        )
        val = euclid_bound_from_certificate(cert, LPProblem(n=n, theta=theta, degree=1))
        assert math.isclose(val.log_value, rec.value.log_value, rel_tol=1e-9, abs_tol=1e-9)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_certificate_json_round_trip_bit_exact():
    p = LPProblem(n=4, theta=math.pi / 3, degree=10)
    cert = lp_solve_spherical(p)
    text = certificate_to_json(cert)
    back = certificate_from_json(text)
    assert back.n == cert.n and back.theta == cert.theta
    assert back.degree == cert.degree
    assert back.coefficients == cert.coefficients  # exact float equality
    assert back.objective == cert.objective
    assert back.max_sign_residual == cert.max_sign_residual
    assert back.certified == cert.certified
    assert certificate_to_json(back) == text


def test_certificate_json_schema_fields():
    cert = lp_solve_spherical(LPProblem(n=3, theta=math.pi, degree=2))
    doc = json.loads(certificate_to_json(cert))
    assert set(doc) == {
        "n",
        "theta",
        "degree",
        "coefficients",
        "objective",
        "residual",
        "certified",
    }
    assert len(doc["coefficients"]) == doc["degree"] + 1
