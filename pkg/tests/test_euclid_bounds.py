import math

import numpy as np
import pytest

from packbounds.cli import render_round_up
from packbounds.euclid_bounds import (
    best_method,
    cap_density,
    cz_bound,
    kl_bound,
    kl_spherical_code_bound,
    levenshtein_bound,
    optimize_asymptotic_rate,
    rogers_bound,
    shared_context,
)

# golden values, rounded up to 4 significant digits
GOLDEN_SPOT = {
    ("rogers", 12): "8.759e-2",
    ("rogers", 48): "1.128e-6",
    ("rogers", 600): "1.090e-88",
    ("levenshtein", 12): "1.065e-1",
    ("levenshtein", 600): "5.847e-94",
    ("kl", 12): "1.038e0",
    ("kl", 120): "2.452e-17",
    ("kl", 240): "1.542e-37",
    ("cz", 12): "9.666e-1",
    ("cz", 120): "2.051e-17",
    ("cz", 600): "5.036e-100",
}

_FUNCS = {
    "rogers": rogers_bound,
    "levenshtein": levenshtein_bound,
    "kl": kl_bound,
    "cz": cz_bound,
}


@pytest.mark.parametrize("method,n", sorted(GOLDEN_SPOT))
def test_golden_spot_values(method, n):
    rec = _FUNCS[method](n)
    assert render_round_up(rec.value, 4) == GOLDEN_SPOT[(method, n)]


def test_levenshtein_dimension_one_sentinel():
    rec = levenshtein_bound(1)
    assert abs(rec.value.log_value) < 1e-12


def test_rogers_imaginary_residual_small():
    for n in (2, 7, 12, 48, 129, 600):
        rec = rogers_bound(n)
        assert rec.diagnostics["imag_residual"] <= 1e-8


def test_rogers_domain():
    with pytest.raises(ValueError):
        rogers_bound(1)
    with pytest.raises(ValueError):
        rogers_bound(1001)


# ---------------------------------------------------------------------------
# spherical-code bound
# ---------------------------------------------------------------------------


def test_code_bound_right_angle_n4():
    b, k = kl_spherical_code_bound(4, math.pi / 2)
    assert k == 1
    assert math.isclose(b.to_float(), 24.0, rel_tol=1e-12)


def test_code_bound_pi_third_n4():
    b, k = kl_spherical_code_bound(4, math.pi / 3)
    assert k == 2
    expected = 24.0 / (1.0 - 1.0 / math.sqrt(2.0))
    assert math.isclose(b.to_float(), expected, rel_tol=1e-12)


def test_code_bound_pi_third_n3():
    b, k = kl_spherical_code_bound(3, math.pi / 3)
    assert k == 2
    expected = 12.0 / (1.0 - math.sqrt(3.0 / 5.0))
    assert math.isclose(b.to_float(), expected, rel_tol=1e-12)


# ---------------------------------------------------------------------------
# k-searches
# ---------------------------------------------------------------------------


def test_k_search_certificates():
    for n in (12, 36, 120, 240, 600):
        for rec in (kl_bound(n), cz_bound(n)):
            d = rec.diagnostics
            assert d["objective_next"] is None or d["objective"] < d["objective_next"]
            if rec.k_star > 1:
                assert d["objective_prev"] > d["objective"]


def test_cz_k_star_feasible():
    for n in (8, 64, 333):
        rec = cz_bound(n)
        ctx = shared_context(n)
        assert ctx.largest_root(rec.k_star) <= 0.5
        # recomputing the objective at k_star reproduces the stored value
        assert math.isclose(rec.diagnostics["objective"], rec.value.log_value, rel_tol=1e-12)


def test_cz_undefined_at_one():
    with pytest.raises(ValueError):
        cz_bound(1)


def test_strict_improvement_and_ratio_corridor():
    cap = 1.2635**2
    for n in range(2, 129):
        kl = kl_bound(n).value.log_value
        cz = cz_bound(n).value.log_value
        ratio = math.exp(kl - cz)
        assert cz < kl, f"no strict improvement at n={n}"
        assert 1.0 < ratio < cap, f"ratio {ratio} outside corridor at n={n}"


def test_rate_corridor_at_600():
    per_dim = cz_bound(600).value.log_value / math.log(2.0) / 600.0
    assert -0.62 < per_dim < -0.50


# ---------------------------------------------------------------------------
# caps, rate, crossovers
# ---------------------------------------------------------------------------


def test_cap_density_hemispheres():
    for n in (2, 3, 7, 19):
        assert cap_density(n, math.pi, 2.0) == pytest.approx(1.0, rel=1e-12)


def test_cap_density_circle_arcs():
    assert cap_density(2, math.pi / 3, 6.0) == pytest.approx(1.0, rel=1e-12)


def test_cap_density_sphere_closed_form():
    expected = 6.0 * (1.0 - math.sqrt(2.0) / 2.0) / 2.0
    assert cap_density(3, math.pi / 2, 6.0) == pytest.approx(expected, rel=1e-12)


def test_cap_density_of_code_bound_at_most_one():
    # from n = 16 the closed-form code bound stays below the cap-packing
    # limit; at n = 8 it does not (coverage up to 3.1 at theta = 1.2), so
    # the sharper certified LP objective carries the check there
    for n in (16, 32, 64):
        for theta in (math.pi / 3, 1.2, math.pi / 2):
            bound, _ = kl_spherical_code_bound(n, theta)
            frac = cap_density(n, theta, bound.to_float())
            assert frac <= 1.0 + 1e-9


def test_cap_density_of_lp_objective_at_most_one_n8():
    from packbounds.spherical_lp import LPProblem, lp_solve_spherical

    for theta in (math.pi / 3, 1.2, math.pi / 2):
        cert = lp_solve_spherical(LPProblem(n=8, theta=theta, degree=20))
        assert cert.certified
        assert cap_density(8, theta, cert.objective) <= 1.0 + 1e-9


def test_rate_optimization():
    res = optimize_asymptotic_rate()
    assert abs(res.theta_star - 1.0995) < 1e-3
    assert abs(res.rate_log2 - (-0.5990)) < 1e-3
    assert 0 < res.theta_star <= math.pi / 2
    assert res.rate_log2 < 0


def test_rate_objective_at_right_angle():
    from packbounds.euclid_bounds import _rate_objective

    assert _rate_objective(math.pi / 2) == pytest.approx(-0.5, abs=1e-14)


def test_best_method_crossovers():
    assert best_method(50) == "rogers"
    assert best_method(100) == "levenshtein"
    assert best_method(120) == "kl"


def test_best_method_domain():
    with pytest.raises(ValueError):
        best_method(3)
    with pytest.raises(ValueError):
        best_method(801)
