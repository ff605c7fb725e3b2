import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kqlab.bergman import (BalancedCertificate, MomentTable, QuantizationSetup,
                           Spectrum, balanced_certify, balanced_setup,
                           bergman_series, closed_target, density_H,
                           fiber_moment, fiber_moment_direct,
                           generating_coefficients, generating_identity_check,
                           moment_table, psi_moment, sphere_monomial_integral)
from kqlab.curvature import BaseGeometry
from kqlab.errors import (BranchInvalid, OutOfDomain, PreconditionFailed,
                          QuadratureNonConvergent)
from kqlab.profiles import linear, log_affine, log_ball
from kqlab.special import product_shifted


def ball_setup(A, lam, d, d0, alpha, eps=None):
    base = BaseGeometry.from_coefficients(d, lam, a1=0.0, a2=0.0, eps=eps)
    return QuantizationSetup(d=d, d0=d0, twist=lam, domain="ball",
                             profile=log_ball(A), base=base, alpha=alpha)


def full_setup(profile, lam, d, d0, alpha, eps=None, base=None):
    if base is None:
        base = BaseGeometry.from_coefficients(d, lam, a1=0.0, a2=0.0, eps=eps)
    return QuantizationSetup(d=d, d0=d0, twist=lam, domain="fullspace",
                             profile=profile, base=base, alpha=alpha)


# -- density ----------------------------------------------------------------


def test_density_linear_family():
    s = full_setup(linear(1.0), 1.0, 1, 1, 2.0)
    for u in (0.0, 0.4, 1.7):
        assert density_H(s, u) == pytest.approx(math.exp(-2 * u) * (1 + u),
                                                rel=1e-14)


def test_density_no_damping_at_zero_level():
    s = ball_setup(0.5, 1.0, 1, 2, alpha=0.0)
    # H(0, u) = F'^(d0-1) (F' + uF'') (1 + u F'), no exponential factor
    u = 0.3
    Fp = 1 / (0.5 * (1 - u))
    Fpp = 1 / (0.5 * (1 - u) ** 2)
    assert density_H(s, u) == pytest.approx(Fp * (Fp + u * Fpp) * (1 + u * Fp),
                                            rel=1e-13)


def test_density_logball_closed_shape():
    # H = A^-n (1-u)^(alpha/A - n - 1) (A + (lam - A) u)^d
    A, lam, d, d0, alpha = 0.5, 1.0, 1, 2, 4.0
    n = d + d0
    s = ball_setup(A, lam, d, d0, alpha)
    for u in (0.1, 0.5, 0.9):
        expected = A ** -n * (1 - u) ** (alpha / A - n - 1) * (A + (lam - A) * u) ** d
        assert density_H(s, u) == pytest.approx(expected, rel=1e-12)


def test_density_domain_checks():
    s = ball_setup(0.5, 1.0, 1, 1, 2.0)
    with pytest.raises(OutOfDomain):
        density_H(s, 1.0)
    with pytest.raises(OutOfDomain):
        density_H(s, -0.2)


# -- moments ----------------------------------------------------------------


def test_psi_spot_values():
    s = ball_setup(0.5, 1.0, 1, 2, 4.0)
    assert psi_moment(s, 0, "closed") == pytest.approx(6.0 / 35.0, rel=1e-12)
    assert psi_moment(s, 0, "quadrature") == pytest.approx(6.0 / 35.0, rel=1e-12)

    s2 = full_setup(linear(1.0), 1.0, 1, 1, 2.0)
    assert psi_moment(s2, 0, "closed") == pytest.approx(0.75, rel=1e-13)
    assert psi_moment(s2, 0, "quadrature") == pytest.approx(0.75, rel=1e-12)

    s3 = full_setup(log_affine(-1.0, 1.0), -1.0, 2, 1, 2.0)
    assert psi_moment(s3, 1, "closed") == pytest.approx(0.05, rel=1e-13)
    assert psi_moment(s3, 1, "quadrature") == pytest.approx(0.05, rel=1e-12)


def _sweep_setups():
    for d0 in (1, 2, 3):
        for off in (0.6, 2.0, 5.5):  # ball windows need alpha > n*A
            yield ball_setup(0.5, 1.0, 1, d0, (1 + d0) * 0.5 + off)
            yield ball_setup(1.0, 1.0, 2, d0, (2 + d0) * 1.0 + off)
        for alpha in (0.7, 2.0, 5.0):
            yield full_setup(linear(1.0), 1.0, 1, d0, alpha)
        for alpha in (5.0, 9.0, 12.0):
            yield full_setup(log_affine(-1.0, 1.0), -1.0, 2, d0, alpha)


def test_psi_quadrature_matches_closed_forms_sweep():
    worst = 0.0
    for s in _sweep_setups():
        kmax = 12 if s.twist > 0 else min(12, int(s.alpha))
        for k in range(kmax + 1):
            closed = psi_moment(s, k, "closed")
            quad = psi_moment(s, k, "quadrature")
            worst = max(worst, abs(quad - closed) / closed)
    assert worst <= 1e-10


def test_psi_branch_windows():
    s = ball_setup(0.5, 1.0, 1, 2, alpha=1.2)  # alpha <= n*A = 1.5
    with pytest.raises(BranchInvalid):
        psi_moment(s, 0, "closed")
    with pytest.raises(BranchInvalid):
        psi_moment(s, 0, "quadrature")
    s3 = full_setup(log_affine(-1.0, 1.0), -1.0, 2, 1, 2.0)
    with pytest.raises(BranchInvalid):
        psi_moment(s3, 3, "closed")  # k beyond the finite spectrum


def test_moment_table_positive():
    s = ball_setup(0.5, 1.0, 1, 2, 4.0)
    table = moment_table(s, 8, "closed")
    assert table.K == 8 and len(table.entries) == 9
    assert all(e > 0 for e in table.entries)
    with pytest.raises(QuadratureNonConvergent):
        MomentTable(entries=(1.0, -0.5), method="closed", K=1)


def test_sphere_monomial_values():
    assert sphere_monomial_integral((0,)) == pytest.approx(2 * math.pi, rel=1e-15)
    assert sphere_monomial_integral((1, 0)) == pytest.approx(math.pi ** 2, rel=1e-15)


def test_fiber_moment_reduction_ratio():
    s = ball_setup(0.5, 1.0, 1, 2, 6.0)
    # Gamma prefactors make the ratio independent of the moment integrals
    assert fiber_moment(s, (1, 1)) / fiber_moment(s, (2, 0)) == pytest.approx(
        0.5, rel=1e-13)


def test_fiber_moment_direct_distribution_independence():
    s = ball_setup(0.5, 1.0, 1, 2, 6.0)
    i11 = fiber_moment_direct(s, (1, 1))
    i20 = fiber_moment_direct(s, (2, 0))
    gamma_11 = math.gamma(2) * math.gamma(2) / math.gamma(3)
    gamma_20 = math.gamma(3) * math.gamma(1) / math.gamma(3)
    assert i11 / gamma_11 == pytest.approx(i20 / gamma_20, rel=1e-6)
    assert i11 == pytest.approx(fiber_moment(s, (1, 1)), rel=1e-6)


# -- series -----------------------------------------------------------------


def test_series_at_zero_radius_is_pure_arithmetic():
    eps = lambda a: a + 1.5
    s = ball_setup(0.5, 1.0, 1, 2, 4.0, eps=eps)
    val = bergman_series(s, 0.0)
    assert val == pytest.approx(eps(4.0) / psi_moment(s, 0), rel=1e-12)


def test_series_constant_on_corollary_tuple():
    # rank-2 ball bundle over the degree-1 sphere at level 2, quadrature moments
    s = balanced_setup(1, 2, 2, "ball")
    for rho in (0.0, 0.3, 0.6, 0.9):
        assert bergman_series(s, rho, psi_method="quadrature") == pytest.approx(
            20.0 / 9.0, rel=1e-12)


def test_series_total_space_power_law():
    s = balanced_setup(1, 1, 3, "total")
    for rho in (0.0, 0.5, 1.5):
        assert bergman_series(s, rho) == pytest.approx(9.0, rel=1e-12)


def test_series_finite_sum_projective_branch():
    base = BaseGeometry.fubini_study_cpd(2)
    s = full_setup(log_affine(-1.0, 1.0), -1.0, 2, 1, 3.0, base=base)
    target = product_shifted(3.0, -1.0, 3)
    for rho in (0.0, 0.7, 2.5):
        assert bergman_series(s, rho) == pytest.approx(target, rel=1e-12)


def test_series_nonconstant_off_law():
    # perturbing the base Bergman law breaks constancy detectably
    eps = lambda a: a + 1.5 + 0.1 * (a > 4.0)
    s = ball_setup(0.5, 1.0, 1, 2, 4.0, eps=eps)
    vals = [bergman_series(s, rho) for rho in np.linspace(0, 0.9, 10)]
    assert max(vals) - min(vals) > 1e-3


# -- closed targets ---------------------------------------------------------


def test_closed_targets():
    s = balanced_setup(1, 2, 2, "ball")
    assert closed_target(s) == pytest.approx(20.0 / 9.0, rel=1e-14)

    base = BaseGeometry.from_coefficients(2, 1.0, a1=-3.0, a2=2.0)
    s2 = QuantizationSetup(d=2, d0=1, twist=1.0, domain="ball",
                           profile=log_ball(1.0), base=base, alpha=5.0)
    assert closed_target(s2) == pytest.approx(24.0, rel=1e-14)

    s3 = balanced_setup(1, 1, 3, "total")
    assert closed_target(s3) == pytest.approx(9.0, rel=1e-14)


def test_closed_target_windows():
    s = balanced_setup(2, 1, 1, "ball")
    closed_target(s)  # m = 1 > (1+r)A = 3/4 is fine
    bad = QuantizationSetup(d=1, d0=3, twist=1.0, domain="ball",
                            profile=log_ball(1.0), base=BaseGeometry.flat(1),
                            alpha=2.0)  # alpha <= n*A = 4
    with pytest.raises(BranchInvalid):
        closed_target(bad)


# -- balanced certification --------------------------------------------------


def test_balanced_examples():
    cert = balanced_certify(1, 2, 2)
    assert isinstance(cert, BalancedCertificate)
    assert cert.balanced
    assert cert.A == pytest.approx(1.0 / 3.0, rel=1e-15)
    assert cert.mu == pytest.approx(3.0, rel=1e-15)
    assert cert.target == pytest.approx(20.0 / 9.0, rel=1e-14)

    cert = balanced_certify(2, 1, 2)
    assert cert.balanced
    assert cert.A == pytest.approx(0.25, rel=1e-15)
    assert cert.target == pytest.approx(21.0 / 8.0, rel=1e-14)

    cert = balanced_certify(1, 1, 2, part="total")
    assert cert.balanced and cert.target == pytest.approx(4.0)


def test_balanced_preconditions():
    with pytest.raises(PreconditionFailed):
        balanced_certify(1, 1, 2, part="ball")  # kr > 1 required
    with pytest.raises(PreconditionFailed):
        balanced_certify(2, 1, 1, part="total")  # total space needs k = r = 1


def test_balanced_base_identity():
    # consistency of the base Bergman law: r - (1+r)A = 1/k
    for k, r in ((1, 2), (2, 1), (3, 2)):
        cert = balanced_certify(k, r, max(r, 1) + 1)
        assert cert.base_identity_gap <= 1e-15


# -- generating identities ----------------------------------------------------


def test_generating_identity_ball():
    A, d0 = 1.0 / 3.0, 2
    n = 1 + d0
    eps = lambda a: a + d0 * 1.0 - n * A
    s = ball_setup(A, 1.0, 1, d0, 2.0, eps=eps)
    rep = generating_identity_check(s, np.linspace(0.0, 0.9, 10))
    assert rep.max_deviation <= 1e-8
    # closed right side really is the binomial resummation
    rho, lhs, rhs = rep.rows[5]
    assert rhs == pytest.approx((1 - rho) ** (-2.0 / A), rel=1e-13)


def test_generating_identity_case_two_at_origin():
    eps = lambda a: a + 1.0
    s = full_setup(linear(1.0), 1.0, 1, 1, 2.0, eps=eps)
    rep = generating_identity_check(s, [0.0])
    assert rep.rows[0][1] == pytest.approx(1.0, rel=1e-14)
    assert rep.rows[0][2] == pytest.approx(1.0, rel=1e-15)


def test_generating_identity_case_three_binomials():
    c, alpha = 1.0, 6.0
    base = BaseGeometry.fubini_study_cpd(2)
    s = full_setup(log_affine(-1.0, c), -1.0, 2, 1, alpha, base=base)
    coeffs = generating_coefficients(s, len(s.fiber_degrees(100)))
    assert len(coeffs) == int(alpha) + 1
    for k, ck in enumerate(coeffs):
        assert ck == pytest.approx(math.comb(int(alpha), k) * c ** k, rel=1e-10)


def test_generating_identity_quadrature_route():
    eps = lambda a: a + 1.0
    s = full_setup(linear(1.0), 1.0, 1, 1, 2.0, eps=eps)
    rep = generating_identity_check(s, np.linspace(0.0, 0.9, 7),
                                    psi_method="quadrature")
    assert rep.max_deviation <= 1e-10


# -- spectrum ----------------------------------------------------------------


def test_spectrum_membership():
    spec = Spectrum("arithmetic", 2.0, 0.5)
    assert spec.contains(2.0) and spec.contains(3.5)
    assert not spec.contains(2.3) and not spec.contains(1.5)
    nat = Spectrum("naturals")
    assert nat.contains(4.0) and not nat.contains(4.5) and not nat.contains(-1.0)


def test_fiber_degrees_finite_for_negative_twist():
    base = BaseGeometry.fubini_study_cpd(2)
    s = full_setup(log_affine(-1.0, 1.0), -1.0, 2, 1, 3.0, base=base)
    assert list(s.fiber_degrees(100)) == [0, 1, 2, 3]


@given(alpha=st.integers(min_value=1, max_value=9))
@settings(max_examples=9, deadline=None)
def test_projective_series_equals_product(alpha):
    base = BaseGeometry.fubini_study_cpd(2)
    s = full_setup(log_affine(-1.0, 1.0), -1.0, 2, 1, float(alpha), base=base)
    assert bergman_series(s, 1.3) == pytest.approx(
        product_shifted(float(alpha), -1.0, 3), rel=1e-11)
