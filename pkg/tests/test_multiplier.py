import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import erf, gammainc

from sbq.exceptions import NonConvergenceError
from sbq.multiplier import (
    MultiplierQuery,
    QuadratureSettings,
    _canonical_root,
    alpha,
    alpha_curve,
    alpha_limit,
    beta,
    beta_curve,
    beta_limit,
    damped_beta,
    gaussian_mass,
    r_infinity,
    reduce_ball_integral,
    reduce_ball_integral_exp,
    spectral_root,
)

# Plain Monte Carlo oracles, 1e7 samples each, computed before the library existed
# and frozen here: (value, standard error).
V1_ALPHA_D3 = (0.36309036914692344, 0.00015223795389136677)   # t=.5 lam=2 rho2=1 R=1
V2_BALL_D4 = (1.1576134462515213, 0.00038290131962891524)     # c=2 sigma=.5 P=1.5


def test_frozen_alpha_oracle():
    v, se = V1_ALPHA_D3
    assert abs(alpha(MultiplierQuery(0.5, 1.0, 2.0, 1.0, 3)) - v) < 4 * se


def test_frozen_ball_oracle():
    v, se = V2_BALL_D4
    assert abs(reduce_ball_integral(2.0, 0.5, 1.5, 4) - v) < 4 * se


@pytest.mark.parametrize("bad", [
    dict(t=0.0), dict(R=-1.0), dict(lam=-0.1), dict(rho_sq=-1.0), dict(d=0), dict(d=2.5),
])
def test_query_validation(bad):
    kw = dict(t=0.1, R=1.0, lam=1.0, rho_sq=0.0, d=1)
    kw.update(bad)
    with pytest.raises(ValueError):
        MultiplierQuery(**kw)


def test_settings_validation():
    with pytest.raises(ValueError):
        QuadratureSettings(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSettings(max_subdivisions=0)


@pytest.mark.parametrize("t, R, rho_sq", [(0.1, 0.3, 0.0), (0.5, 1.0, 1.0), (1.0, 2.0, 4.0)])
def test_d1_at_bottom_of_spectrum_is_erf(t, R, rho_sq):
    # c = 0: the integrals are plain Gaussian masses
    q = MultiplierQuery(t, R, rho_sq, rho_sq, 1)
    assert alpha(q) == pytest.approx(erf(R / math.sqrt(2 * t)), rel=1e-12)
    assert beta(q) == pytest.approx(math.exp(t * rho_sq / 2) * erf(R / math.sqrt(t)), rel=1e-12)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 6])
@pytest.mark.parametrize("sigma, P", [(0.1, 0.2), (0.5, 1.5), (2.0, 1.0)])
def test_zero_root_is_chi_square_cdf(d, sigma, P):
    assert reduce_ball_integral(0.0, sigma, P, d) == pytest.approx(
        gammainc(d / 2, P * P / (2 * sigma)), rel=1e-11)
    assert gaussian_mass(sigma, P, d) == pytest.approx(gammainc(d / 2, P * P / (2 * sigma)))


def test_limits_closed_form():
    assert alpha_limit(3.0, 0.2) == 1.0
    assert beta_limit(3.0, 0.2) == pytest.approx(math.exp(0.3))


@pytest.mark.parametrize("t, d, rho_sq, dl", list(itertools.product(
    [0.1, 1.0], [1, 3, 6], [0.0, 4.0], [0.0, 10.0])))
def test_limits_reached_at_r_infinity(t, d, rho_sq, dl):
    lam = rho_sq + dl
    R = r_infinity(t, lam, rho_sq, d)
    assert abs(alpha(MultiplierQuery(t, R, lam, rho_sq, d)) - 1.0) < 1e-6
    Rb = r_infinity(2 * t, lam, rho_sq, d) / 2
    b = beta(MultiplierQuery(t, Rb, lam, rho_sq, d))
    assert abs(b / beta_limit(lam, t) - 1.0) < 1e-6


_GRID = list(itertools.product([0.1, 0.4, 1.0], [0.2, 1.0, 2.5], [0.0, 0.5, 3.0, 20.0]))


@pytest.mark.parametrize("t, R, lam", _GRID)
@pytest.mark.parametrize("d", [1, 3])
def test_beta_alpha_identity(t, R, lam, d):
    rho_sq = 1.0
    b = beta(MultiplierQuery(t, R, lam, rho_sq, d))
    a2 = alpha(MultiplierQuery(2 * t, 2 * R, lam, rho_sq, d))
    assert b == pytest.approx(math.exp(t * lam / 2) * a2, rel=1e-9)
    assert damped_beta(MultiplierQuery(t, R, lam, rho_sq, d)) == pytest.approx(a2, rel=1e-9)


def test_damped_beta_survives_large_lambda():
    q = MultiplierQuery(1.0, 5.0, 5000.0, 0.0, 3)
    v = damped_beta(q)
    assert np.isfinite(v) and 0.0 <= v <= 1.0


@pytest.mark.parametrize("lam, rho_sq", [(0.3, 1.0), (2.0, 1.0), (1.0, 1.0), (0.0, 4.0)])
def test_branch_independence(lam, rho_sq):
    cp, cm = spectral_root(lam, rho_sq, 1), spectral_root(lam, rho_sq, -1)
    assert cp == -cm
    assert _canonical_root(cp) == _canonical_root(cm)
    q = MultiplierQuery(0.3, 0.8, lam, rho_sq, 3)
    assert alpha(q, root_sign=1) == alpha(q, root_sign=-1)
    assert beta(q, root_sign=1) == beta(q, root_sign=-1)


@pytest.mark.parametrize("lam", [0.0, 0.25, 0.9, 2.5])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_low_spectrum_realness(lam, d):
    rho_sq, t, R = 3.0, 0.5, 1.2
    c = spectral_root(lam, rho_sq)
    assert c.real == 0.0
    z = reduce_ball_integral_exp(c, t, R, d)
    assert abs(z.imag) < 1e-12
    assert z.real == pytest.approx(reduce_ball_integral(c, t, R, d), rel=1e-10)
    for v in (alpha(MultiplierQuery(t, R, lam, rho_sq, d)),
              beta(MultiplierQuery(t, R, lam, rho_sq, d))):
        assert isinstance(v, float) and math.isfinite(v)


@settings(max_examples=40, deadline=None)
@given(t=st.floats(0.05, 2.0), lam=st.floats(1.0, 50.0),
       R1=st.floats(0.05, 3.0), dR=st.floats(0.01, 2.0), d=st.integers(1, 6))
def test_alpha_monotone_and_bounded(t, lam, R1, dR, d):
    # lam >= rho_sq: integrand is positive, so alpha grows with R and stays below its limit
    a1 = alpha(MultiplierQuery(t, R1, lam, 1.0, d))
    a2 = alpha(MultiplierQuery(t, R1 + dR, lam, 1.0, d))
    assert 0.0 < a1 <= a2 * (1 + 1e-10)
    assert a2 <= 1.0 + 1e-10


def _mc_ball(c, sigma, P, d, rng, n=400_000):
    # uniform sampling of the ball, weight = cosh(c y1) N_sigma(Y) * vol
    g = rng.standard_normal((n, d))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    Y = g * (P * rng.random(n) ** (1.0 / d))[:, None]
    vol = math.pi ** (d / 2) / math.gamma(d / 2 + 1) * P ** d
    f = np.cosh(c * Y[:, 0]) * np.exp(-np.sum(Y * Y, axis=1) / (2 * sigma)) \
        / (2 * math.pi * sigma) ** (d / 2) * vol
    return f.mean(), f.std(ddof=1) / math.sqrt(n)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_reduction_against_monte_carlo(d):
    rng = np.random.default_rng(100 + d)
    sigma = 0.5
    for c, P in itertools.product([0.0, 1.0, 3.0], [0.4, 1.0, 2.0]):
        est, se = _mc_ball(c, sigma, P, d, rng)
        assert abs(reduce_ball_integral(c, sigma, P, d) - est) < 4 * se


def test_curves():
    grid = np.linspace(0.1, 3.0, 12)
    a = alpha_curve(0.2, 5.0, 1.0, 3, grid)
    b = beta_curve(0.2, 5.0, 1.0, 3, grid)
    assert a.columns == ["R", "alpha"] and b.columns == ["R", "beta"]
    assert np.all(np.diff(a.column("alpha")) >= -1e-12)
    np.testing.assert_allclose(a.column("R"), grid)
    assert a.metadata["d"] == 3
    with pytest.raises(ValueError):
        alpha_curve(0.2, 5.0, 1.0, 3, [1.0, 0.5])


def test_r_infinity_grows_with_lambda_and_dimension():
    assert r_infinity(0.5, 10.0, 0.0, 3) > r_infinity(0.5, 1.0, 0.0, 3)
    assert r_infinity(0.5, 1.0, 0.0, 6) > r_infinity(0.5, 1.0, 0.0, 3)
    # below rho_sq there is no drift term
    assert r_infinity(0.5, 0.2, 1.0, 3) == pytest.approx(12 * math.sqrt(1.5))


def test_quadrature_failure_is_reported():
    strict = QuadratureSettings(rel_tol=1e-15, abs_tol=1e-300, max_subdivisions=1)
    with pytest.raises(NonConvergenceError) as info:
        reduce_ball_integral(40j, 1.0, 10.0, 3, strict)
    assert info.value.error_estimate > 0


def test_identity_holds_where_alpha_is_tiny():
    # drift c*2t far outside the ball: alpha is ~1e-18, far below the absolute tolerance
    t, R, lam = 2.0, 4.0, 40.0
    a2 = alpha(MultiplierQuery(2 * t, 2 * R, lam, 1.0, 3))
    assert 0 < a2 < 1e-15
    b = beta(MultiplierQuery(t, R, lam, 1.0, 3))
    assert b == pytest.approx(math.exp(t * lam / 2) * a2, rel=1e-12)
