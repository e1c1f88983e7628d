"""Spectral multipliers of the partial inversion and partial isometry operators.

For heat time ``t``, radius ``R``, eigenvalue ``lam`` of ``-Laplacian``,
spectral shift ``rho_sq`` and dimension ``d``::

    alpha_{t,R}(lam) = exp(-t lam/2 + t rho_sq/2)
                       * int_{|Y|<=R} exp(c y1) N_t(Y) dY
    beta_{t,R}(lam)  = exp(-t lam/2 + t rho_sq)
                       * int_{|Y|<=2R} exp(c y1) N_{2t}(Y) dY

with ``c = sqrt(lam - rho_sq)`` and ``N_s`` the centred Gaussian density of
covariance ``s*I``. The ball is symmetric under ``y1 -> -y1`` so ``exp`` may be
replaced by ``cosh``; for ``lam < rho_sq`` the root is imaginary and ``cosh``
becomes ``cos``. Both multipliers are reduced to one-dimensional integrals
weighted by the regularised lower incomplete gamma function.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy import integrate
from scipy.special import gammainc, hyp0f1, erf

from .exceptions import NonConvergenceError
from .results import ExperimentResult

__all__ = [
    "MultiplierQuery",
    "QuadratureSettings",
    "DEFAULT_SETTINGS",
    "spectral_root",
    "reduce_ball_integral",
    "reduce_ball_integral_exp",
    "radial_ball_integral",
    "alpha",
    "beta",
    "damped_beta",
    "alpha_limit",
    "beta_limit",
    "r_infinity",
    "alpha_curve",
    "beta_curve",
]


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_SETTINGS = QuadratureSettings()


@dataclass(frozen=True)
class MultiplierQuery:
    """Arguments ``(t, R, lam, rho_sq, d)`` of a multiplier evaluation."""

    t: float
    R: float
    lam: float
    rho_sq: float
    d: int

    def __post_init__(self):
        if not self.t > 0:
            raise ValueError(f"t must be positive, got {self.t}")
        if not self.R > 0:
            raise ValueError(f"R must be positive, got {self.R}")
        if not self.lam >= 0:
            raise ValueError(f"lam must be nonnegative, got {self.lam}")
        if not self.rho_sq >= 0:
            raise ValueError(f"rho_sq must be nonnegative, got {self.rho_sq}")
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"d must be a positive integer, got {self.d}")

    def with_R(self, R):
        return MultiplierQuery(self.t, R, self.lam, self.rho_sq, self.d)


def spectral_root(lam, rho_sq, sign=1):
    """One of the two square roots of ``lam - rho_sq`` (purely imaginary below ``rho_sq``)."""
    diff = lam - rho_sq
    root = complex(math.sqrt(diff), 0.0) if diff >= 0 else complex(0.0, math.sqrt(-diff))
    return root if sign > 0 else -root


def _canonical_root(c):
    # cosh is even: map both square roots onto the same representative
    c = complex(c)
    if c.real < 0 or (c.real == 0 and c.imag < 0):
        c = -c
    return complex(c.real + 0.0, c.imag + 0.0)


def _log_cosh(x):
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - math.log(2.0)


def _quad(func, a, b, settings, points=None):
    val, err, info = integrate.quad(
        func, a, b,
        epsabs=settings.abs_tol, epsrel=settings.rel_tol,
        limit=settings.max_subdivisions, points=points, full_output=1)[:3]
    tol = max(settings.abs_tol, settings.rel_tol * abs(val))
    # ier flags are advisory; accept when the estimate is within a loose factor
    if not np.isfinite(val) or err > 100 * tol:
        raise NonConvergenceError("ball-integral quadrature did not converge", err)
    return val


def reduce_ball_integral(c, sigma, P, d, settings=DEFAULT_SETTINGS, log_scale=0.0):
    """``exp(log_scale) * int_{|Y|<=P} cosh(c y1) N_sigma(Y) dY`` as a 1-D integral.

    The integral over the remaining ``d-1`` coordinates of the Gaussian
    restricted to the slice ``|Y'| <= sqrt(P**2 - y1**2)`` is the regularised
    incomplete gamma ``Q((d-1)/2, (P**2 - y1**2)/(2 sigma))``.

    ``log_scale`` is added in the exponent before exponentiating, which keeps
    the product finite when ``cosh(c y1)`` alone would overflow.
    """
    if not (sigma > 0 and P > 0):
        raise ValueError("sigma and P must be positive")
    d = int(d)
    if d < 1:
        raise ValueError("d must be >= 1")
    c = _canonical_root(c)
    a = 0.5 * (d - 1)
    norm = -0.5 * math.log(2 * math.pi * sigma)

    def slice_mass(y):
        if d == 1:
            return 1.0
        return gammainc(a, max(P * P - y * y, 0.0) / (2.0 * sigma))

    points = None
    if c.imag == 0.0:
        cr = c.real
        peak = cr * sigma
        if 0.0 < peak < P:
            points = [peak]

        def exponent(y):
            return log_scale + norm + _log_cosh(cr * y) - y * y / (2.0 * sigma)

        # divide out the largest value so the absolute tolerance acts relative
        # to the size of the integral, however small or large that is
        shift = max(exponent(y) for y in (0.0, min(peak, P), P))

        def integrand(y):
            return math.exp(exponent(y) - shift) * slice_mass(y)

        return 2.0 * math.exp(shift) * _quad(integrand, 0.0, P, settings, points=points)
    else:
        w = c.imag
        if c.real != 0.0:
            raise ValueError("c must be real or purely imaginary")
        scale = math.exp(log_scale + norm)

        def integrand(y):
            return scale * math.cos(w * y) * math.exp(-y * y / (2.0 * sigma)) * slice_mass(y)

    return 2.0 * _quad(integrand, 0.0, P, settings, points=points)


def reduce_ball_integral_exp(c, sigma, P, d, settings=DEFAULT_SETTINGS):
    """Same ball integral with ``exp(c y1)`` kept as a complex integrand over ``[-P, P]``.

    Used to check that the imaginary part of the unsymmetrised form vanishes.
    """
    c = complex(c)
    a = 0.5 * (d - 1)
    norm = 1.0 / math.sqrt(2 * math.pi * sigma)

    def part(y, fn):
        z = np.exp(c * y)
        mass = 1.0 if d == 1 else gammainc(a, max(P * P - y * y, 0.0) / (2.0 * sigma))
        return fn(z) * norm * math.exp(-y * y / (2.0 * sigma)) * mass

    re = _quad(lambda y: part(y, np.real), -P, P, settings)
    im = _quad(lambda y: part(y, np.imag), -P, P, settings)
    return complex(re, im)


def radial_ball_integral(c_sq, weight, P, d, settings=DEFAULT_SETTINGS):
    """``int_{|Y|<=P} exp(c y1) weight(|Y|) dY`` for a radial ``weight``.

    Uses the spherical mean ``0F1(; d/2; c_sq r**2 / 4)`` of ``exp(c r w1)``,
    which depends on ``c`` only through ``c_sq = c**2`` and so is real for
    either branch of the root.
    """
    d = int(d)
    surface = 2 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)

    def integrand(r):
        return surface * r ** (d - 1) * weight(r) * hyp0f1(d / 2.0, c_sq * r * r / 4.0)

    return _quad(integrand, 0.0, P, settings)


def alpha(q, settings=DEFAULT_SETTINGS, root_sign=1):
    """Partial-inversion multiplier ``alpha_{t,R}(lam)``; always real."""
    c = spectral_root(q.lam, q.rho_sq, root_sign)
    log_scale = -0.5 * q.t * q.lam + 0.5 * q.t * q.rho_sq
    return reduce_ball_integral(c, q.t, q.R, q.d, settings, log_scale=log_scale)


def beta(q, settings=DEFAULT_SETTINGS, root_sign=1):
    """Partial-isometry multiplier ``beta_{t,R}(lam)`` (ball of radius ``2R``, time ``2t``)."""
    c = spectral_root(q.lam, q.rho_sq, root_sign)
    log_scale = -0.5 * q.t * q.lam + q.t * q.rho_sq
    return reduce_ball_integral(c, 2.0 * q.t, 2.0 * q.R, q.d, settings, log_scale=log_scale)


def damped_beta(q, settings=DEFAULT_SETTINGS):
    """``exp(-t lam/2) * beta_{t,R}(lam)``, computed without forming ``beta`` itself.

    ``beta`` grows like ``exp(t lam/2)`` and overflows for large ``lam``; the
    damped product stays in ``[0, 1]`` for ``lam >= rho_sq``.
    """
    c = spectral_root(q.lam, q.rho_sq)
    log_scale = -q.t * q.lam + q.t * q.rho_sq
    return reduce_ball_integral(c, 2.0 * q.t, 2.0 * q.R, q.d, settings, log_scale=log_scale)


def alpha_limit(lam, t):
    """Closed-form ``R -> infinity`` limit of ``alpha``."""
    return 1.0


def beta_limit(lam, t):
    """Closed-form ``R -> infinity`` limit of ``beta``."""
    return math.exp(0.5 * t * lam)


def r_infinity(t, lam, rho_sq, d):
    """Radius at which ``alpha_{t,R}(lam)`` is indistinguishable from its limit.

    The integrand of ``alpha`` is, up to the ball cut-off, a Gaussian of
    covariance ``t*I`` centred at ``(c t, 0, ..., 0)`` with
    ``c = sqrt(max(lam - rho_sq, 0))``. The ball of radius
    ``c t * max(1, 12 sqrt(t)) + 12 sqrt(t d)`` contains the centre plus twelve
    standard deviations of the chi distribution, so the neglected mass is below
    ``P(chi_d > 12 sqrt(d)) < 1e-30`` for ``d <= 6``. For ``lam < rho_sq`` the
    prefactor ``exp(t (rho_sq - lam)/2)`` multiplies that tail.
    """
    c = math.sqrt(max(lam - rho_sq, 0.0))
    return c * t * max(1.0, 12.0 * math.sqrt(t)) + 12.0 * math.sqrt(t * d)


def _curve(fn, name, t, lam, rho_sq, d, R_grid, settings):
    R_grid = np.asarray(R_grid, dtype=float)
    if R_grid.ndim != 1 or R_grid.size == 0:
        raise ValueError("R_grid must be a non-empty 1-D sequence")
    if np.any(R_grid <= 0) or np.any(np.diff(R_grid) <= 0):
        raise ValueError("R_grid must be positive and strictly increasing")
    vals = [fn(MultiplierQuery(t, float(R), lam, rho_sq, d), settings) for R in R_grid]
    return ExperimentResult(
        name=f"{name}-curve",
        columns=["R", name],
        rows=np.column_stack([R_grid, vals]),
        metadata={"t": t, "lambda": lam, "rho_sq": rho_sq, "d": d},
    )


def alpha_curve(t, lam, rho_sq, d, R_grid, settings=DEFAULT_SETTINGS):
    """Tabulate ``alpha_{t,R}(lam)`` over an increasing grid of radii."""
    return _curve(alpha, "alpha", t, lam, rho_sq, d, R_grid, settings)


def beta_curve(t, lam, rho_sq, d, R_grid, settings=DEFAULT_SETTINGS):
    """Tabulate ``beta_{t,R}(lam)`` over an increasing grid of radii."""
    return _curve(beta, "beta", t, lam, rho_sq, d, R_grid, settings)


def gaussian_mass(sigma, P, d):
    """Mass of ``N_sigma`` in the ball of radius ``P`` (chi-square CDF)."""
    if d == 1:
        return float(erf(P / math.sqrt(2 * sigma)))
    return float(gammainc(d / 2.0, P * P / (2 * sigma)))
