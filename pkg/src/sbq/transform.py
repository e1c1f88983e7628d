"""Heat semigroup, Segal-Bargmann evaluation, inversion and isometry functionals.

Every operator here exists in two forms. The *spectral* path multiplies
eigen-coefficients by ``exp(-t lam/2)``, ``alpha_{t,R}(lam)`` or
``exp(-t lam/2) beta_{t,R}(lam)``; it is defined for every ``R > 0`` and is how
limits ``R -> infinity`` are taken. The *geometric* path integrates the
holomorphically extended function over a ball in the tangent space and is
available only on models that supply ``psi_n(x + iY)`` and only below their
analyticity radius. On the flat circle and torus ``rho = 0`` and the compact
Jacobian is identically one.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math
import os
import warnings

import numpy as np

from .exceptions import CapabilityError, NonConvergenceError
from .models import SpectralFunction, TorusModel
from .multiplier import (
    DEFAULT_SETTINGS,
    MultiplierQuery,
    alpha,
    beta,
    damped_beta,
    r_infinity,
    radial_ball_integral,
    reduce_ball_integral,
)
from .results import ExperimentResult

__all__ = [
    "HeatParams",
    "InversionReport",
    "SBValue",
    "GateReport",
    "Lemma5Result",
    "ChangeOfVariableResult",
    "heat",
    "sb_eval",
    "ball_rule",
    "ball_integral",
    "multiplier_vector",
    "partial_inversion_geometric",
    "partial_inversion_spectral",
    "default_R_grid",
    "inversion_radius",
    "isometry_radius",
    "global_inversion_l2",
    "global_inversion_pointwise",
    "sobolev_gate",
    "isometry_G",
    "isometry_geometric",
    "surjectivity_reconstruct",
    "predicted_isometry_limit",
    "lemma5_check",
    "holo_change_check_circle",
]

THREADS_ENV = "SBQ_THREADS"
SB_TAIL_RTOL = 1e-8


@dataclass(frozen=True)
class HeatParams:
    t: float

    def __post_init__(self):
        if not self.t > 0:
            raise ValueError(f"heat time must be positive, got {self.t}")


def _time(p):
    return p.t if isinstance(p, HeatParams) else HeatParams(float(p)).t


def _thread_count():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    n = _thread_count()
    if n == 1 or len(items) < 2:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def heat(f, p):
    """``exp(t Laplacian / 2) f``: coefficients scaled by ``exp(-t lam_n / 2)``."""
    t = _time(p)
    return f.with_coefficients(f.coefficients * np.exp(-0.5 * t * f.eigenvalues))


# -- Segal-Bargmann evaluation ------------------------------------------------

@dataclass(frozen=True)
class SBValue:
    value: complex
    tail_bound: float


def _require_complexification(model):
    if not model.has_complexification:
        raise CapabilityError(model.name, "complexified eigenfunction evaluation")


def sb_eval(f, p, x, Y):
    """Evaluate ``F = exp(t Laplacian/2) f`` analytically continued to ``exp_x(iY)``.

    The returned tail bound controls the modes dropped by the model's
    truncation for any function whose coefficients are bounded by ``||f||``.
    Raises :class:`NonConvergenceError` if that bound exceeds ``1e-8`` of
    ``max(|F|, ||f||)``.
    """
    t = _time(p)
    model = f.model
    _require_complexification(model)
    Y = np.atleast_1d(np.asarray(Y, dtype=float))
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y_norm = float(np.linalg.norm(Y))
    model.check_radius(y_norm)
    sup = f.support
    if sup.size:
        b = f.coefficients[sup] * np.exp(-0.5 * t * f.eigenvalues[sup])
        value = complex(model.evaluate_modes(x.reshape(1, -1), Y.reshape(1, -1), modes=sup)[0] @ b)
    else:
        value = 0j
    tail = f.norm() * model.truncation_tail(t, y_norm) if hasattr(model, "truncation_tail") else 0.0
    if tail > SB_TAIL_RTOL * max(abs(value), f.norm()):
        raise NonConvergenceError(
            "Segal-Bargmann series truncation tail too large at this |Y|", tail)
    return SBValue(value, tail)


# -- quadrature on balls --------------------------------------------------------

def ball_rule(d, R, n):
    """Product rule on the ball of radius ``R`` in ``R^d`` (``d <= 3``).

    Gauss-Legendre in the radius (and polar cosine for ``d = 3``), trapezoid in
    the periodic angle. Returns ``(nodes, weights)``.
    """
    u, w = np.polynomial.legendre.leggauss(n)
    r = 0.5 * R * (u + 1.0)
    wr = 0.5 * R * w
    if d == 1:
        # two half-intervals, so radial profiles with a kink at 0 stay smooth
        return np.concatenate([-r, r]).reshape(-1, 1), np.concatenate([wr, wr])
    m = 2 * n
    phi = 2 * math.pi * np.arange(m) / m
    wphi = np.full(m, 2 * math.pi / m)
    if d == 2:
        rr, pp = np.meshgrid(r, phi, indexing="ij")
        W = np.outer(wr * r, wphi)
        nodes = np.stack([rr * np.cos(pp), rr * np.sin(pp)], axis=-1)
        return nodes.reshape(-1, 2), W.ravel()
    if d == 3:
        ct, wct = np.polynomial.legendre.leggauss(n)
        rr, cc, pp = np.meshgrid(r, ct, phi, indexing="ij")
        st = np.sqrt(1.0 - cc ** 2)
        nodes = np.stack([rr * st * np.cos(pp), rr * st * np.sin(pp), rr * cc], axis=-1)
        W = (wr * r ** 2)[:, None, None] * wct[None, :, None] * wphi[None, None, :]
        return nodes.reshape(-1, 3), W.ravel()
    raise NotImplementedError("deterministic ball quadrature is provided for d <= 3")


def ball_integral(func, d, R, rtol=1e-12, atol=1e-15, n_start=16, n_max=256):
    """Integrate ``func(nodes) -> values`` over the ball, doubling the rule until stable.

    ``func`` may return an array of shape ``(n_nodes, ...)``; the comparison
    uses the largest component change.
    """
    n = n_start
    prev = None
    while n <= n_max:
        nodes, w = ball_rule(d, R, n)
        val = np.tensordot(w, func(nodes), axes=(0, 0))
        if prev is not None:
            change = np.max(np.abs(val - prev))
            if change <= max(atol, rtol * np.max(np.abs(val))):
                return val
        prev = val
        n *= 2
    raise NonConvergenceError("ball quadrature did not stabilise",
                              float(np.max(np.abs(val - prev))))


def _gaussian(Y, s):
    d = Y.shape[-1]
    return np.exp(-np.sum(Y * Y, axis=-1) / (2.0 * s)) / (2 * math.pi * s) ** (d / 2.0)


# -- partial inversion ------------------------------------------------------------

def multiplier_vector(lams, fn, t, R, rho_sq, d, settings=DEFAULT_SETTINGS):
    """Apply a scalar multiplier to each eigenvalue, evaluating each distinct value once."""
    lams = np.asarray(lams, dtype=float)
    uniq, inv = np.unique(lams, return_inverse=True)
    vals = _pmap(lambda lam: fn(MultiplierQuery(t, R, float(lam), rho_sq, d), settings),
                 list(uniq))
    return np.asarray(vals, dtype=float)[inv]


def partial_inversion_spectral(f, p, R, settings=DEFAULT_SETTINGS):
    """``alpha_{t,R}(-Laplacian) f``, defined for every ``R > 0`` and every model."""
    t = _time(p)
    m = f.model
    a = np.zeros_like(f.coefficients)
    sup = f.support
    if sup.size:
        a[sup] = f.coefficients[sup] * multiplier_vector(
            f.eigenvalues[sup], alpha, t, R, m.rho_sq, m.dim, settings)
    return f.with_coefficients(a)


def partial_inversion_geometric(f, p, R, x, rtol=1e-12):
    """Ball integral ``exp(t rho^2/2) int_{|Y|<=R} F(exp_x iY) j^c(Y)^½ N_t(Y) dY``.

    ``x`` is one base point or an array of them; returns a complex array with
    one entry per point.
    """
    t = _time(p)
    model = f.model
    _require_complexification(model)
    if not isinstance(model, TorusModel):
        raise CapabilityError(model.name, "geometric ball integrals")
    model.check_radius(R)
    d = model.dim
    xs = np.asarray(x, dtype=float).reshape(-1, d)
    sup = f.support
    if sup.size == 0:
        return np.zeros(xs.shape[0], dtype=complex)
    b = f.coefficients[sup] * np.exp(-0.5 * t * f.eigenvalues[sup])
    ks = model.frequencies[sup].astype(float)

    def integrand(Y):
        # psi_k(x + iY) = exp(2 pi i k.x) exp(-2 pi k.Y)
        radial = np.exp(-2 * math.pi * (Y @ ks.T)) * _gaussian(Y, t)[:, None]
        phases = np.exp(2j * math.pi * (xs @ ks.T))
        return radial[:, None, :] * (phases * b)[None, :, :]

    per_mode = ball_integral(integrand, d, R, rtol=rtol)
    return np.exp(0.5 * t * model.rho_sq) * per_mode.sum(axis=-1)


# -- global inversion --------------------------------------------------------------

def inversion_radius(lams, t, rho_sq, d):
    """Radius standing in for ``R = infinity`` for ``alpha`` over the given eigenvalues."""
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    top = float(lams.max()) if lams.size else 0.0
    return r_infinity(t, top, rho_sq, d)


def isometry_radius(lams, t, rho_sq, d):
    """Same for ``beta_{t,R}``, whose ball has radius ``2R`` and Gaussian time ``2t``."""
    return 0.5 * inversion_radius(lams, 2 * t, rho_sq, d)


def default_R_grid(R_inf, n=40, R_min=0.05):
    """Geometric grid from ``R_min`` to ``R_inf`` in ``n`` steps."""
    return np.geomspace(R_min, R_inf, n)


def _check_grid(R_grid):
    R_grid = np.asarray(R_grid, dtype=float)
    if R_grid.ndim != 1 or R_grid.size == 0:
        raise ValueError("R_grid must be a non-empty 1-D sequence")
    if np.any(R_grid <= 0) or np.any(np.diff(R_grid) <= 0):
        raise ValueError("R_grid must be positive and strictly increasing")
    return R_grid


@dataclass
class InversionReport:
    """Convergence of ``A_{t,R} f`` to ``f`` over a grid of radii.

    ``errors`` holds the L2 error (or the sup over probes for the pointwise
    version) at each radius; ``final_error`` is the same quantity at
    ``R_inf``, the radius standing in for the limit.
    """

    R_grid: np.ndarray
    errors: np.ndarray
    R_inf: float
    final_error: float
    reference_norm: float
    bounds: np.ndarray = None
    probe_values: np.ndarray = None
    gate: "GateReport" = None
    extra: dict = field(default_factory=dict)

    @property
    def relative_final_error(self):
        if self.reference_norm == 0:
            return self.final_error
        return self.final_error / self.reference_norm

    def decreasing_from(self, slack=1e-12):
        """Index after which the error curve never increases (beyond ``slack``)."""
        e = np.append(self.errors, self.final_error)
        last_up = -1
        for i in range(1, e.size):
            if e[i] > e[i - 1] + slack * max(1.0, abs(e[i - 1])):
                last_up = i
        return last_up + 1 if last_up >= 0 else 0

    def eventually_decreasing(self, slack=1e-12):
        return self.decreasing_from(slack) < self.errors.size

    def to_result(self, name):
        cols = ["R", "error"]
        data = [self.R_grid, self.errors]
        if self.bounds is not None:
            cols.append("sup_bound")
            data.append(self.bounds)
        rows = np.column_stack(data)
        last = [self.R_inf, self.final_error]
        if self.bounds is not None:
            last.append(self.extra.get("final_bound", float("nan")))
        rows = np.vstack([rows, last])
        meta = {"reference_norm": self.reference_norm, "R_inf": self.R_inf}
        if self.gate is not None:
            meta["sobolev_gate"] = self.gate.describe()
        return ExperimentResult(name, cols, rows, meta)


def global_inversion_l2(f, p, R_grid=None, settings=DEFAULT_SETTINGS):
    """``||f - alpha_{t,R}(-Laplacian) f||`` over ``R_grid`` and at ``R_inf``.

    Uses ``||f - A f||**2 = sum (1 - alpha(lam_n))**2 |a_n|**2``.
    """
    t = _time(p)
    m = f.model
    sup = f.support
    lams = f.eigenvalues[sup]
    w = np.abs(f.coefficients[sup]) ** 2
    R_inf = inversion_radius(lams, t, m.rho_sq, m.dim)
    R_grid = default_R_grid(R_inf) if R_grid is None else _check_grid(R_grid)

    def err(R):
        if sup.size == 0:
            return 0.0
        al = multiplier_vector(lams, alpha, t, R, m.rho_sq, m.dim, settings)
        return math.sqrt(float(np.sum((1.0 - al) ** 2 * w)))

    errors = np.array([err(R) for R in R_grid])
    return InversionReport(R_grid, errors, R_inf, err(R_inf), f.norm())


@dataclass(frozen=True)
class GateReport:
    """Smoothness gate for uniform convergence of the inversion series.

    ``epsilon = 2l/d - (d-1)/(2d) - 1``; the coefficient series
    ``sum |a_n| sup|psi_n|`` is dominated by ``sum n**-(1+epsilon)``, which
    converges iff ``epsilon > 0``, i.e. iff ``l > (3d-1)/4``. The order
    ``(3d**2 - d)/4`` is a more conservative sufficient condition.
    """

    order: float
    dim: int
    epsilon: float
    threshold: float
    conservative_threshold: float

    @property
    def passes(self):
        return self.epsilon > 0

    def describe(self):
        return (f"l={self.order} d={self.dim} epsilon={self.epsilon:.6g} "
                f"threshold={self.threshold:.6g} passes={self.passes}")


def sobolev_gate(order, d):
    d = int(d)
    if math.isinf(order):
        eps = math.inf
    else:
        eps = 2.0 * order / d - (d - 1) / (2.0 * d) - 1.0
    return GateReport(order, d, eps, (3 * d - 1) / 4.0, (3 * d * d - d) / 4.0)


def global_inversion_pointwise(f, p, R_grid=None, probe_points=None,
                               settings=DEFAULT_SETTINGS):
    """Uniform convergence of ``(A_{t,R} f)(x)`` to ``f(x)``.

    For models with eigenfunction evaluation the error is the maximum of
    ``|f(x) - (A_{t,R} f)(x)|`` over the probes. On every model the
    ``x``-independent bound ``sum |1 - alpha(lam_n)| |a_n| sup|psi_n|`` is
    reported alongside.
    """
    t = _time(p)
    m = f.model
    gate = sobolev_gate(f.sobolev_order, m.dim)
    if not gate.passes:
        warnings.warn(f"Sobolev gate not satisfied: {gate.describe()}", RuntimeWarning)
    sup = f.support
    lams = f.eigenvalues[sup]
    a = f.coefficients[sup]
    sup_norms = np.array([m.sup_norm_bound(n) for n in sup])
    R_inf = inversion_radius(lams, t, m.rho_sq, m.dim)
    R_grid = default_R_grid(R_inf) if R_grid is None else _check_grid(R_grid)

    psi = None
    fx = None
    if m.has_real_evaluation and probe_points is not None and sup.size:
        psi = m.evaluate_modes(np.asarray(probe_points, dtype=float), modes=sup)
        fx = psi @ a

    def one(R):
        if sup.size == 0:
            return 0.0, 0.0, None
        al = multiplier_vector(lams, alpha, t, R, m.rho_sq, m.dim, settings)
        bound = float(np.sum(np.abs(1.0 - al) * np.abs(a) * sup_norms))
        if psi is None:
            return bound, bound, None
        Afx = psi @ (al * a)
        return float(np.max(np.abs(fx - Afx))), bound, Afx

    rows = [one(R) for R in R_grid]
    fin = one(R_inf)
    errors = np.array([r[0] for r in rows])
    bounds = np.array([r[1] for r in rows])
    probe_vals = None
    if psi is not None:
        probe_vals = np.array([r[2] for r in rows] + [fin[2]])
    ref = float(np.max(np.abs(fx))) if fx is not None else f.norm()
    return InversionReport(R_grid, errors, R_inf, fin[0], ref, bounds=bounds,
                           probe_values=probe_vals, gate=gate,
                           extra={"final_bound": fin[1]})


# -- isometry ------------------------------------------------------------------

def isometry_G(f, p, R_grid=None, settings=DEFAULT_SETTINGS):
    """``G_F(R) = <f, exp(t Laplacian/2) beta_{t,R}(-Laplacian) f>`` on a grid.

    The last row is evaluated at the radius standing in for ``R = infinity``;
    metadata records ``||f||**2`` for comparison.
    """
    t = _time(p)
    m = f.model
    sup = f.support
    lams = f.eigenvalues[sup]
    w = np.abs(f.coefficients[sup]) ** 2
    R_inf = isometry_radius(lams, t, m.rho_sq, m.dim)
    R_grid = default_R_grid(R_inf) if R_grid is None else _check_grid(R_grid)

    def G(R):
        if sup.size == 0:
            return 0.0
        return float(np.sum(w * multiplier_vector(lams, damped_beta, t, R, m.rho_sq, m.dim,
                                                  settings)))

    vals = [G(R) for R in R_grid]
    limit = G(R_inf)
    rows = np.column_stack([np.append(R_grid, R_inf), np.append(vals, limit)])
    return ExperimentResult(
        "isometry", ["R", "G"], rows,
        {"norm_sq": f.norm_sq(), "limit_estimate": limit, "R_inf": R_inf, "t": t})


def isometry_geometric(f, p, R, rtol=1e-12):
    """``exp(t rho^2) int_X int_{|Y|<=R} |F(x+iY)|^2 j^c(2Y)^½ e^{-|Y|^2/t} / (pi t)^{d/2}``.

    The base integral uses the model's uniform grid, the fibre integral the
    adaptive ball rule.
    """
    t = _time(p)
    model = f.model
    _require_complexification(model)
    if not isinstance(model, TorusModel):
        raise CapabilityError(model.name, "geometric ball integrals")
    model.check_radius(R)
    d = model.dim
    sup = f.support
    if sup.size == 0:
        return 0.0
    b = f.coefficients[sup] * np.exp(-0.5 * t * f.eigenvalues[sup])
    xs = model.quadrature_grid()
    phases = np.exp(2j * math.pi * (xs @ model.frequencies[sup].T.astype(float))) * b

    def integrand(Y):
        damp = np.exp(-2 * math.pi * (Y @ model.frequencies[sup].T.astype(float)))
        F = (damp[:, None, :] * phases[None, :, :]).sum(axis=-1)
        base = np.mean(np.abs(F) ** 2, axis=1)
        weight = np.exp(-np.sum(Y * Y, axis=-1) / t) / (math.pi * t) ** (d / 2.0)
        return base * weight

    return float(math.exp(t * model.rho_sq) * ball_integral(integrand, d, R, rtol=rtol))


# -- surjectivity ----------------------------------------------------------------

_MAX_EXPONENT = 700.0


def surjectivity_reconstruct(F_coefficients, model, p):
    """Recover ``f`` with ``exp(t Laplacian/2) f = F`` from ``F = sum a_n psi_n``.

    Coefficients become ``a_n exp(t lam_n / 2)``.
    """
    t = _time(p)
    F = SpectralFunction(model, F_coefficients)
    expo = 0.5 * t * F.eigenvalues
    if F.support.size and expo[F.support].max() > _MAX_EXPONENT:
        raise OverflowError("exp(t lam/2) overflows for the requested modes")
    return F.with_coefficients(F.coefficients * np.exp(expo))


def predicted_isometry_limit(F_coefficients, model, p):
    """``sum |a_n|**2 exp(t lam_n)``, the limit of ``G_F`` when it is finite."""
    t = _time(p)
    F = SpectralFunction(model, F_coefficients)
    sup = F.support
    # zero coefficients must not meet an overflowed exponential
    return float(np.sum(np.abs(F.coefficients[sup]) ** 2 * np.exp(t * F.eigenvalues[sup])))


# -- standalone identities ---------------------------------------------------------

@dataclass(frozen=True)
class Lemma5Result:
    lhs: float
    rhs: float
    difference: float
    stderr: float = 0.0
    method: str = "quadrature"


def _uniform_ball(rng, n, d, R):
    g = rng.standard_normal((n, d))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = R * rng.random(n) ** (1.0 / d)
    return g * r[:, None]


def lemma5_check(psi, beta_profile, R, d=None, n_samples=400_000, seed=0,
                 method="auto", settings=DEFAULT_SETTINGS):
    """Compare ``int_{|Y|<=R} Psi(Y) beta(|Y|) dY`` with ``Psi(0) int exp(sqrt(sigma) y1) beta``.

    The left side is integrated directly in ``d`` dimensions (product rule for
    ``d <= 3``, seeded Monte Carlo otherwise); the right side through the
    one-dimensional spherical-mean reduction.
    """
    d = psi.dim if d is None else int(d)
    if d != psi.dim:
        raise ValueError("dimension of Psi does not match d")
    if method == "auto":
        method = "quadrature" if d <= 3 else "montecarlo"

    def lhs_integrand(Y):
        return psi(Y) * beta_profile(np.linalg.norm(Y, axis=-1))

    stderr = 0.0
    if method == "quadrature":
        lhs = float(ball_integral(lhs_integrand, d, R, rtol=1e-13))
    elif method == "montecarlo":
        rng = np.random.default_rng(seed)
        Y = _uniform_ball(rng, n_samples, d, R)
        vol = math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1) * R ** d
        v = lhs_integrand(Y)
        lhs = float(vol * v.mean())
        stderr = float(vol * v.std(ddof=1) / math.sqrt(n_samples))
    else:
        raise ValueError(f"unknown method {method!r}")
    rhs = psi.at_origin() * radial_ball_integral(psi.sigma, beta_profile, R, d, settings)
    return Lemma5Result(lhs, rhs, lhs - rhs, stderr, method)


@dataclass(frozen=True)
class ChangeOfVariableResult:
    lhs: complex
    rhs: complex
    difference: float


def holo_change_check_circle(F1_coeffs, F2_coeffs, alpha_profile, R, model=None,
                             n_y=200, n_x=None):
    """Both sides of the holomorphic change of variable on ``R/Z``.

    ``lhs = int conj(F1(x)) int_{-2R}^{2R} F2(x+iy) alpha(y) dy dx``
    ``rhs = int int_{-2R}^{2R} conj(F1(x+iy/2)) F2(x+iy/2) alpha(y) dy dx``
    with ``F1, F2`` trigonometric polynomials given by circle-model coefficients.
    """
    F1_coeffs = np.asarray(F1_coeffs, dtype=complex)
    F2_coeffs = np.asarray(F2_coeffs, dtype=complex)
    if model is None:
        from .models import circle_model
        model = circle_model(max(F1_coeffs.size, F2_coeffs.size))
    if model.dim != 1:
        raise ValueError("holomorphic change-of-variable prototype needs the circle model")
    m1 = np.flatnonzero(F1_coeffs)
    m2 = np.flatnonzero(F2_coeffs)
    kmax = int(np.max(np.abs(model.frequencies[np.concatenate([m1, m2, [0]])])))
    n_x = n_x or max(4 * kmax + 4, 16)
    x = np.arange(n_x) / n_x
    u, wu = np.polynomial.legendre.leggauss(n_y)
    y = 2.0 * R * u
    wy = 2.0 * R * wu * alpha_profile(y)

    X = np.repeat(x, y.size)
    Yg = np.tile(y, x.size)
    # left: F1 on the real circle, F2 at x + iy
    F1_real = model.evaluate_modes(x, modes=m1) @ F1_coeffs[m1]
    F2_shift = (model.evaluate_modes(X, Yg, modes=m2) @ F2_coeffs[m2]).reshape(n_x, -1)
    lhs = np.mean(np.conj(F1_real) * (F2_shift @ wy))
    # right: both at x + iy/2
    F1_half = (model.evaluate_modes(X, 0.5 * Yg, modes=m1) @ F1_coeffs[m1]).reshape(n_x, -1)
    F2_half = (model.evaluate_modes(X, 0.5 * Yg, modes=m2) @ F2_coeffs[m2]).reshape(n_x, -1)
    rhs = np.mean((np.conj(F1_half) * F2_half) @ wy)
    return ChangeOfVariableResult(complex(lhs), complex(rhs), float(abs(lhs - rhs)))
