"""Verification experiments driven by the command line harness.

Each experiment reads its parameters from a :class:`Section`, returns an
:class:`~sbq.results.ExperimentResult` for CSV output and a list of
:class:`Check` outcomes for the summary.
"""
from dataclasses import dataclass
import math

import numpy as np

from .exceptions import ConfigError
from .models import (
    SpectralFunction,
    circle_model,
    euclidean_ball_eigenfunction,
    synthetic_quotient_model,
    torus_model,
)
from .multiplier import MultiplierQuery, alpha, beta, r_infinity
from .results import ExperimentResult
from .transform import (
    default_R_grid,
    global_inversion_l2,
    global_inversion_pointwise,
    holo_change_check_circle,
    isometry_G,
    isometry_geometric,
    heat,
    lemma5_check,
    partial_inversion_geometric,
    partial_inversion_spectral,
    predicted_isometry_limit,
    surjectivity_reconstruct,
)

__all__ = ["Check", "Section", "EXPERIMENTS", "CATALOGUE", "run_experiment", "build_model"]


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    expected: float
    tolerance: float
    passed: bool

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.name}: measured={self.measured:.6e} "
                f"expected={self.expected:.6e} tol={self.tolerance:.1e}")


def _abs_check(name, measured, expected, tol):
    measured = float(measured)
    return Check(name, measured, float(expected), tol,
                 bool(np.isfinite(measured) and abs(measured - expected) <= tol))


def _below(name, measured, tol):
    return _abs_check(name, measured, 0.0, tol)


class Section:
    """Key/value parameters of one experiment with source line numbers.

    ``lines`` maps each key to ``(line, column_of_value)`` for error messages.
    """

    def __init__(self, header, values, lines, header_line):
        self.header = header
        self.values = values
        self.lines = lines
        self.header_line = header_line
        parts = header.split(None, 1)
        self.kind = parts[0]
        self.label = parts[1].strip() if len(parts) > 1 else parts[0]

    def _err(self, key, msg):
        line, col = self.lines.get(key, (self.header_line, 1))
        return ConfigError(f"[{self.header}] {key}: {msg}", line, col)

    def has(self, key):
        return key in self.values

    def get_str(self, key, default=None):
        if key not in self.values:
            if default is None:
                raise self._err(key, "missing required key")
            return default
        return self.values[key]

    def get_float(self, key, default=None):
        if key not in self.values:
            if default is None:
                raise self._err(key, "missing required key")
            return float(default)
        try:
            return float(self.values[key])
        except ValueError:
            raise self._err(key, f"not a number: {self.values[key]!r}") from None

    def get_int(self, key, default=None):
        if key not in self.values:
            if default is None:
                raise self._err(key, "missing required key")
            return int(default)
        try:
            return int(self.values[key])
        except ValueError:
            raise self._err(key, f"not an integer: {self.values[key]!r}") from None

    def get_floats(self, key, default=None):
        if key not in self.values:
            if default is None:
                raise self._err(key, "missing required key")
            return [float(v) for v in default]
        raw = self.values[key].strip()
        if not raw:
            return []
        try:
            return [float(v) for v in raw.split(",")]
        except ValueError:
            raise self._err(key, f"not a comma-separated list of numbers: {raw!r}") from None

    def R_grid(self, R_inf):
        """``auto`` (geometric 0.05..R_inf, 40 steps), ``geometric:a:b:n`` or a list."""
        raw = self.values.get("R_grid", "auto").strip()
        if raw == "auto":
            return default_R_grid(R_inf)
        if raw.startswith("geometric:"):
            try:
                _, a, b, n = raw.split(":")
                b = R_inf if b == "inf" else float(b)
                grid = np.geomspace(float(a), b, int(n))
            except ValueError:
                raise self._err("R_grid", f"bad geometric grid {raw!r}") from None
        else:
            grid = np.asarray(self.get_floats("R_grid"))
        if grid.size == 0 or np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
            raise self._err("R_grid", "grid must be positive and strictly increasing")
        return grid

    def positive(self, key, default=None):
        v = self.get_float(key, default)
        if not v > 0:
            raise self._err(key, f"must be positive, got {v}")
        return v


def build_model(sec):
    """Instantiate the model named by ``model`` in a config section."""
    name = sec.get_str("model", "circle")
    if name == "circle":
        return circle_model(sec.get_int("n_modes", 64))
    if name == "torus":
        return torus_model(sec.get_int("dim", 2), sec.get_int("n_modes_per_axis", 15))
    if name == "synthetic":
        try:
            return synthetic_quotient_model(
                d=sec.get_int("dim", 3),
                rho_sq=sec.get_float("rho_sq", 1.0),
                weyl_const=sec.get_float("weyl_const", 1.0),
                n_modes=sec.get_int("n_modes", 2000),
                low_spectrum=sec.get_floats("low_spectrum", [0.5]),
                sup_const=sec.get_float("sup_const", 1.0),
                analyticity_radius=sec.get_float("analyticity_radius", 1.0),
            )
        except ValueError as exc:
            raise sec._err("model", str(exc)) from None
    raise sec._err("model", f"unknown model {name!r}")


def _random_function(sec, model, rng):
    n_terms = sec.get_int("n_terms", 8)
    max_index = sec.get_int("max_index", min(model.n_modes, 4 * n_terms))
    if n_terms > min(max_index, model.n_modes):
        raise sec._err("n_terms", "more terms than available modes")
    return SpectralFunction.random(model, n_terms, rng, max_index=max_index)


def _tol(sec, key, default, override):
    return override if override is not None else sec.get_float(key, default)


# -- experiments ------------------------------------------------------------------

def exp_multiplier_curve(sec, rng, tol_override):
    kind = sec.get_str("kind", "alpha")
    if kind not in ("alpha", "beta"):
        raise sec._err("kind", "must be 'alpha' or 'beta'")
    t = sec.positive("t", 0.5)
    d = sec.get_int("d", 3)
    rho_sq = sec.get_float("rho_sq", 1.0)
    lams = sec.get_floats("lambdas", [0.0, 0.5, 1.0, 2.0, 10.0])
    tol = _tol(sec, "tol", 1e-6, tol_override)
    fn = alpha if kind == "alpha" else beta
    if kind == "alpha":
        R_inf = max(r_infinity(t, lam, rho_sq, d) for lam in lams)
    else:
        R_inf = max(0.5 * r_infinity(2 * t, lam, rho_sq, d) for lam in lams)
    grid = sec.R_grid(R_inf)
    if grid[-1] < R_inf:
        grid = np.append(grid, R_inf)
    cols = ["R"] + [f"{kind}_lambda_{lam:g}" for lam in lams]
    data = [grid]
    checks = []
    for lam in lams:
        vals = np.array([fn(MultiplierQuery(t, float(R), lam, rho_sq, d)) for R in grid])
        data.append(vals)
        if kind == "alpha":
            checks.append(_abs_check(f"alpha limit lambda={lam:g}", vals[-1], 1.0, tol))
        else:
            target = math.exp(0.5 * t * lam)
            checks.append(_abs_check(f"beta limit (relative) lambda={lam:g}",
                                     vals[-1] / target, 1.0, tol))
    res = ExperimentResult(sec.label, cols, np.column_stack(data),
                           {"t": t, "d": d, "rho_sq": rho_sq, "kind": kind})
    return res, checks


def exp_invert_l2(sec, rng, tol_override):
    model = build_model(sec)
    t = sec.positive("t", 0.1)
    f = _random_function(sec, model, rng)
    tol = _tol(sec, "tol", 1e-6, tol_override)
    lams = f.eigenvalues[f.support]
    R_inf = r_infinity(t, float(lams.max()), model.rho_sq, model.dim)
    rep = global_inversion_l2(f, t, sec.R_grid(R_inf))
    res = rep.to_result(sec.label)
    res.metadata.update({"model": repr(model), "t": t})
    checks = [
        _below("relative L2 error at R_inf", rep.relative_final_error, tol),
        Check("error curve eventually decreasing", float(rep.decreasing_from()),
              float(rep.errors.size), 0.0, rep.eventually_decreasing()),
    ]
    return res, checks


def exp_invert_pointwise(sec, rng, tol_override):
    model = build_model(sec)
    t = sec.positive("t", 0.1)
    f = _random_function(sec, model, rng)
    tol = _tol(sec, "tol", 1e-6, tol_override)
    n_probes = sec.get_int("n_probes", 16)
    probes = rng.random((n_probes, model.dim)) if model.has_real_evaluation else None
    lams = f.eigenvalues[f.support]
    R_inf = r_infinity(t, float(lams.max()), model.rho_sq, model.dim)
    rep = global_inversion_pointwise(f, t, sec.R_grid(R_inf), probes)
    res = rep.to_result(sec.label)
    res.metadata.update({"model": repr(model), "t": t, "n_probes": n_probes})
    checks = [_below("sup error over probes at R_inf", rep.final_error, tol),
              Check("smoothness gate epsilon > 0", rep.gate.epsilon, 0.0, 0.0,
                    rep.gate.passes)]
    return res, checks


def exp_isometry(sec, rng, tol_override):
    model = build_model(sec)
    t = sec.positive("t", 0.1)
    f = _random_function(sec, model, rng)
    tol = _tol(sec, "tol", 1e-6, tol_override)
    lams = f.eigenvalues[f.support]
    R_inf = 0.5 * r_infinity(2 * t, float(lams.max()), model.rho_sq, model.dim)
    grid = sec.R_grid(R_inf)
    res = isometry_G(f, t, grid)
    res.name = sec.label
    checks = [_abs_check("G_F(R_inf) / ||f||^2", res.metadata["limit_estimate"] / f.norm_sq(),
                         1.0, tol)]
    geo_R = sec.get_floats("geometric_R", [0.1, 0.25]) if model.has_complexification else []
    geo_col = np.full(len(res), np.nan)
    for R in geo_R:
        g = isometry_geometric(f, t, R)
        s = isometry_G(f, t, [R]).rows[0, 1]
        checks.append(_abs_check(f"geometric vs spectral G_F at R={R:g}", g - s, 0.0, tol))
        match = np.isclose(res.rows[:-1, 0], R, rtol=0, atol=1e-15)
        geo_col[:-1][match] = g
    res = ExperimentResult(res.name, ["R", "G", "G_geometric"],
                           np.column_stack([res.rows, geo_col]),
                           dict(res.metadata, model=repr(model)))
    return res, checks


def exp_surjectivity(sec, rng, tol_override):
    model = build_model(sec)
    t = sec.positive("t", 0.1)
    F = _random_function(sec, model, rng)
    f = surjectivity_reconstruct(F.coefficients, model, t)
    back = heat(f, t).coefficients
    sup = F.support
    rel = float(np.max(np.abs(back[sup] - F.coefficients[sup]) / np.abs(F.coefficients[sup])))
    predicted = predicted_isometry_limit(F.coefficients, model, t)
    limit = isometry_G(f, t, [1.0]).metadata["limit_estimate"]
    rows = np.column_stack([sup, F.eigenvalues[sup], np.abs(F.coefficients[sup]),
                            np.abs(f.coefficients[sup]), np.abs(back[sup] - F.coefficients[sup])])
    res = ExperimentResult(sec.label, ["mode", "lambda", "abs_F", "abs_f", "roundtrip_abs_err"],
                           rows, {"model": repr(model), "t": t, "predicted_limit": predicted,
                                  "G_limit": limit})
    checks = [
        _below("round-trip relative error", rel, _tol(sec, "tol_roundtrip", 1e-12, tol_override)),
        _abs_check("lim G_F / sum |a|^2 exp(t lam)", limit / predicted, 1.0,
                   _tol(sec, "tol", 1e-6, tol_override)),
    ]
    return res, checks


def _lemma5_cases():
    gauss = lambda r: np.exp(-0.5 * np.asarray(r) ** 2 / 0.7)
    indicator = lambda r: np.ones_like(np.asarray(r, dtype=float))
    expo = lambda r: np.exp(-np.asarray(r))
    return [
        ("exp axis d=2 gaussian", euclidean_ball_eigenfunction([1.3, 0.0], "exponential"), gauss, 1.2),
        ("cos d=3 gaussian", euclidean_ball_eigenfunction([1.0, -2.0, 0.5], "plane_wave_real_part"), gauss, 1.5),
        ("shifted cos d=3 indicator", euclidean_ball_eigenfunction([2.0, 1.0, 0.0], "plane_wave_real_part", 0.7), indicator, 1.0),
        ("cos d=2 indicator", euclidean_ball_eigenfunction([0.0, 3.0], "plane_wave_real_part"), indicator, 1.3),
        ("cos d=1 exp(-r)", euclidean_ball_eigenfunction([2.5], "plane_wave_real_part", 0.3), expo, 2.0),
        ("exp oblique d=4 gaussian (MC)", euclidean_ball_eigenfunction([0.6, -0.4, 0.3, 0.2], "exponential"), gauss, 1.0),
    ]


def exp_lemma5(sec, rng, tol_override):
    tol = _tol(sec, "tol", 1e-7, tol_override)
    n_se = sec.get_float("n_stderr", 4.0)
    n_samples = sec.get_int("n_samples", 400_000)
    seed = int(rng.integers(2 ** 32))
    rows = []
    checks = []
    for i, (label, psi, prof, R) in enumerate(_lemma5_cases()):
        r = lemma5_check(psi, prof, R, n_samples=n_samples, seed=seed + i)
        rows.append([i, psi.dim, R, r.lhs, r.rhs, r.difference, r.stderr])
        if r.method == "montecarlo":
            checks.append(Check(f"lemma5 {label}: |diff|/stderr", abs(r.difference) / r.stderr,
                                0.0, n_se, abs(r.difference) <= n_se * r.stderr))
        else:
            checks.append(_below(f"lemma5 {label}: |diff|", abs(r.difference), tol))
    res = ExperimentResult(sec.label, ["case", "d", "R", "lhs", "rhs", "difference", "stderr"],
                           np.array(rows), {"cases": "; ".join(c[0] for c in _lemma5_cases())})
    return res, checks


def exp_holo_change(sec, rng, tol_override):
    tol = _tol(sec, "tol", 1e-8, tol_override)
    n_pairs = sec.get_int("n_pairs", 5)
    n_terms = sec.get_int("n_terms", 4)
    R = sec.positive("R", 0.25)
    # |F(x+iy)| grows like exp(2 pi |k| |y|); keep modes low so the
    # cancellation between modes stays far above rounding level
    model = circle_model(sec.get_int("n_modes", 9))
    profile = lambda y: np.exp(-np.asarray(y) ** 2)
    rows, checks = [], []
    for i in range(n_pairs):
        F1 = SpectralFunction.random(model, n_terms, rng).coefficients
        F2 = SpectralFunction.random(model, n_terms, rng).coefficients
        r = holo_change_check_circle(F1, F2, profile, R, model)
        rows.append([i, r.lhs.real, r.lhs.imag, r.rhs.real, r.rhs.imag, r.difference])
        scale = max(1.0, abs(r.lhs))
        checks.append(_below(f"pair {i}: |lhs - rhs| / max(1, |lhs|)", r.difference / scale, tol))
    res = ExperimentResult(sec.label, ["pair", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "difference"],
                           np.array(rows), {"R": R, "profile": "exp(-y^2)"})
    return res, checks


def exp_path_agreement(sec, rng, tol_override):
    model = build_model(sec)
    t = sec.positive("t", 0.1)
    tol = _tol(sec, "tol", 1e-6, tol_override)
    Rs = sec.get_floats("R_values", [0.1, 0.25])
    n_probes = sec.get_int("n_probes", 8)
    f = _random_function(sec, model, rng)
    probes = rng.random((n_probes, model.dim))
    rows, checks = [], []
    for R in Rs:
        geo = partial_inversion_geometric(f, t, R, probes)
        spec = partial_inversion_spectral(f, t, R)(probes)
        err = np.abs(geo - spec)
        for j in range(n_probes):
            rows.append([R, j, geo[j].real, geo[j].imag, spec[j].real, spec[j].imag, err[j]])
        checks.append(_below(f"max |geometric - spectral| at R={R:g}", err.max(), tol))
    res = ExperimentResult(sec.label, ["R", "probe", "geo_re", "geo_im", "spec_re", "spec_im",
                                       "abs_diff"], np.array(rows),
                           {"model": repr(model), "t": t})
    return res, checks


EXPERIMENTS = {
    "multiplier-curve": exp_multiplier_curve,
    "invert-l2": exp_invert_l2,
    "invert-pointwise": exp_invert_pointwise,
    "isometry": exp_isometry,
    "surjectivity": exp_surjectivity,
    "lemma5": exp_lemma5,
    "holo-change": exp_holo_change,
    "path-agreement": exp_path_agreement,
}

CATALOGUE = {
    "multiplier-curve": ("alpha/beta multipliers tabulated in R with their Gaussian limits",
                         "Partial inversion and partial isometry multipliers"),
    "invert-l2": ("L2 error of A_{t,R} f against f as R grows",
                  "Global inversion formula, L2 version"),
    "invert-pointwise": ("sup-over-probes error of A_{t,R} f and the smoothness gate",
                         "Global inversion formula, pointwise version"),
    "isometry": ("G_F(R) spectral curve, limit vs ||f||^2, geometric cross-check",
                 "Global isometry formula"),
    "surjectivity": ("reconstruct f from F = e^{t Delta/2} f and predict lim G_F",
                     "Surjectivity theorem"),
    "lemma5": ("ball integral of a Euclidean eigenfunction against a radial weight",
               "Euclidean eigenfunction ball-integral lemma"),
    "holo-change": ("both sides of the holomorphic change of variable on R/Z",
                    "Holomorphic change of variable (circle prototype)"),
    "path-agreement": ("geometric ball integral vs alpha multiplier for A_{t,R}",
                       "Partial inversion formula"),
}


def run_experiment(sec, rng, tol_override=None):
    if sec.kind not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {sec.kind!r}", sec.header_line, 2)
    return EXPERIMENTS[sec.kind](sec, rng, tol_override)
