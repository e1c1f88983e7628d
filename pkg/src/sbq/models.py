"""Spectral models: eigen-decomposition oracles standing in for a compact quotient.

A model enumerates an orthonormal eigenbasis ``psi_n`` of ``-Laplacian`` with
nondecreasing eigenvalues ``lam_n`` (``lam_0 = 0``, ``psi_0`` constant). The
flat circle and torus supply closed-form holomorphic extensions
``psi_n(x + iY)``; the synthetic model only carries a spectrum and is used for
everything that can be decided on the spectral side.
"""
from dataclasses import dataclass, field
from itertools import product
import math

import numpy as np

from .exceptions import CapabilityError, RadiusError

__all__ = [
    "SpectralModel",
    "TorusModel",
    "SyntheticQuotientModel",
    "SpectralFunction",
    "EuclideanEigenfunction",
    "circle_model",
    "torus_model",
    "synthetic_quotient_model",
    "euclidean_ball_eigenfunction",
]

TWO_PI = 2.0 * math.pi


class SpectralModel:
    """Interface shared by all models.

    Subclasses set ``name``, ``dim``, ``rho_sq``, ``analyticity_radius`` and
    ``eigenvalues`` and override the evaluation hooks they support.
    """

    name = "abstract"
    dim = 1
    rho_sq = 0.0
    analyticity_radius = math.inf
    has_real_evaluation = False
    has_complexification = False

    @property
    def n_modes(self):
        return len(self.eigenvalues)

    def eigenvalue(self, n):
        return float(self.eigenvalues[n])

    def eigenfunction_real(self, n, x):
        raise CapabilityError(self.name, "eigenfunction evaluation")

    def eigenfunction_complex(self, n, x, Y):
        raise CapabilityError(self.name, "complexified eigenfunction evaluation")

    def evaluate_modes(self, x, Y=None, modes=None):
        raise CapabilityError(self.name, "eigenfunction evaluation")

    def sup_norm_bound(self, n):
        raise NotImplementedError

    def integrate(self, g):
        raise CapabilityError(self.name, "integration over the base")

    def check_radius(self, R):
        if not R < self.analyticity_radius:
            raise RadiusError(
                f"radius {R} is not below the analyticity radius "
                f"{self.analyticity_radius} of model {self.name!r}")


def _circle_frequencies(n_modes):
    # flat ordering 0, +1, -1, +2, -2, ...
    n = np.arange(n_modes)
    return np.where(n % 2 == 1, (n + 1) // 2, -(n // 2))


class TorusModel(SpectralModel):
    """Flat torus ``R^d / Z^d`` with ``psi_k(x) = exp(2 pi i k.x)``.

    Modes are the integer vectors with every component in the first
    ``n_modes_per_axis`` entries of the ordering ``0, +1, -1, +2, ...``, sorted
    by ``|k|**2`` and lexicographically within each shell. ``d = 1`` is the
    circle, where the order is exactly ``0, +1, -1, +2, -2, ...``.
    """

    has_real_evaluation = True
    has_complexification = True

    def __init__(self, dim, n_modes_per_axis, name=None):
        if dim < 1 or n_modes_per_axis < 1:
            raise ValueError("dim and n_modes_per_axis must be >= 1")
        self.dim = int(dim)
        self.n_modes_per_axis = int(n_modes_per_axis)
        self.name = name or ("circle" if dim == 1 else f"torus{dim}")
        axis = _circle_frequencies(self.n_modes_per_axis)
        if self.dim == 1:
            ks = axis.reshape(-1, 1)
        else:
            ks = np.array(sorted(product(axis.tolist(), repeat=self.dim),
                                 key=lambda k: (sum(v * v for v in k), k)))
        self.frequencies = ks.astype(int)
        self.frequencies.setflags(write=False)
        self.eigenvalues = TWO_PI ** 2 * np.sum(self.frequencies ** 2, axis=1).astype(float)
        self.eigenvalues.setflags(write=False)
        self.max_frequency = int(np.max(np.abs(axis)))
        self.grid_size = max(4 * self.max_frequency, 8)
        self.rho_sq = 0.0
        self.analyticity_radius = math.inf

    def __repr__(self):
        return f"TorusModel(dim={self.dim}, n_modes_per_axis={self.n_modes_per_axis})"

    def _point(self, x):
        x = np.asarray(x, dtype=float)
        if self.dim == 1 and x.ndim == 0:
            x = x.reshape(1)
        return x

    def eigenfunction_real(self, n, x):
        x = self._point(x)
        return np.exp(1j * TWO_PI * (x @ self.frequencies[n]))

    def eigenfunction_complex(self, n, x, Y):
        Y = self._point(Y)
        self.check_radius(float(np.linalg.norm(Y)))
        z = self._point(x) + 1j * Y
        return np.exp(1j * TWO_PI * (z @ self.frequencies[n]))

    def evaluate_modes(self, x, Y=None, modes=None):
        """Matrix ``psi_n(x_i + i Y_i)`` of shape ``(n_points, n_selected_modes)``.

        ``x`` and ``Y`` have shape ``(n_points, dim)`` (or ``(n_points,)`` on the
        circle) and broadcast against each other.
        """
        x = np.asarray(x, dtype=float)
        if self.dim == 1 and x.ndim <= 1:
            x = x.reshape(-1, 1)
        z = x.astype(complex)
        if Y is not None:
            Y = np.asarray(Y, dtype=float)
            if self.dim == 1 and Y.ndim <= 1:
                Y = Y.reshape(-1, 1)
            z = z + 1j * Y
        ks = self.frequencies if modes is None else self.frequencies[np.asarray(modes)]
        return np.exp(1j * TWO_PI * (z @ ks.T))

    def sup_norm_bound(self, n):
        return 1.0

    def quadrature_grid(self):
        """Uniform grid nodes on ``[0,1)^d``, exact for the model's trig products."""
        g = np.arange(self.grid_size) / self.grid_size
        if self.dim == 1:
            return g.reshape(-1, 1)
        mesh = np.meshgrid(*([g] * self.dim), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def integrate(self, g):
        """Integral over the torus (unit volume) of ``g`` evaluated on the grid."""
        pts = self.quadrature_grid()
        vals = np.asarray(g(pts if self.dim > 1 else pts[:, 0]))
        return vals.mean(axis=0)

    def complex_growth(self, n, Y_norm):
        """Upper bound on ``|psi_n(x + iY)|`` for ``|Y| <= Y_norm``."""
        return math.exp(TWO_PI * float(np.linalg.norm(self.frequencies[n])) * Y_norm)

    def truncation_tail(self, t, Y_norm):
        """Bound on ``sum_{k outside the mode box} exp(-t lam_k/2) |psi_k(x+iY)|``.

        Uses ``|k| |Y| <= |Y| sum|k_i|`` so the sum factorises over axes.
        """
        K = self.max_frequency

        def w(k):
            return np.exp(-2.0 * math.pi ** 2 * t * k * k + TWO_PI * k * Y_norm)

        kmax = K + 1
        while w(kmax) > 1e-300 and kmax < K + 100000:
            kmax *= 2
        ks_in = np.arange(-K, K + 1, dtype=float)
        ks_out = np.arange(K + 1, kmax + 1, dtype=float)
        inner = w(ks_in).sum()
        outer = 2.0 * w(ks_out).sum()
        d = self.dim
        return float(sum(math.comb(d, j) * outer ** j * inner ** (d - j)
                         for j in range(1, d + 1)))


def circle_model(n_modes=64):
    """The circle ``R/Z`` with modes ``0, +1, -1, +2, -2, ...``."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    return TorusModel(1, n_modes, name="circle")


def torus_model(d, n_modes_per_axis=15):
    """The flat torus ``R^d/Z^d``, product of circle models."""
    return TorusModel(d, n_modes_per_axis)


class SyntheticQuotientModel(SpectralModel):
    """Spectrum-only stand-in for a compact quotient.

    ``lam_0 = 0``, then the supplied low eigenvalues in ``[0, rho_sq)``, then a
    Weyl-law tail ``weyl_const * n**(2/d)``. Eigenfunctions are not available.
    """

    def __init__(self, dim=3, rho_sq=1.0, weyl_const=1.0, n_modes=2000,
                 low_spectrum=(0.5,), sup_const=1.0, analyticity_radius=1.0, seed=0):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        if not weyl_const > 0:
            raise ValueError("weyl_const must be positive")
        low = [float(v) for v in low_spectrum]
        if any(v < 0 or v >= rho_sq for v in low):
            raise ValueError(f"low_spectrum values must lie in [0, rho_sq={rho_sq})")
        if low != sorted(low):
            raise ValueError("low_spectrum must be sorted")
        if n_modes < len(low) + 2:
            raise ValueError("n_modes too small for the requested low spectrum")
        self.name = "synthetic"
        self.dim = int(dim)
        self.rho_sq = float(rho_sq)
        self.weyl_const = float(weyl_const)
        self.sup_const = float(sup_const)
        self.analyticity_radius = float(analyticity_radius)
        self.seed = seed
        n_tail = np.arange(len(low) + 1, n_modes)
        tail = self.weyl_const * n_tail ** (2.0 / self.dim)
        lams = np.concatenate([[0.0], low, tail])
        if np.any(np.diff(lams) < 0):
            raise ValueError(
                "Weyl tail starts below the low spectrum; increase weyl_const")
        self.eigenvalues = lams
        self.eigenvalues.setflags(write=False)
        self.low_spectrum = tuple(low)

    def __repr__(self):
        return (f"SyntheticQuotientModel(dim={self.dim}, rho_sq={self.rho_sq}, "
                f"weyl_const={self.weyl_const}, n_modes={self.n_modes})")

    def sup_norm_bound(self, n):
        return self.sup_const * max(int(n), 1) ** ((self.dim - 1) / (2.0 * self.dim))


def synthetic_quotient_model(d=3, rho_sq=1.0, weyl_const=1.0, n_modes=2000,
                             low_spectrum=(0.5,), seed=0, sup_const=1.0,
                             analyticity_radius=1.0):
    return SyntheticQuotientModel(d, rho_sq, weyl_const, n_modes, low_spectrum,
                                  sup_const, analyticity_radius, seed)


@dataclass
class SpectralFunction:
    """``f = sum_n a_n psi_n`` for a finite coefficient vector on a model.

    Coefficients beyond the vector length are zero. A finite vector lies in
    the domain of every power of the Laplacian, so ``sobolev_order`` is
    infinite unless the caller declares otherwise.
    """

    model: SpectralModel
    coefficients: np.ndarray
    sobolev_order: float = math.inf

    def __post_init__(self):
        a = np.asarray(self.coefficients, dtype=complex).ravel()
        if a.size > self.model.n_modes:
            raise ValueError(
                f"{a.size} coefficients exceed the {self.model.n_modes} model modes")
        if not np.all(np.isfinite(a)):
            raise ValueError("coefficients must be finite")
        self.coefficients = a

    @classmethod
    def random(cls, model, n_terms, rng, max_index=None):
        """Random function supported on ``n_terms`` modes among the first ``max_index``."""
        max_index = model.n_modes if max_index is None else min(max_index, model.n_modes)
        idx = rng.choice(max_index, size=n_terms, replace=False)
        a = np.zeros(max_index, dtype=complex)
        a[idx] = rng.standard_normal(n_terms) + 1j * rng.standard_normal(n_terms)
        return cls(model, a)

    @classmethod
    def basis(cls, model, n, scale=1.0):
        a = np.zeros(n + 1, dtype=complex)
        a[n] = scale
        return cls(model, a)

    @property
    def eigenvalues(self):
        return np.asarray(self.model.eigenvalues[: self.coefficients.size])

    @property
    def support(self):
        return np.flatnonzero(self.coefficients)

    def norm_sq(self):
        return float(np.sum(np.abs(self.coefficients) ** 2))

    def norm(self):
        return math.sqrt(self.norm_sq())

    def with_coefficients(self, a):
        return SpectralFunction(self.model, a, self.sobolev_order)

    def __call__(self, x):
        """Evaluate on the real base at points ``x``."""
        sup = self.support
        if sup.size == 0:
            n = np.asarray(x).shape[0] if np.ndim(x) else 1
            return np.zeros(n, dtype=complex)
        return self.model.evaluate_modes(x, modes=sup) @ self.coefficients[sup]

    def sobolev_norm_sq(self, l):
        """``sum |a_n|**2 lam_n**(2 l)``."""
        return float(np.sum(np.abs(self.coefficients) ** 2 * self.eigenvalues ** (2 * l)))


@dataclass(frozen=True)
class EuclideanEigenfunction:
    """``Psi`` on ``R^d`` with ``Laplacian Psi = sigma Psi`` (Euclidean Laplacian)."""

    k: np.ndarray
    kind: str
    phase: float = 0.0
    sigma: float = field(init=False)

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float).ravel()
        object.__setattr__(self, "k", k)
        if self.kind == "exponential":
            sigma = float(k @ k)
        elif self.kind == "plane_wave_real_part":
            sigma = -float(k @ k)
        else:
            raise ValueError(f"unknown eigenfunction kind {self.kind!r}")
        object.__setattr__(self, "sigma", sigma)

    @property
    def dim(self):
        return self.k.size

    def __call__(self, Y):
        s = np.asarray(Y, dtype=float) @ self.k
        if self.kind == "exponential":
            return np.exp(s + self.phase)
        return np.cos(s + self.phase)

    def at_origin(self):
        return float(self(np.zeros(self.dim)))


def euclidean_ball_eigenfunction(k_vector, kind="plane_wave_real_part", phase=0.0):
    """Test eigenfunction of the Euclidean Laplacian.

    ``exponential``: ``exp(k.Y + phase)`` with ``sigma = |k|**2``.
    ``plane_wave_real_part``: ``cos(k.Y + phase)`` with ``sigma = -|k|**2``.
    """
    return EuclideanEigenfunction(np.asarray(k_vector, dtype=float), kind, phase)
