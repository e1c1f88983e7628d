"""Root-system data and radial Jacobians for symmetric spaces of complex type.

All restricted roots have multiplicity 2, so the Jacobian of the exponential
map restricted to the Cartan subspace is

    j(H)      = prod_alpha (sinh alpha(H) / alpha(H))**2
    j^c(H)    = prod_alpha (sin  alpha(H) / alpha(H))**2
    j^c(H)^½  = prod_alpha  sin  alpha(H) / alpha(H)      (signed, analytic)

Conventions
-----------
The inner product on the tangent space is fixed by the rank-one family
``"A1"``: its single positive root has unit length, so that
``j^c(Y) = (sin|Y| / |Y|)**2`` and ``|rho|**2 = 1`` (hyperbolic 3-space with
curvature -1). Higher-rank built-ins use unit-length roots as well. The
normalisation of the polar density is calibrated numerically (see
:func:`polar_density`).
"""
from dataclasses import dataclass, field
from itertools import combinations
import math

import numpy as np
from scipy import integrate
from scipy.special import gamma

from .exceptions import RootSystemError

__all__ = [
    "RootSystemData",
    "RadialPoint",
    "build_root_system",
    "j_radial",
    "j_c_radial",
    "j_c_half_radial",
    "j_nc_radial",
    "j_radial_series",
    "polar_density",
    "simple_roots",
    "reflect",
]

MULTIPLICITY = 2
_SERIES_CUTOFF = 1e-4
_POLAR_MC_SAMPLES = 2_000_000


@dataclass(frozen=True)
class RootSystemData:
    """Positive restricted roots of a complex-type symmetric space.

    Instances are immutable; build them with :func:`build_root_system`.
    """

    rank: int
    positive_roots: np.ndarray
    multiplicity: tuple
    dim: int
    rho: np.ndarray
    rho_norm_sq: float
    name: str = "custom"
    polar_constant: float = field(default=float("nan"), compare=False)

    def root_values(self, H):
        """Return ``alpha(H)`` for every positive root, shape ``(..., n_roots)``."""
        H = np.asarray(H)
        if H.shape[-1] != self.rank:
            raise RootSystemError(
                f"expected vectors of length {self.rank}, got shape {H.shape}")
        if len(self.positive_roots) == 0:
            return np.zeros(H.shape[:-1] + (0,), dtype=H.dtype)
        return H @ self.positive_roots.T

    def in_chamber(self, H, atol=1e-12):
        return bool(np.all(self.root_values(np.asarray(H, dtype=float)) >= -atol))


@dataclass(frozen=True)
class RadialPoint:
    """A point of the closed fundamental Weyl chamber."""

    system: RootSystemData
    H: np.ndarray

    def __post_init__(self):
        H = np.asarray(self.H, dtype=float)
        if H.shape != (self.system.rank,):
            raise RootSystemError(
                f"radial point must have shape ({self.system.rank},), got {H.shape}")
        if not self.system.in_chamber(H):
            raise RootSystemError(f"{H.tolist()} is outside the closed Weyl chamber")
        object.__setattr__(self, "H", H)


def _family_roots(family):
    if family == "A1":
        return 1, [[1.0]]
    if family == "A1xA1":
        return 2, [[1.0, 0.0], [0.0, 1.0]]
    if family == "A2":
        s = math.sqrt(3.0) / 2.0
        return 2, [[1.0, 0.0], [-0.5, s], [0.5, s]]
    raise RootSystemError(f"unknown root-system family {family!r}")


def _validate_custom(roots):
    for i, a in enumerate(roots):
        if not np.any(a):
            raise RootSystemError(f"root {i} is zero")
    for i, j in combinations(range(len(roots)), 2):
        a, b = roots[i], roots[j]
        # b == c*a with c > 0  <=>  parallel and same orientation
        cross = np.outer(a, b) - np.outer(b, a)
        if np.allclose(cross, 0.0, atol=1e-12) and a @ b > 0:
            raise RootSystemError(
                f"roots {i} and {j} ({a.tolist()}, {b.tolist()}) are positive "
                "multiples of each other")


def build_root_system(family, custom_roots=None, rank=None):
    """Construct :class:`RootSystemData` for a small family.

    Parameters
    ----------
    family : {"A1", "A1xA1", "A2", "custom"}
    custom_roots : sequence of vectors, optional
        Positive roots for ``family="custom"``.
    rank : int, optional
        Required for ``custom`` when the root list is empty.
    """
    if family == "custom":
        roots = [np.asarray(r, dtype=float) for r in (custom_roots or [])]
        if roots:
            rank_ = roots[0].shape[0]
            if any(r.shape != (rank_,) for r in roots):
                raise RootSystemError("custom roots must all have the same length")
            if rank is not None and rank != rank_:
                raise RootSystemError(f"rank {rank} does not match root length {rank_}")
        else:
            if rank is None or rank < 1:
                raise RootSystemError("an empty custom root system needs a positive rank")
            rank_ = int(rank)
        _validate_custom(roots)
    else:
        if custom_roots:
            raise RootSystemError("custom_roots only allowed with family='custom'")
        rank_, raw = _family_roots(family)
        roots = [np.asarray(r, dtype=float) for r in raw]

    root_arr = np.array(roots, dtype=float).reshape(len(roots), rank_)
    rho = 0.5 * MULTIPLICITY * root_arr.sum(axis=0) if len(roots) else np.zeros(rank_)
    root_arr.setflags(write=False)
    rho.setflags(write=False)
    system = RootSystemData(
        rank=rank_,
        positive_roots=root_arr,
        multiplicity=(MULTIPLICITY,) * len(roots),
        dim=rank_ + MULTIPLICITY * len(roots),
        rho=rho,
        rho_norm_sq=float(rho @ rho),
        name=family,
    )
    object.__setattr__(system, "polar_constant", _calibrate_polar(system))
    return system


def _as_array(H):
    if isinstance(H, RadialPoint):
        return H.H
    return np.asarray(H)


def _sinhc(u):
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < _SERIES_CUTOFF
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(small, 1.0, np.sinh(u) / np.where(small, 1.0, u))
    u2 = u * u
    return np.where(small, 1.0 + u2 / 6.0 + u2 * u2 / 120.0, out)


def _sinc(u):
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < _SERIES_CUTOFF
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(small, 1.0, np.sin(u) / np.where(small, 1.0, u))
    u2 = u * u
    return np.where(small, 1.0 - u2 / 6.0 + u2 * u2 / 120.0, out)


def j_radial(system, H):
    """Jacobian of the exponential map, ``prod (sinh a(H)/a(H))**2``."""
    u = system.root_values(_as_array(H).astype(float))
    return np.prod(_sinhc(u) ** 2, axis=-1)


def j_nc_radial(system, H):
    """Noncompact-dual Jacobian; evaluated with the same product as :func:`j_radial`."""
    return j_radial(system, H)


def j_c_half_radial(system, H):
    """Signed analytic square root ``prod sin a(H)/a(H)`` of :func:`j_c_radial`."""
    u = system.root_values(_as_array(H).astype(float))
    return np.prod(_sinc(u), axis=-1)


def j_c_radial(system, H):
    """Compact-dual Jacobian ``prod (sin a(H)/a(H))**2``."""
    u = system.root_values(_as_array(H).astype(float))
    return np.prod(_sinc(u) ** 2, axis=-1)


def j_radial_series(system, H, n_terms=60):
    """Evaluate ``j`` at a possibly complex point via the power series of sinh(u)/u.

    ``j_radial_series(sys, 1j * H)`` reproduces ``j_c_radial(sys, H)``.
    """
    u = system.root_values(np.asarray(H, dtype=complex))
    u2 = u * u
    term = np.ones_like(u2)
    total = np.ones_like(u2)
    for k in range(1, n_terms):
        term = term * u2 / ((2 * k) * (2 * k + 1))
        total = total + term
    return np.prod(total ** 2, axis=-1)


def simple_roots(system):
    """Positive roots that are not a sum of two other positive roots."""
    roots = system.positive_roots
    out = []
    for i, a in enumerate(roots):
        decomposable = any(
            np.allclose(roots[j] + roots[k], a)
            for j, k in combinations(range(len(roots)), 2) if i not in (j, k))
        if not decomposable:
            out.append(a)
    return np.array(out).reshape(len(out), system.rank)


def reflect(H, root):
    """Reflect ``H`` across the hyperplane ``root(H) = 0``."""
    H = np.asarray(H, dtype=float)
    root = np.asarray(root, dtype=float)
    return H - 2.0 * (H @ root) / (root @ root) * root


def _chamber_gaussian_moment(system):
    """``int_{chamber} prod alpha(H)**2 exp(-|H|**2/2) dH``."""
    r = system.rank
    roots = system.positive_roots
    npow = 2 * len(roots)
    # radial part: int_0^inf s^(r-1+npow) e^{-s^2/2} ds
    radial = 2.0 ** ((r + npow) / 2.0 - 1.0) * gamma((r + npow) / 2.0)
    if r == 1:
        # chamber is the half-line where every root is nonnegative
        signs = {np.sign(a[0]) for a in roots}
        if len(signs) > 1:
            return 0.0
        n_dirs = 1 if roots.size else 2
        ang = np.prod(np.abs(roots[:, 0]) ** 2) if roots.size else 1.0
        return n_dirs * ang * radial
    if r == 2:
        # chamber is a cone; its boundary angles are among the root normals
        cands = []
        for a in roots:
            th = math.atan2(a[1], a[0])
            cands += [(th + math.pi / 2) % (2 * math.pi), (th - math.pi / 2) % (2 * math.pi)]
        cands = sorted(set(cands + [0.0])) + [2 * math.pi]
        nodes, weights = np.polynomial.legendre.leggauss(max(8, npow + 4))
        ang = 0.0
        for lo, hi in zip(cands[:-1], cands[1:]):
            if hi - lo < 1e-14:
                continue
            mid = 0.5 * (lo + hi)
            w = np.array([math.cos(mid), math.sin(mid)])
            if roots.size and np.any(roots @ w < 0):
                continue
            th = 0.5 * (hi - lo) * nodes + mid
            om = np.stack([np.cos(th), np.sin(th)], axis=-1)
            vals = np.prod((om @ roots.T) ** 2, axis=-1) if roots.size else np.ones_like(th)
            ang += 0.5 * (hi - lo) * (weights @ vals)
        return ang * radial
    # rank >= 3: seeded Monte Carlo over a standard Gaussian
    rng = np.random.default_rng(0)
    H = rng.standard_normal((_POLAR_MC_SAMPLES, r))
    vals = system.root_values(H)
    inside = np.all(vals >= 0, axis=-1)
    est = np.mean(np.where(inside, np.prod(vals ** 2, axis=-1), 0.0))
    return est * (2 * math.pi) ** (r / 2.0)


def _calibrate_polar(system):
    moment = _chamber_gaussian_moment(system)
    if not moment > 0:
        raise RootSystemError("closed Weyl chamber has empty interior")
    return (2 * math.pi) ** (system.dim / 2.0) / moment


def polar_density(system, H):
    """Density ``mu(H) = c * prod alpha(H)**2`` on the closed chamber.

    ``c`` is fixed so that for radial ``g``,
    ``int_{R^d} g(|Y|) dY = int_{chamber} g(|H|) mu(H) dH``. For ``A1`` this
    gives ``4*pi*|H|**2``, the spherical surface factor in three dimensions.
    """
    if not isinstance(H, RadialPoint):
        H = RadialPoint(system, H)
    vals = system.root_values(H.H)
    return float(system.polar_constant * np.prod(vals ** 2))
