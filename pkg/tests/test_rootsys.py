import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sbq.exceptions import RootSystemError
from sbq.rootsys import (
    RadialPoint,
    build_root_system,
    j_c_half_radial,
    j_c_radial,
    j_nc_radial,
    j_radial,
    j_radial_series,
    polar_density,
    reflect,
    simple_roots,
)

FAMILIES = ["A1", "A1xA1", "A2"]


@pytest.fixture(params=FAMILIES)
def system(request):
    return build_root_system(request.param)


def test_a1_is_hyperbolic_three_space():
    s = build_root_system("A1")
    assert s.rank == 1
    assert s.dim == 3
    assert s.rho_norm_sq == pytest.approx(1.0, abs=1e-15)
    assert s.multiplicity == (2,)


def test_a1xa1_is_direct_sum():
    a1 = build_root_system("A1")
    s = build_root_system("A1xA1")
    assert (s.rank, s.dim) == (2, 6)
    np.testing.assert_allclose(s.rho, np.concatenate([a1.rho, a1.rho]))
    assert s.rho_norm_sq == pytest.approx(2 * a1.rho_norm_sq)


def test_a2():
    s = build_root_system("A2")
    assert (s.rank, s.dim) == (2, 8)
    np.testing.assert_allclose(s.rho, 2 * s.positive_roots[2])


def test_empty_custom_is_euclidean():
    s = build_root_system("custom", [], rank=3)
    assert (s.rank, s.dim) == (3, 3)
    assert s.rho_norm_sq == 0.0
    H = np.array([0.3, -1.0, 2.0])
    assert j_radial(s, H) == 1.0
    assert j_c_radial(s, H) == 1.0
    assert polar_density(s, H) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("roots, msg", [
    ([[1.0, 0.0], [2.0, 0.0]], "roots 0 and 1"),
    ([[1.0, 1.0], [0.0, 0.0]], "root 1 is zero"),
    ([[0.0, 1.0], [1.0, 0.0], [0.0, 0.5]], "roots 0 and 2"),
])
def test_invalid_custom_roots_named(roots, msg):
    with pytest.raises(RootSystemError, match=msg):
        build_root_system("custom", roots)


def test_unknown_family():
    with pytest.raises(RootSystemError):
        build_root_system("E8")


def test_system_is_immutable(system):
    with pytest.raises(Exception):
        system.rank = 5
    with pytest.raises(ValueError):
        system.positive_roots[0, 0] = 3.0


def test_values_at_origin(system):
    H = np.zeros(system.rank)
    assert j_radial(system, H) == 1.0
    assert j_c_radial(system, H) == 1.0
    assert j_c_half_radial(system, H) == 1.0
    assert j_nc_radial(system, H) == 1.0


def test_a1_reference_values():
    s = build_root_system("A1")
    assert j_radial(s, [1.0]) == pytest.approx(math.sinh(1.0) ** 2, rel=1e-15)
    assert j_c_radial(s, [math.pi]) == pytest.approx(0.0, abs=1e-30)
    assert j_c_half_radial(s, [math.pi]) == pytest.approx(0.0, abs=1e-15)
    # signed root: negative between pi and 2 pi
    assert j_c_half_radial(s, [4.0]) < 0


def test_a1_reproduces_sinc_squared():
    s = build_root_system("A1")
    y = np.linspace(1e-6, 10.0, 2001)
    np.testing.assert_allclose(j_c_radial(s, y[:, None]), (np.sin(y) / y) ** 2,
                               rtol=1e-14, atol=1e-300)


def test_series_branch_is_continuous():
    s = build_root_system("A1")
    for u in (0.99e-4, 1.01e-4):
        assert j_radial(s, [u]) == pytest.approx((math.sinh(u) / u) ** 2, rel=1e-15)
        assert j_c_half_radial(s, [u]) == pytest.approx(math.sin(u) / u, rel=1e-15)


def _grid(rank, n=9, L=4.0):
    axes = [np.linspace(-L, L, n)] * rank
    return np.stack([m.ravel() for m in np.meshgrid(*axes)], axis=-1)


def test_half_squared_is_jc(system):
    H = _grid(system.rank)
    np.testing.assert_allclose(j_c_half_radial(system, H) ** 2, j_c_radial(system, H),
                               rtol=1e-12, atol=1e-300)


def test_lower_bounds(system):
    H = _grid(system.rank)
    assert np.all(j_c_radial(system, H) >= 0)
    assert np.all(j_radial(system, H) >= 1.0)


@pytest.mark.parametrize("fn", [j_radial, j_c_radial, j_nc_radial])
def test_weyl_reflection_invariance(system, fn):
    H = _grid(system.rank, n=7, L=2.5)
    base = fn(system, H)
    for a in simple_roots(system):
        refl = np.array([reflect(h, a) for h in H])
        np.testing.assert_allclose(fn(system, refl), base, rtol=1e-12)


def test_simple_roots_of_a2():
    s = build_root_system("A2")
    assert len(simple_roots(s)) == 2


def test_duality_series_at_imaginary_point(system):
    rng = np.random.default_rng(3)
    H = rng.normal(size=(200, system.rank))
    H *= (4.0 * rng.random(200) / np.linalg.norm(H, axis=1))[:, None]
    np.testing.assert_allclose(j_radial_series(system, 1j * H).real, j_c_radial(system, H),
                               rtol=1e-10, atol=1e-10)
    assert np.max(np.abs(j_radial_series(system, 1j * H).imag)) < 1e-12
    np.testing.assert_allclose(j_radial_series(system, H).real, j_radial(system, H), rtol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 4.0), st.floats(0.0, 2 * math.pi))
def test_duality_property_a2(r, theta):
    s = build_root_system("A2")
    H = np.array([r * math.cos(theta), r * math.sin(theta)])
    assert abs(j_radial_series(s, 1j * H) - j_c_radial(s, H)) < 1e-10


def test_radial_point_checks_chamber():
    s = build_root_system("A2")
    RadialPoint(s, [0.2, 1.0])
    with pytest.raises(RootSystemError):
        RadialPoint(s, [1.0, 0.2])
    with pytest.raises(RootSystemError):
        polar_density(s, [0.0, -1.0])


def test_a1_polar_density_is_spherical():
    s = build_root_system("A1")
    for h in (0.3, 1.0, 2.5):
        assert polar_density(s, [h]) == pytest.approx(4 * math.pi * h * h, rel=1e-12)


def test_a1xa1_density_is_product():
    a1 = build_root_system("A1")
    s = build_root_system("A1xA1")
    H = np.array([0.7, 1.9])
    assert polar_density(s, H) == pytest.approx(
        polar_density(a1, H[:1]) * polar_density(a1, H[1:]), rel=1e-9)


def test_polar_density_monte_carlo_d3():
    """Radial Gaussian in three dimensions: chamber integral vs direct Monte Carlo."""
    from scipy import integrate

    s = build_root_system("A1")
    g = lambda r: np.exp(-0.5 * (r / 0.8) ** 2) * (1 + r ** 2)
    chamber, _ = integrate.quad(lambda h: g(h) * polar_density(s, [h]), 0, np.inf)
    rng = np.random.default_rng(11)
    L = 6.0
    Y = rng.uniform(-L, L, size=(1_000_000, 3))
    v = g(np.linalg.norm(Y, axis=1)) * (2 * L) ** 3
    est, se = v.mean(), v.std(ddof=1) / math.sqrt(v.size)
    assert abs(chamber - est) < 3 * se


def test_polar_constant_via_monte_carlo_calibration_rank3():
    roots = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    s = build_root_system("custom", roots)
    # product of three A1 factors; per-sample relative sd is about 15, so the
    # 2e6-sample calibration carries roughly 1% standard error
    assert s.polar_constant == pytest.approx((4 * math.pi) ** 3, rel=3e-2)
