import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from sbq.estimators import HeatSemigroup, PartialInversion, PartialIsometry
from sbq.models import SpectralFunction, circle_model, synthetic_quotient_model
from sbq.transform import heat, isometry_G, partial_inversion_spectral


@pytest.fixture
def X():
    rng = np.random.default_rng(5)
    return rng.normal(size=(4, 9)) + 1j * rng.normal(size=(4, 9))


def test_params_and_clone():
    est = PartialInversion(model=circle_model(16), t=0.3, R=0.7)
    params = est.get_params()
    assert params["t"] == 0.3 and params["R"] == 0.7 and params["rel_tol"] == 1e-10
    c = clone(est).set_params(R=2.0)
    assert c.R == 2.0 and est.R == 0.7


def test_heat_matches_functional_api(X):
    m = circle_model(16)
    out = HeatSemigroup(model=m, t=0.2).fit_transform(X)
    for row, o in zip(X, out):
        np.testing.assert_allclose(o, heat(SpectralFunction(m, row), 0.2).coefficients)


def test_heat_round_trip(X):
    est = HeatSemigroup(model=circle_model(16), t=0.05).fit(X)
    np.testing.assert_allclose(est.inverse_transform(est.transform(X)), X, rtol=1e-12)


def test_partial_inversion_matches_functional_api(X):
    m = synthetic_quotient_model(3, n_modes=50)
    out = PartialInversion(model=m, t=0.5, R=0.8).fit(X).transform(X)
    ref = partial_inversion_spectral(SpectralFunction(m, X[0]), 0.5, 0.8).coefficients
    np.testing.assert_allclose(out[0], ref, rtol=1e-13)


def test_partial_isometry_score(X):
    m = circle_model(16)
    est = PartialIsometry(model=m, t=0.1, R=0.3).fit(X)
    G = est.score_samples(X)
    ref = isometry_G(SpectralFunction(m, X[1]), 0.1, R_grid=[0.3]).column("G")[0]
    assert G[1] == pytest.approx(ref, rel=1e-12)


def test_default_model_and_pipeline(X):
    pipe = make_pipeline(HeatSemigroup(t=0.1), PartialInversion(t=0.1, R=0.5))
    out = pipe.fit_transform(X)
    assert out.shape == X.shape
    assert pipe[0].model_.name == "circle"


def test_not_fitted(X):
    with pytest.raises(NotFittedError):
        HeatSemigroup().transform(X)


@pytest.mark.parametrize("bad, err", [
    (np.array([[np.nan, 1.0]]), ValueError),
    (np.zeros((2, 2, 2)), ValueError),
    (np.zeros((2, 0)), ValueError),
    (np.array([["a", None]], dtype=object), TypeError),
    (np.zeros((1, 100)), ValueError),
])
def test_input_validation(bad, err):
    with pytest.raises(err):
        HeatSemigroup(model=circle_model(16)).fit(bad)


def test_parameter_validation(X):
    with pytest.raises(ValueError, match="t must be"):
        HeatSemigroup(t=-1.0).fit(X)
    with pytest.raises(ValueError, match="R must be"):
        PartialInversion(R=0).fit(X)


def test_column_mismatch(X):
    est = HeatSemigroup().fit(X)
    with pytest.raises(ValueError, match="columns"):
        est.transform(X[:, :3])


def test_one_dimensional_input_is_one_sample():
    est = HeatSemigroup().fit(np.ones(4))
    assert est.transform(np.ones(4)).shape == (1, 4)


def test_docstring_examples():
    import doctest
    import sbq.estimators

    assert doctest.testmod(sbq.estimators).failed == 0
