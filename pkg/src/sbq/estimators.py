"""scikit-learn compatible wrappers around the spectral operators.

Each estimator acts on rows of eigen-coefficients (``n_samples x n_modes``,
complex). ``fit`` only validates the input and caches the eigenvalues and the
multiplier values for the first ``n_modes`` modes of the model.
"""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_coefficients, check_positive
from .models import circle_model
from .multiplier import QuadratureSettings, alpha, damped_beta
from .transform import multiplier_vector

__all__ = ["HeatSemigroup", "PartialInversion", "PartialIsometry"]


class _SpectralEstimator(TransformerMixin, BaseEstimator):

    def _fit_common(self, X):
        self.model_ = self.model if self.model is not None else circle_model()
        check_positive(self.t, "t")
        X = check_coefficients(X, self.model_.n_modes)
        self.n_features_in_ = X.shape[1]
        self.eigenvalues_ = np.asarray(self.model_.eigenvalues[: X.shape[1]], dtype=float)
        return X

    def _check_transform_input(self, X):
        check_is_fitted(self, "eigenvalues_")
        X = check_coefficients(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} columns, estimator was fitted with {self.n_features_in_}")
        return X

    def _settings(self):
        return QuadratureSettings(rel_tol=self.rel_tol)


class HeatSemigroup(_SpectralEstimator):
    """Forward heat operator ``exp(t Laplacian/2)`` on coefficient rows.

    ``inverse_transform`` is the reconstruction ``a_n -> a_n exp(t lam_n/2)``
    used by the surjectivity theorem.

    Examples
    --------
    >>> from sbq.models import circle_model
    >>> import numpy as np
    >>> est = HeatSemigroup(model=circle_model(8), t=0.1).fit(np.eye(3))
    >>> np.allclose(est.inverse_transform(est.transform(np.eye(3))), np.eye(3))
    True
    """

    def __init__(self, model=None, t=0.1):
        self.model = model
        self.t = t

    def fit(self, X, y=None):
        self._fit_common(X)
        self.multipliers_ = np.exp(-0.5 * self.t * self.eigenvalues_)
        return self

    def transform(self, X):
        return self._check_transform_input(X) * self.multipliers_

    def inverse_transform(self, X):
        return self._check_transform_input(X) * np.exp(0.5 * self.t * self.eigenvalues_)


class PartialInversion(_SpectralEstimator):
    """``A_{t,R} = alpha_{t,R}(-Laplacian)``; tends to the identity as ``R`` grows."""

    def __init__(self, model=None, t=0.1, R=1.0, rel_tol=1e-10):
        self.model = model
        self.t = t
        self.R = R
        self.rel_tol = rel_tol

    def fit(self, X, y=None):
        self._fit_common(X)
        check_positive(self.R, "R")
        m = self.model_
        self.multipliers_ = multiplier_vector(self.eigenvalues_, alpha, self.t, self.R,
                                              m.rho_sq, m.dim, self._settings())
        return self

    def transform(self, X):
        return self._check_transform_input(X) * self.multipliers_


class PartialIsometry(_SpectralEstimator):
    """``exp(t Laplacian/2) beta_{t,R}(-Laplacian)``.

    ``score_samples`` returns ``G_F(R)`` for each coefficient row.
    """

    def __init__(self, model=None, t=0.1, R=1.0, rel_tol=1e-10):
        self.model = model
        self.t = t
        self.R = R
        self.rel_tol = rel_tol

    def fit(self, X, y=None):
        self._fit_common(X)
        check_positive(self.R, "R")
        m = self.model_
        self.multipliers_ = multiplier_vector(self.eigenvalues_, damped_beta, self.t,
                                              self.R, m.rho_sq, m.dim, self._settings())
        return self

    def transform(self, X):
        return self._check_transform_input(X) * self.multipliers_

    def score_samples(self, X):
        X = self._check_transform_input(X)
        return (np.abs(X) ** 2) @ self.multipliers_
