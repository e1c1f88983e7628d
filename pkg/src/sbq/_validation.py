"""Input validation helpers for the estimator front end."""
import numbers

import numpy as np


def check_coefficients(X, n_modes=None, name="X"):
    """Return ``X`` as a finite 2-D complex array of coefficient rows.

    A 1-D input is treated as a single sample. scikit-learn's ``check_array``
    rejects complex input, hence this helper.
    """
    X = np.asarray(X)
    if X.dtype == object:
        raise TypeError(f"{name} must be numeric")
    X = X.astype(complex, copy=False)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise ValueError(f"{name} must be 1-D or 2-D, got {X.ndim}-D")
    if X.shape[1] == 0:
        raise ValueError(f"{name} has no coefficient columns")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains NaN or infinity")
    if n_modes is not None and X.shape[1] > n_modes:
        raise ValueError(
            f"{name} has {X.shape[1]} columns but the model only has {n_modes} modes")
    return X


def check_positive(value, name):
    if not isinstance(value, numbers.Real) or not value > 0:
        raise ValueError(f"{name} must be a positive real number, got {value!r}")
    return float(value)
