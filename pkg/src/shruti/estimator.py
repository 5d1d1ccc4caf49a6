"""scikit-learn compatible quantizer that snaps sung ratios onto a shruti scale."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from shruti.analysis import SUNG_RANGE
from shruti.core import DistributionKind, InputError, ratio_to_cents, scale


def check_ratios(X, *, octave_reduce: bool = True) -> np.ndarray:
    """Validate an array of frequency ratios and return it as 2-D float.

    A 1-D input is read as a single column.  With ``octave_reduce`` every
    value must lie in the sung range and is folded into [1, 2); otherwise any
    positive finite value is accepted.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    X = check_array(X, dtype=float)
    if octave_reduce:
        lo, hi = SUNG_RANGE
        if np.any(X <= lo) or np.any(X >= hi):
            raise InputError(f"ratios must lie in ({lo}, {hi})")
        mantissa, _ = np.frexp(X)  # exact: X = mantissa * 2**e, mantissa in [0.5, 1)
        return 2.0 * mantissa
    if np.any(X <= 0):
        raise InputError("ratios must be positive")
    return X


class ShrutiQuantizer(TransformerMixin, BaseEstimator):
    """Nearest-degree quantizer over one of the 23-degree distributions.

    ``fit`` takes no information from the data beyond its width; the degree
    grid is fixed by ``kind``.  ``predict`` returns degree indices (1..23),
    ``transform`` the unsigned cents distance to that degree, and ``score``
    the negated mean distance so that higher is better.

    Parameters
    ----------
    kind : str, default="f"
        Distribution name: ``wc``, ``deval``, ``nagoji``, ``f`` or ``exp``.
    octave_reduce : bool, default=True
        Fold inputs into [1, 2) before matching.
    """

    def __init__(self, kind: str = "f", octave_reduce: bool = True):
        self.kind = kind
        self.octave_reduce = octave_reduce

    def fit(self, X, y=None):
        kind = DistributionKind.parse(self.kind)
        X = check_ratios(X, octave_reduce=self.octave_reduce)
        self.n_features_in_ = X.shape[1]
        self.kind_ = kind
        self.degrees_ = np.array([float(r) for r in scale(kind)])
        self.degree_cents_ = np.array([ratio_to_cents(r) for r in scale(kind)])
        return self

    def _distances(self, X):
        check_is_fitted(self, "degree_cents_")
        X = check_ratios(X, octave_reduce=self.octave_reduce)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but {type(self).__name__} "
                f"is expecting {self.n_features_in_} features as input"
            )
        cents = 1200.0 * np.log2(X)
        return np.abs(cents[..., None] - self.degree_cents_)

    def predict(self, X):
        # argmin picks the first minimum: ties go to the lower degree
        return np.argmin(self._distances(X), axis=-1) + 1

    def transform(self, X):
        return np.min(self._distances(X), axis=-1)

    def score(self, X, y=None):
        return -float(np.mean(self.transform(X)))
