"""scikit-learn style wrapper around the closed-form operators."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .exceptions import DegreeExceeded
from .solutions import FamilySpec, auto_family
from .trig import TrigPolynomial, apply_to_coeffs


def _coeff_width(degree: int) -> int:
    return 2 * degree + 1


class HarmonicExtractor(TransformerMixin, BaseEstimator):
    """Extract harmonic ``mu`` from rows of trigonometric coefficients.

    Each input row is ``[a0, a1, b1, ..., aN, bN]``.  ``transform`` returns
    the coefficients of ``H(T)`` in the same layout; for ``N`` up to the
    operator's ``valid_degree_`` only the constant term ``a0*omega_`` and
    harmonic ``mu`` survive.

    The operator does not depend on data, so ``fit`` only builds it; ``X``
    is checked for shape.

    Parameters
    ----------
    mu : int
        Harmonic to extract.
    degree : int, optional
        Largest degree the operator must handle.
    s : int, optional
        Family parameter for ``mu >= 2`` (alternative to ``degree``).
    alpha : int
        Branch of the family.
    family : str
        ``"auto"`` or a name from :data:`apo.solutions.FAMILIES`.
    """

    def __init__(self, mu=1, degree=None, s=None, alpha=1, family="auto"):
        self.mu = mu
        self.degree = degree
        self.s = s
        self.alpha = alpha
        self.family = family

    def _spec(self) -> FamilySpec:
        spec = auto_family(self.mu, self.degree, self.s)
        if self.family not in ("auto", spec.family):
            if self.family == "General" and self.mu >= 2:
                s = self.s or max(2, -(-((self.degree or 0) + 2) // self.mu))
                spec = FamilySpec("General", self.mu, s * self.mu - 1, s)
            else:
                raise ValueError(f"family {self.family!r} does not fit mu={self.mu}")
        return FamilySpec(spec.family, spec.mu, spec.n, spec.s, self.alpha)

    def fit(self, X=None, y=None):
        spec = self._spec()
        self.family_ = spec.family
        self.operator_ = spec.build()
        self.omega_ = self.operator_.omega
        self.valid_degree_ = self.operator_.valid_degree
        if X is not None:
            X = check_array(X)
            self._check_width(X)
            self.n_features_in_ = X.shape[1]
        return self

    def _check_width(self, X):
        if X.shape[1] % 2 != 1:
            raise ValueError("rows must have odd length 2N+1: [a0, a1, b1, ..., aN, bN]")
        degree = X.shape[1] // 2
        if degree > self.valid_degree_:
            raise DegreeExceeded(f"degree {degree} exceeds valid_degree {self.valid_degree_}")

    def transform(self, X):
        check_is_fitted(self, "operator_")
        X = check_array(X)
        self._check_width(X)
        out = np.empty_like(X, dtype=float)
        for i, row in enumerate(X):
            p = TrigPolynomial(tuple(zip(row[1::2], row[2::2])), row[0])
            h = apply_to_coeffs(self.operator_, p)
            out[i, 0] = h.a0
            out[i, 1::2] = h.a
            out[i, 2::2] = h.b
        return out

    def harmonic(self, X):
        """Harmonic ``mu`` coefficients ``(a_mu, b_mu)`` per row."""
        H = self.transform(X)
        mu = self.operator_.mu
        if 2 * mu > H.shape[1] - 1:
            return np.zeros((H.shape[0], 2))
        return H[:, 2 * mu - 1:2 * mu + 1]
