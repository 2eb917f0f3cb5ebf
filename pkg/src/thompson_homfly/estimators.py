"""scikit-learn style wrappers around the Gram computations.

``HomflyKernel`` turns a list of oriented elements into the kernel matrix
``K[i, j] = phi(y_i^-1 x_j)`` against the elements seen in ``fit``.
``GramPositivityEstimator`` fits the Gram matrix of a family and records its
spectrum.  Both accept elements as ``GroupElement`` objects or text.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .forest import invert, multiply
from .gram import PSD_TOL, GramMatrix, PhiTable, element_gram, spectrum
from .validation import check_convention, check_family, check_params, check_tolerance


class HomflyKernel(BaseEstimator, TransformerMixin):
    """Positive definite kernel on the oriented subgroup given by phi.

    Parameters
    ----------
    r, k : int
        Evaluation point ``s = exp(i pi / r)``, ``a = s**(-2k)``.
    convention : {"standard", "mirror"}
        Crossing handedness of the caret pieces.
    """

    def __init__(self, r=5, k=1, convention="standard"):
        self.r = r
        self.k = k
        self.convention = convention

    def fit(self, X, y=None):
        self.params_ = check_params(self.r, self.k)
        check_convention(self.convention)
        self.elements_ = check_family(X, oriented=True)
        self.table_ = PhiTable(self.convention)
        self.n_features_in_ = len(self.elements_)
        return self

    def transform(self, X):
        check_is_fitted(self, "elements_")
        Y = check_family(X, oriented=True)
        K = np.zeros((len(Y), len(self.elements_)), dtype=complex)
        for i, y in enumerate(Y):
            yi = invert(y)
            for j, x in enumerate(self.elements_):
                K[i, j] = self.table_.value(multiply(yi, x), self.params_)
        return K


class GramPositivityEstimator(BaseEstimator):
    """Fit the Gram matrix ``[phi(g_i^-1 g_j)]`` of a family and test positivity.

    After ``fit``: ``gram_`` (complex array), ``eigenvalues_``,
    ``min_eigenvalue_``, ``is_psd_``, ``flags_`` and ``report_``.
    """

    def __init__(self, r=5, k=1, tol=PSD_TOL, convention="standard", max_size=12):
        self.r = r
        self.k = k
        self.tol = tol
        self.convention = convention
        self.max_size = max_size

    def fit(self, X, y=None):
        p = check_params(self.r, self.k)
        tol = check_tolerance(self.tol)
        check_convention(self.convention)
        fam = check_family(X, oriented=True, max_size=self.max_size)
        g: GramMatrix = element_gram(fam, p, self.convention, max_size=self.max_size)
        rep = spectrum(g, tol)
        self.gram_ = g.matrix
        self.eigenvalues_ = np.array(rep.eigenvalues)
        self.min_eigenvalue_ = rep.min_eig
        self.is_psd_ = rep.psd
        self.flags_ = list(rep.flags)
        self.report_ = rep
        self.n_features_in_ = len(fam)
        return self

    def score(self, X=None, y=None):
        """The minimum eigenvalue of the fitted Gram matrix."""
        check_is_fitted(self, "gram_")
        return self.min_eigenvalue_
