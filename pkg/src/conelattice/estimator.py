"""Scikit-learn compatible front end for the cone projection.

The transformer is stateless in the statistical sense: its parameters fully
determine the projection, and ``fit`` only validates them and resolves the
dimension, so it composes with pipelines, ``clone`` and grid search like any
other preprocessing step.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .errors import DimensionMismatchError, NonConvergenceError
from .harness import is_lattice_norm_exact
from .order import ordered_space, pos_part_rows
from .projection import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    ProjectionResult,
    project,
    project_dykstra_rows,
)

METHODS = ("dykstra", "closed_form")


class ConeProjection(BaseEstimator, TransformerMixin):
    """Project samples onto a simplicial cone under a Gram-matrix metric.

    Each row of ``X`` is replaced by its best approximation from the cone
    ``{x : B x >= 0}`` with respect to the inner product ``<u, v> = u^T G v``.

    Parameters
    ----------
    gram : array-like of shape (n_features, n_features), default=None
        Symmetric positive-definite Gram matrix G.  None means the Euclidean
        metric.
    order_basis : array-like of shape (n_features, n_features), default=None
        Invertible matrix B defining the cone.  None means the nonnegative
        orthant.
    method : {"dykstra", "closed_form"}, default="dykstra"
        "dykstra" computes the metric projection for any valid Gram matrix.
        "closed_form" clips the B-coordinates at zero (the positive part),
        which equals the metric projection exactly when ``lattice_metric_``
        is true.
    tol : float, default=1e-10
        Dykstra convergence tolerance (G-norm change over a full sweep).
    max_iter : int, default=100000
        Dykstra cycle budget.

    Attributes
    ----------
    space_ : OrderedSpace
        The validated metric and order used by ``transform``.
    n_features_in_ : int
        Number of features seen (or implied by the matrices) during ``fit``.
    lattice_metric_ : bool
        True when the Gram norm is a lattice norm for the cone order, i.e.
        exactly when the closed form and the metric projection coincide.

    Examples
    --------
    >>> import numpy as np
    >>> proj = ConeProjection().fit(np.zeros((1, 2)))
    >>> proj.transform([[1.0, -2.0]])
    array([[1., 0.]])
    """

    def __init__(self, gram=None, order_basis=None, method="dykstra",
                 tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
        self.gram = gram
        self.order_basis = order_basis
        self.method = method
        self.tol = tol
        self.max_iter = max_iter

    def _resolve_dim(self, X):
        if self.gram is not None:
            return np.asarray(self.gram).shape[0]
        if self.order_basis is not None:
            return np.asarray(self.order_basis).shape[0]
        if X is not None:
            return X.shape[1]
        raise ValueError(
            "cannot infer the dimension: pass gram, order_basis, or fit data"
        )

    def fit(self, X=None, y=None):
        """Validate the metric and order; no statistics are estimated."""
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if X is not None:
            X = check_array(X, dtype=np.float64)
        dim = self._resolve_dim(X)
        gram = np.eye(dim) if self.gram is None else self.gram
        self.space_ = ordered_space(gram, self.order_basis)
        if X is not None and X.shape[1] != self.space_.space.dim:
            raise DimensionMismatchError(
                f"X has {X.shape[1]} features but the matrices define "
                f"dimension {self.space_.space.dim}"
            )
        self.n_features_in_ = self.space_.space.dim
        self.lattice_metric_ = bool(is_lattice_norm_exact(self.space_))
        return self

    def transform(self, X):
        """Project every row of X onto the cone."""
        check_is_fitted(self, "space_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise DimensionMismatchError(
                f"X has {X.shape[1]} features, expected {self.n_features_in_}"
            )
        if self.method == "closed_form":
            return pos_part_rows(self.space_.order, X)
        batch = project_dykstra_rows(
            self.space_, X, tol=self.tol, max_iter=self.max_iter
        )
        if not batch.converged.all():
            bad = int(np.where(~batch.converged)[0][0])
            raise NonConvergenceError(
                f"row {bad} did not converge within {self.max_iter} cycles",
                point=batch.points[bad],
                residual=float(batch.residuals[bad]),
                iterations=int(batch.iterations[bad]),
            )
        return batch.points

    def project(self, x) -> ProjectionResult:
        """Project a single vector, returning the full method metadata."""
        check_is_fitted(self, "space_")
        return project(self.space_, x, method=self.method, tol=self.tol,
                       max_iter=self.max_iter)
