"""Finite-dimensional real inner-product spaces with an explicit Gram matrix.

A space is a symmetric positive-definite matrix ``G``; the inner product of
coordinate vectors is ``x^T G y``.  Every norm, angle and certificate in this
package is evaluated through one of these spaces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConditioningError, DimensionMismatchError, SpaceValidationError

# Largest permitted entry change when the input Gram matrix is symmetrized.
SYMMETRY_TOL = 1e-12
# Matrices whose condition estimate exceeds this are rejected outright.
CONDITION_LIMIT = 1e8


def as_matrix(m, name="matrix"):
    """Coerce to a square float matrix; reject empty, non-square or non-finite input."""
    arr = np.array(m, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise DimensionMismatchError(f"{name} must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise SpaceValidationError(f"{name} has non-finite entries")
    return arr


def as_vector(x, dim, name="vector"):
    """Coerce to a 1-D float vector of the given length with finite entries."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != dim:
        raise DimensionMismatchError(
            f"{name} must be a vector of length {dim}, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def condition_estimate(matrix) -> float:
    """2-norm condition estimate: exact ratio for diagonal matrices, SVD otherwise."""
    arr = np.asarray(matrix, dtype=float)
    if np.count_nonzero(arr - np.diag(np.diagonal(arr))) == 0:
        d = np.abs(np.diagonal(arr))
        if d.min() == 0.0:
            return float("inf")
        return float(d.max() / d.min())
    return float(np.linalg.cond(arr))


@dataclass(frozen=True, eq=False)
class ValidationResult:
    """Outcome of validating a Gram matrix.

    ``failed_property`` is one of ``"symmetry"``, ``"positive_definite"``,
    ``"conditioning"`` or None; ``witness`` is a vector with ``<v, v> <= 0``
    when the matrix is indefinite.
    """

    ok: bool
    failed_property: str | None = None
    detail: str = ""
    witness: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class InnerProductSpace:
    """A validated inner-product space.

    ``gram`` is the symmetrized matrix actually used; ``chol`` is its lower
    triangular Cholesky factor (``gram = chol @ chol.T``).  Arrays are marked
    read-only; treat instances as immutable values.
    """

    dim: int
    gram: np.ndarray
    chol: np.ndarray


def validate_gram(gram, dim=None, condition_limit=CONDITION_LIMIT) -> ValidationResult:
    """Check symmetry, positive definiteness and conditioning of a Gram matrix.

    Shape problems (non-square, or not matching ``dim``) raise
    :class:`DimensionMismatchError`; everything else is reported through the
    returned :class:`ValidationResult`.
    """
    arr = as_matrix(gram, "gram")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatchError(
            f"gram has shape {arr.shape} but the declared dimension is {dim}"
        )
    asym = 0.5 * float(np.abs(arr - arr.T).max())
    if asym > SYMMETRY_TOL:
        return ValidationResult(
            ok=False,
            failed_property="symmetry",
            detail=f"symmetrization would change an entry by {asym:.3e} "
            f"(limit {SYMMETRY_TOL:.0e})",
        )
    sym = 0.5 * (arr + arr.T)
    try:
        np.linalg.cholesky(sym)
    except np.linalg.LinAlgError:
        eigvals, eigvecs = np.linalg.eigh(sym)
        witness = eigvecs[:, 0]
        value = float(witness @ sym @ witness)
        return ValidationResult(
            ok=False,
            failed_property="positive_definite",
            detail=f"gram is not positive definite: <v, v> = {value:.6e} "
            "for the witness vector",
            witness=witness,
        )
    if condition_limit is not None:
        est = condition_estimate(sym)
        if est > condition_limit:
            return ValidationResult(
                ok=False,
                failed_property="conditioning",
                detail=f"gram condition estimate {est:.3e} exceeds {condition_limit:.0e}",
            )
    return ValidationResult(ok=True)


def inner_space(gram, condition_limit=CONDITION_LIMIT) -> InnerProductSpace:
    """Build a validated :class:`InnerProductSpace` from a Gram matrix.

    The input is symmetrized (``G <- (G + G^T)/2``); inputs whose entries
    would move by more than ``SYMMETRY_TOL`` are rejected.  Raises
    :class:`SpaceValidationError` for symmetry/definiteness failures and
    :class:`ConditioningError` when the condition estimate is too large.
    """
    result = validate_gram(gram, condition_limit=condition_limit)
    if not result.ok:
        if result.failed_property == "conditioning":
            raise ConditioningError(result.detail)
        raise SpaceValidationError(result.detail, result=result)
    arr = as_matrix(gram, "gram")
    sym = 0.5 * (arr + arr.T)
    chol = np.linalg.cholesky(sym)
    sym.setflags(write=False)
    chol.setflags(write=False)
    return InnerProductSpace(dim=sym.shape[0], gram=sym, chol=chol)


def euclidean_space(dim) -> InnerProductSpace:
    """The standard Euclidean space of the given dimension."""
    if dim < 1:
        raise DimensionMismatchError(f"dimension must be positive, got {dim}")
    return inner_space(np.eye(int(dim)))


def validate_space(space: InnerProductSpace) -> ValidationResult:
    """Re-validate a constructed space (checks its stored Gram matrix)."""
    return validate_gram(space.gram, dim=space.dim)


def inner(space: InnerProductSpace, x, y) -> float:
    """The inner product ``x^T G y``.

    Evaluated through the Cholesky factor as ``(L^T x) . (L^T y)``, which
    makes ``inner(x, y) == inner(y, x)`` bitwise and ``inner(x, x)`` a sum
    of squares, hence never negative.
    """
    xv = as_vector(x, space.dim, "x")
    yv = as_vector(y, space.dim, "y")
    return float((space.chol.T @ xv) @ (space.chol.T @ yv))


def norm(space: InnerProductSpace, x) -> float:
    """The induced norm ``sqrt(x^T G x)``; zero exactly for the zero vector."""
    xv = as_vector(x, space.dim, "x")
    return float(np.sqrt(np.sum((space.chol.T @ xv) ** 2)))


def norm_rows(space: InnerProductSpace, rows) -> np.ndarray:
    """G-norm of each row of a 2-D array (batch helper, no per-row checks)."""
    arr = np.asarray(rows, dtype=float)
    return np.sqrt(np.sum((arr @ space.chol) ** 2, axis=1))


def inner_rows(space: InnerProductSpace, rows_x, rows_y) -> np.ndarray:
    """Row-wise inner products of two stacks of vectors (batch helper)."""
    u = np.asarray(rows_x, dtype=float) @ space.chol
    v = np.asarray(rows_y, dtype=float) @ space.chol
    return np.sum(u * v, axis=1)
