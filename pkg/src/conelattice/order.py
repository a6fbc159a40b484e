"""Simplicial-cone orders and the vector-lattice operations they induce.

The positive cone is ``K = {x : B x >= 0}`` for an invertible order basis
``B``.  In the coordinates ``c = B x`` the order is componentwise, so every
lattice operation is a clip or min/max on coordinates followed by the change
of basis back.  ``B = I`` gives the usual coordinatewise order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConditioningError,
    DimensionMismatchError,
    InternalCheckError,
    SpaceValidationError,
)
from .spaces import (
    CONDITION_LIMIT,
    InnerProductSpace,
    as_matrix,
    as_vector,
    condition_estimate,
    inner_space,
)

# Max-norm slack allowed on B @ B^-1 - I before the basis is rejected.
INVERSE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class OrderBasis:
    """An invertible matrix defining the cone ``{x : basis @ x >= 0}``.

    ``inverse`` is computed once at construction; its columns generate the
    cone.  Arrays are read-only.
    """

    dim: int
    basis: np.ndarray
    inverse: np.ndarray


def order_basis(basis, condition_limit=CONDITION_LIMIT) -> OrderBasis:
    """Validate and invert an order basis.

    Rejects singular matrices and (when ``condition_limit`` is not None)
    matrices with condition estimate above the limit; the inverse must
    reproduce the identity to within ``INVERSE_TOL`` in max-norm.
    """
    arr = as_matrix(basis, "order_basis")
    if condition_limit is not None:
        est = condition_estimate(arr)
        if est > condition_limit:
            raise ConditioningError(
                f"order basis condition estimate {est:.3e} exceeds {condition_limit:.0e}"
            )
    try:
        inv = np.linalg.inv(arr)
    except np.linalg.LinAlgError as exc:
        raise SpaceValidationError(f"order basis is singular ({exc})") from exc
    defect = float(np.abs(arr @ inv - np.eye(arr.shape[0])).max())
    if defect > INVERSE_TOL:
        raise SpaceValidationError(
            f"order basis inverse defect {defect:.3e} exceeds {INVERSE_TOL:.0e}"
        )
    arr.setflags(write=False)
    inv.setflags(write=False)
    return OrderBasis(dim=arr.shape[0], basis=arr, inverse=inv)


def identity_order(dim) -> OrderBasis:
    """The coordinatewise order on R^dim."""
    if dim < 1:
        raise DimensionMismatchError(f"dimension must be positive, got {dim}")
    return order_basis(np.eye(int(dim)))


@dataclass(frozen=True, eq=False)
class OrderedSpace:
    """An inner-product space together with a simplicial-cone order."""

    space: InnerProductSpace
    order: OrderBasis

    def __post_init__(self):
        if self.space.dim != self.order.dim:
            raise DimensionMismatchError(
                f"space dimension {self.space.dim} != order dimension {self.order.dim}"
            )


def ordered_space(gram, basis=None, condition_limit=CONDITION_LIMIT) -> OrderedSpace:
    """Build an :class:`OrderedSpace` from a Gram matrix and optional basis.

    ``basis=None`` means the coordinatewise order (identity basis).
    """
    space = inner_space(gram, condition_limit=condition_limit)
    if basis is None:
        order = identity_order(space.dim)
    else:
        order = order_basis(basis, condition_limit=condition_limit)
    return OrderedSpace(space=space, order=order)


def leq(order: OrderBasis, x, y, tol_order=0.0) -> bool:
    """x <= y in the cone order: every coordinate of B(y - x) >= -tol_order.

    The default tolerance is exactly zero; suites that need robustness pass
    an explicit ``tol_order``.
    """
    xv = as_vector(x, order.dim, "x")
    yv = as_vector(y, order.dim, "y")
    return bool(np.all(order.basis @ (yv - xv) >= -tol_order))


def pos_part(order: OrderBasis, x) -> np.ndarray:
    """The positive part: clip the B-coordinates at zero and map back."""
    xv = as_vector(x, order.dim, "x")
    return order.inverse @ np.maximum(order.basis @ xv, 0.0)


def pos_part_rows(order: OrderBasis, rows) -> np.ndarray:
    """Positive part of each row of a 2-D array (batch helper)."""
    arr = np.asarray(rows, dtype=float)
    return np.maximum(arr @ order.basis.T, 0.0) @ order.inverse.T


def neg_part(order: OrderBasis, x) -> np.ndarray:
    """The negative part, pos_part(-x); x = pos_part(x) - neg_part(x)."""
    xv = as_vector(x, order.dim, "x")
    return pos_part(order, -xv)


def absolute(order: OrderBasis, x) -> np.ndarray:
    """The absolute value |x| = pos_part(x) + neg_part(x)."""
    xv = as_vector(x, order.dim, "x")
    return pos_part(order, xv) + pos_part(order, -xv)


def sup(order: OrderBasis, x, y) -> np.ndarray:
    """The supremum x v y = x + pos_part(y - x)."""
    xv = as_vector(x, order.dim, "x")
    yv = as_vector(y, order.dim, "y")
    return xv + pos_part(order, yv - xv)


def inf(order: OrderBasis, x, y) -> np.ndarray:
    """The infimum x ^ y = -((-x) v (-y))."""
    xv = as_vector(x, order.dim, "x")
    yv = as_vector(y, order.dim, "y")
    return -sup(order, -xv, -yv)


def disjoint(order: OrderBasis, x, y, tol) -> bool:
    """Whether |x| ^ |y| = 0 within tol, cross-checked against |x+y| = |x-y|.

    Both characterizations are computed.  If one says disjoint and the other
    is off by more than ``10 * tol`` an :class:`InternalCheckError` is raised,
    since the two must agree in any correct lattice implementation.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    xv = as_vector(x, order.dim, "x")
    yv = as_vector(y, order.dim, "y")
    inf_defect = float(np.abs(inf(order, absolute(order, xv), absolute(order, yv))).max())
    identity_defect = float(
        np.abs(absolute(order, xv + yv) - absolute(order, xv - yv)).max()
    )
    by_inf = inf_defect <= tol
    by_identity = identity_defect <= tol
    if by_inf != by_identity and max(inf_defect, identity_defect) > 10.0 * tol:
        raise InternalCheckError(
            f"disjointness criteria disagree: inf defect {inf_defect:.3e}, "
            f"|x+y| vs |x-y| defect {identity_defect:.3e} (tol {tol:.3e})"
        )
    return by_inf
