"""Metric projection onto the positive cone.

Two routes are provided.  ``project_closed_form`` clips the B-coordinates at
zero (the positive part); it equals the metric projection exactly when the
Gram norm is a lattice norm for the cone order.  ``project_dykstra`` runs
Dykstra's cyclic projection onto the defining halfspaces in the G-metric and
computes the metric projection for any valid Gram matrix, making it the
independent oracle against which the closed form is checked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve

from .errors import InternalCheckError, NonConvergenceError
from .order import OrderedSpace, leq, pos_part
from .spaces import as_vector, inner, norm

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000
# Cone-membership slack allowed on any returned projection point.
CONE_MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    """A projection point plus how it was computed.

    ``iterations`` counts full Dykstra cycles (0 for the closed form);
    ``residual`` is the final G-norm change of the iterate over a cycle.
    """

    point: np.ndarray
    method: str
    iterations: int
    residual: float


@dataclass(frozen=True, eq=False)
class BatchProjection:
    """Row-wise Dykstra results: points, per-row cycle counts and residuals.

    ``converged`` marks rows that reached tolerance within the cycle budget.
    """

    points: np.ndarray
    iterations: np.ndarray
    residuals: np.ndarray
    converged: np.ndarray


@dataclass(frozen=True, eq=False)
class ProjectionCertificate:
    """Variational optimality evidence for a claimed best approximation.

    ``orthogonality_defect`` is ``<x - p, p>``; ``worst_generator_angle`` is
    the largest ``<x - p, g>`` over the cone generators g.  The verdict is
    true iff both are within tolerance, which characterizes p = P_K(x).
    """

    orthogonality_defect: float
    worst_generator_angle: float
    verdict: bool


def cone_generators(ospace: OrderedSpace) -> np.ndarray:
    """Matrix whose columns generate the cone (the columns of B^-1)."""
    return ospace.order.inverse


def polar_generators(ospace: OrderedSpace) -> list[np.ndarray]:
    """Generators of the G-polar cone: the vectors -G^-1 B^T e_i.

    Every returned vector y satisfies <y, g>_G <= 0 for each cone generator
    g, and together they positively span the polar cone.
    """
    rays = -cho_solve((np.asarray(ospace.space.chol), True), ospace.order.basis.T)
    return [rays[:, i].copy() for i in range(ospace.order.dim)]


def _check_in_cone(ospace: OrderedSpace, points: np.ndarray) -> None:
    worst = float((points @ ospace.order.basis.T).min(initial=0.0))
    if worst < -CONE_MEMBERSHIP_TOL:
        raise InternalCheckError(
            f"projection left the cone: worst coordinate {worst:.3e} "
            f"(limit {CONE_MEMBERSHIP_TOL:.0e})"
        )


def project_closed_form(ospace: OrderedSpace, x) -> ProjectionResult:
    """Project by taking the positive part.

    This always computes pos_part(x); it is the metric projection exactly
    when the instance is a lattice instance (see
    :func:`conelattice.harness.is_lattice_norm_exact`).
    """
    xv = as_vector(x, ospace.order.dim, "x")
    point = pos_part(ospace.order, xv)
    _check_in_cone(ospace, point[None, :])
    point.setflags(write=False)
    return ProjectionResult(point=point, method="closed_form", iterations=0, residual=0.0)


def project_dykstra_rows(
    ospace: OrderedSpace, rows, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER
) -> BatchProjection:
    """Dykstra's alternating projection applied to each row of a 2-D array.

    Each cycle projects onto the halfspaces {v : (B v)_i >= 0} in turn, in
    the G-metric: the projection of v onto halfspace i moves along the
    G-representer n_i = G^-1 B^T e_i of the constraint functional,

        v <- v - (min(0, (B v)_i) / <n_i, n_i>_G) n_i.

    A row stops (is frozen) at the first cycle whose G-norm change is <= tol,
    so batch results are identical to projecting each row on its own.  Rows
    of zeros are returned immediately with zero iterations.  Rows that fail
    to converge within ``max_iter`` cycles are reported through the
    ``converged`` mask rather than by raising.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    arr = np.array(rows, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != ospace.order.dim:
        raise ValueError(
            f"rows must be a 2-D array with {ospace.order.dim} columns, "
            f"got shape {arr.shape}"
        )
    dim = ospace.order.dim
    count = arr.shape[0]
    basis = ospace.order.basis
    chol = np.asarray(ospace.space.chol)
    # G-representers of the halfspace functionals and their squared G-norms.
    normals = cho_solve((chol, True), basis.T)
    denoms = np.einsum("ij,ij->j", basis.T, normals)

    points = arr.copy()
    duals = np.zeros((dim, count, dim))
    iterations = np.zeros(count, dtype=int)
    residuals = np.zeros(count, dtype=float)
    active = ~np.all(arr == 0.0, axis=1)

    cycles = 0
    while active.any() and cycles < max_iter:
        cycles += 1
        idx = np.where(active)[0]
        current = points[idx]
        start = current.copy()
        for i in range(dim):
            shifted = current + duals[i][idx]
            values = shifted @ basis[i]
            coef = np.where(values < 0.0, values / denoms[i], 0.0)
            current = shifted - coef[:, None] * normals[:, i][None, :]
            duals[i][idx] = shifted - current
        points[idx] = current
        increments = np.sqrt(np.sum(((current - start) @ chol) ** 2, axis=1))
        residuals[idx] = increments
        iterations[idx] = cycles
        active[idx[increments <= tol]] = False

    converged = ~active
    if converged.any():
        _check_in_cone(ospace, points[converged])
    return BatchProjection(
        points=points, iterations=iterations, residuals=residuals, converged=converged
    )


def project_dykstra(
    ospace: OrderedSpace, x, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER
) -> ProjectionResult:
    """Metric projection of a single vector via Dykstra's algorithm.

    Raises :class:`NonConvergenceError` (carrying the last iterate and its
    residual) if the cycle budget is exhausted.
    """
    xv = as_vector(x, ospace.order.dim, "x")
    batch = project_dykstra_rows(ospace, xv[None, :], tol=tol, max_iter=max_iter)
    point = batch.points[0]
    if not batch.converged[0]:
        raise NonConvergenceError(
            f"Dykstra projection did not reach tol={tol:.3e} in {max_iter} cycles",
            point=point,
            residual=float(batch.residuals[0]),
            iterations=int(batch.iterations[0]),
        )
    point.setflags(write=False)
    return ProjectionResult(
        point=point,
        method="dykstra",
        iterations=int(batch.iterations[0]),
        residual=float(batch.residuals[0]),
    )


def project(ospace: OrderedSpace, x, method="dykstra", tol=DEFAULT_TOL,
            max_iter=DEFAULT_MAX_ITER) -> ProjectionResult:
    """Dispatch to one of the two projection methods by name."""
    if method == "closed_form":
        return project_closed_form(ospace, x)
    if method == "dykstra":
        return project_dykstra(ospace, x, tol=tol, max_iter=max_iter)
    raise ValueError(f"unknown projection method {method!r}")


def certificate_check(ospace: OrderedSpace, x, p, tol) -> ProjectionCertificate:
    """Evaluate the variational optimality certificate for p ~ P_K(x).

    Checks ``<x - p, p> = 0`` and ``<x - p, g> <= 0`` for the cone generators
    g (the columns of B^-1); since every cone element is a nonnegative
    combination of generators, the generator check implies the full-cone
    condition.  ``p`` must lie in the cone within ``tol`` (as an order
    tolerance) or a ValueError is raised.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    xv = as_vector(x, ospace.order.dim, "x")
    pv = as_vector(p, ospace.order.dim, "p")
    if not leq(ospace.order, np.zeros(ospace.order.dim), pv, tol_order=tol):
        raise ValueError("p is not in the cone within tol; certificate undefined")
    residual = xv - pv
    defect = inner(ospace.space, residual, pv)
    gens = ospace.order.inverse
    worst = max(
        inner(ospace.space, residual, gens[:, i]) for i in range(ospace.order.dim)
    )
    verdict = abs(defect) <= tol and worst <= tol
    return ProjectionCertificate(
        orthogonality_defect=float(defect),
        worst_generator_angle=float(worst),
        verdict=bool(verdict),
    )


def moreau_decompose(ospace: OrderedSpace, x, tol=1e-8):
    """Split x into its cone part p and polar part q = x - p.

    ``p`` is the Dykstra projection; the decomposition is verified before it
    is returned: ``<p, q>_G`` must vanish and q must make a nonpositive
    G-angle with every cone generator, with slack scaled by the size of x.
    Violations indicate a projection failure and raise
    :class:`InternalCheckError`.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    xv = as_vector(x, ospace.order.dim, "x")
    result = project_dykstra(ospace, xv, tol=min(DEFAULT_TOL, tol))
    p = result.point
    q = xv - p
    size = norm(ospace.space, xv)
    ortho = abs(inner(ospace.space, p, q))
    if ortho > tol * (1.0 + size * size):
        raise InternalCheckError(
            f"Moreau parts are not orthogonal: <p, q> = {ortho:.3e} "
            f"for |x| = {size:.3e}"
        )
    gens = ospace.order.inverse
    worst = max(inner(ospace.space, q, gens[:, i]) for i in range(ospace.order.dim))
    if worst > tol * (1.0 + size):
        raise InternalCheckError(
            f"Moreau residual leaves the polar cone: worst generator angle "
            f"{worst:.3e} for |x| = {size:.3e}"
        )
    return p, q
