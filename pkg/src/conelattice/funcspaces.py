"""Weighted-quadrature and weighted point-evaluation model spaces.

Two desk-scale constructions with diagonal Gram matrices over the
coordinatewise order, so both are lattice instances by construction:

* a quadrature discretization of the integral inner product
  ``<f, g> = integral of f(r) g(r) over [-1, 1]`` for continuous functions,
  carrying the classical ramp family ``x_n(r) = clamp(n r, 0, 1)`` whose
  mutual distances shrink while the functions themselves do not settle
  pointwise (the discrete shadow of a non-convergent Cauchy sequence);

* a weighted point-evaluation form ``<f, g> = sum_n f(t_n) g(t_n) / 2^n``
  over nodes derived from the integer cosines.

The builders materialize dense matrices and are meant for modest node
counts; the distance helpers work on the grid directly and scale to many
thousands of nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre

from .order import OrderedSpace, ordered_space

RULE_SIMPSON = "composite_simpson"
RULE_GAUSS = "gauss_legendre"

# Quadrature weights must reproduce the interval length to this accuracy.
WEIGHT_SUM_TOL = 1e-9
DUPLICATE_NODE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Nodes and positive weights for integration over [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    rule: str


def _finish_grid(nodes, weights, rule) -> QuadratureGrid:
    nodes = np.asarray(nodes, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if np.any(np.diff(nodes) <= 0):
        raise ValueError("grid nodes must be strictly increasing")
    if nodes[0] < -1.0 or nodes[-1] > 1.0:
        raise ValueError("grid nodes must lie in [-1, 1]")
    if np.any(weights <= 0):
        raise ValueError("grid weights must be strictly positive")
    if abs(weights.sum() - 2.0) > WEIGHT_SUM_TOL:
        raise ValueError(
            f"grid weights sum to {weights.sum()!r}, expected 2 "
            f"within {WEIGHT_SUM_TOL:.0e}"
        )
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureGrid(nodes=nodes, weights=weights, rule=rule)


def simpson_grid(node_count: int) -> QuadratureGrid:
    """Composite Simpson rule on [-1, 1]; node_count must be odd and >= 3."""
    if node_count < 3 or node_count % 2 == 0:
        raise ValueError(
            f"composite Simpson needs an odd node count >= 3, got {node_count}"
        )
    panels = node_count - 1
    step = 2.0 / panels
    nodes = -1.0 + step * np.arange(node_count)
    weights = np.full(node_count, 2.0)
    weights[0] = weights[-1] = 1.0
    weights[1:-1:2] = 4.0
    weights *= step / 3.0
    return _finish_grid(nodes, weights, RULE_SIMPSON)


def gauss_grid(node_count: int) -> QuadratureGrid:
    """Gauss-Legendre rule on [-1, 1] with the given number of nodes."""
    if node_count < 1:
        raise ValueError(f"node count must be positive, got {node_count}")
    nodes, weights = roots_legendre(node_count)
    return _finish_grid(nodes, weights, RULE_GAUSS)


def grid_norm(grid: QuadratureGrid, values) -> float:
    """Weighted norm sqrt(sum w_i v_i^2); equals the norm of build_l2_space."""
    arr = np.asarray(values, dtype=float)
    if arr.shape != grid.nodes.shape:
        raise ValueError(
            f"values have shape {arr.shape}, expected {grid.nodes.shape}"
        )
    return float(np.sqrt(np.sum(grid.weights * arr * arr)))


def build_l2_space(grid: QuadratureGrid) -> OrderedSpace:
    """The ordered space with Gram = diag(weights) over the coordinate order."""
    return ordered_space(np.diag(grid.weights))


def cauchy_element(grid: QuadratureGrid, n: int) -> np.ndarray:
    """Node samples of the ramp x_n(r) = clamp(n r, 0, 1); lies in the cone."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return np.clip(n * grid.nodes, 0.0, 1.0)


def cauchy_distance(grid: QuadratureGrid, n: int, m: int) -> float:
    """Grid norm of x_m - x_n for 1 <= n < m."""
    if not 1 <= n < m:
        raise ValueError(f"need 1 <= n < m, got n={n}, m={m}")
    return grid_norm(grid, cauchy_element(grid, m) - cauchy_element(grid, n))


def cauchy_distance_exact(n: int, m: int) -> float:
    """Exact distance: D(n, m)^2 = (m-n)^2/(3 m^3) + (m-n)^3/(3 n m^3).

    Closed-form integral of the piecewise-linear difference squared; the ramp
    difference is (m-n) r on [0, 1/m], 1 - n r on [1/m, 1/n], 0 elsewhere.
    """
    if not 1 <= n < m:
        raise ValueError(f"need 1 <= n < m, got n={n}, m={m}")
    gap = float(m - n)
    squared = gap**2 / (3.0 * m**3) + gap**3 / (3.0 * n * m**3)
    return float(np.sqrt(squared))


def cauchy_sup_gap(grid: QuadratureGrid, n: int, m: int) -> float:
    """Largest node gap max_i |x_m - x_n|.

    Stays near 1 - n/m as the quadrature distances shrink, which is how the
    non-convergence of the ramp family shows up at finite resolution.
    """
    if not 1 <= n < m:
        raise ValueError(f"need 1 <= n < m, got n={n}, m={m}")
    return float(np.abs(cauchy_element(grid, m) - cauchy_element(grid, n)).max())


@dataclass(frozen=True, eq=False)
class EvalNodeSpace:
    """Truncated weighted point-evaluation structure.

    Nodes are t_k = (cos k + 1)/2 for k = 0..terms-1 (the affine remap keeps
    every node inside [0, 1]); weights are 2^-k, so <1, 1> = 2 - 2^(1-terms).
    """

    terms: int
    nodes: np.ndarray
    weights: np.ndarray


def eval_nodes(terms: int) -> EvalNodeSpace:
    """Build the node/weight arrays for the weighted point-evaluation form."""
    if terms < 1:
        raise ValueError(f"terms must be at least 1, got {terms}")
    k = np.arange(terms)
    nodes = (np.cos(k) + 1.0) / 2.0
    weights = 0.5**k
    deltas = np.abs(nodes[:, None] - nodes[None, :])
    np.fill_diagonal(deltas, np.inf)
    if deltas.min() <= DUPLICATE_NODE_TOL:
        raise ValueError("evaluation nodes collide within tolerance")
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return EvalNodeSpace(terms=terms, nodes=nodes, weights=weights)


def build_eval_space(terms: int) -> OrderedSpace:
    """The ordered space with Gram = diag(2^-k) over the coordinate order.

    The weight ratio grows as 2^(terms-1), far past the generic conditioning
    guard, but the matrix is diagonal so its factorization and the induced
    projections are computed exactly; the guard is therefore lifted here.
    """
    space = eval_nodes(terms)
    return ordered_space(np.diag(space.weights), condition_limit=None)
