import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import conelattice as cl
from conelattice.errors import ConditioningError, SpaceValidationError
from helpers import random_well_conditioned


SHEAR = np.array([[1.0, 0.0], [1.0, 1.0]])


class TestOrderBasis:
    def test_inverse_is_stored(self):
        order = cl.order_basis(SHEAR)
        np.testing.assert_allclose(order.inverse, [[1.0, 0.0], [-1.0, 1.0]])
        assert np.abs(order.basis @ order.inverse - np.eye(2)).max() <= 1e-8

    def test_singular_rejected(self):
        with pytest.raises((SpaceValidationError, ConditioningError)):
            cl.order_basis([[1.0, 1.0], [1.0, 1.0]])

    def test_ill_conditioned_rejected(self):
        with pytest.raises(ConditioningError):
            cl.order_basis(np.diag([1.0, 1e-9]))

    def test_dimension_pairing(self):
        with pytest.raises(cl.DimensionMismatchError):
            cl.OrderedSpace(space=cl.euclidean_space(3), order=cl.identity_order(2))


class TestLeq:
    def test_componentwise(self):
        order = cl.identity_order(2)
        assert cl.leq(order, [0.0, 0.0], [1.0, 2.0])

    def test_incomparable_pair(self):
        order = cl.identity_order(2)
        assert not cl.leq(order, [0.0, 1.0], [1.0, 0.0])
        assert not cl.leq(order, [1.0, 0.0], [0.0, 1.0])

    def test_sheared_order(self):
        # B(y - x) = (-1, 2) fails the first coordinate
        order = cl.order_basis(SHEAR)
        assert not cl.leq(order, [0.0, 0.0], [-1.0, 3.0])

    def test_tolerance_parameter(self):
        order = cl.identity_order(2)
        assert not cl.leq(order, [0.0, 0.0], [-1e-12, 0.0])
        assert cl.leq(order, [0.0, 0.0], [-1e-12, 0.0], tol_order=1e-10)


class TestParts:
    def test_pos_part_clips(self):
        order = cl.identity_order(2)
        np.testing.assert_array_equal(cl.pos_part(order, [1.0, -2.0]), [1.0, 0.0])

    def test_pos_part_fixes_cone_points(self):
        order = cl.identity_order(2)
        np.testing.assert_array_equal(cl.pos_part(order, [3.0, 5.0]), [3.0, 5.0])

    def test_pos_part_sheared(self):
        order = cl.order_basis(SHEAR)
        np.testing.assert_allclose(cl.pos_part(order, [-1.0, 3.0]), [0.0, 2.0],
                                   atol=1e-14)

    def test_pos_part_is_least_upper_bound_on_grid(self):
        order = cl.order_basis(SHEAR)
        x = np.array([-1.0, 3.0])
        p = cl.pos_part(order, x)
        assert cl.leq(order, np.zeros(2), p, tol_order=1e-12)
        assert cl.leq(order, x, p, tol_order=1e-12)
        # every candidate on a coordinate grid that bounds both 0 and x
        # dominates p
        bx = order.basis @ x
        grid = np.linspace(0.0, 5.0, 41)
        for a in grid:
            for b in grid:
                coords = np.array([a, b])
                if np.all(coords >= bx - 1e-12):
                    candidate = order.inverse @ coords
                    assert cl.leq(order, p, candidate, tol_order=1e-9)

    def test_neg_part_clips(self):
        order = cl.identity_order(2)
        np.testing.assert_array_equal(cl.neg_part(order, [1.0, -2.0]), [0.0, 2.0])

    def test_neg_part_vanishes_on_cone(self):
        order = cl.order_basis(SHEAR)
        point = order.inverse @ np.array([2.0, 1.0])
        np.testing.assert_allclose(cl.neg_part(order, point), [0.0, 0.0], atol=1e-14)

    def test_neg_part_sheared_and_decomposition(self):
        order = cl.order_basis(SHEAR)
        x = np.array([-1.0, 3.0])
        neg = cl.neg_part(order, x)
        np.testing.assert_allclose(neg, [1.0, -1.0], atol=1e-14)
        np.testing.assert_allclose(cl.pos_part(order, x) - neg, x, atol=1e-14)


class TestLatticeOps:
    def test_absolute(self):
        order = cl.identity_order(2)
        np.testing.assert_array_equal(cl.absolute(order, [1.0, -2.0]), [1.0, 2.0])

    def test_sup_componentwise(self):
        order = cl.identity_order(2)
        np.testing.assert_array_equal(
            cl.sup(order, [1.0, 0.0], [0.0, 1.0]), [1.0, 1.0]
        )

    def test_sup_sheared_matches_pos_part(self):
        order = cl.order_basis(SHEAR)
        np.testing.assert_allclose(
            cl.sup(order, [-1.0, 3.0], [0.0, 0.0]),
            cl.pos_part(order, [-1.0, 3.0]),
            atol=1e-14,
        )

    def test_disjoint_supports(self):
        order = cl.identity_order(2)
        assert cl.disjoint(order, [1.0, 0.0], [0.0, -5.0], tol=1e-12)

    def test_overlapping_not_disjoint(self):
        order = cl.identity_order(2)
        assert not cl.disjoint(order, [1.0, 1.0], [1.0, 0.0], tol=1e-12)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 6))
def test_lattice_identities(seed, dim):
    rng = np.random.default_rng(seed)
    order = cl.order_basis(random_well_conditioned(rng, dim))
    x = rng.uniform(-10, 10, dim)
    y = rng.uniform(-10, 10, dim)
    z = rng.uniform(-10, 10, dim)
    pos, neg = cl.pos_part(order, x), cl.neg_part(order, x)
    # x = x+ - x-
    assert np.abs(pos - neg - x).max() <= 1e-10
    # x+ ^ x- = 0
    assert np.abs(cl.inf(order, pos, neg)).max() <= 1e-10
    # |x| = x v (-x)
    assert np.abs(cl.absolute(order, x) - cl.sup(order, x, -x)).max() <= 1e-10
    # sup + inf = x + y
    assert np.abs(
        cl.sup(order, x, y) + cl.inf(order, x, y) - (x + y)
    ).max() <= 1e-10
    # positive and negative parts are disjoint
    assert cl.disjoint(order, pos, neg, tol=1e-9)
    # translation invariance of the order
    assert cl.leq(order, x, y, tol_order=1e-10) == cl.leq(
        order, x + z, y + z, tol_order=1e-10
    )
    # idempotence
    assert np.abs(cl.pos_part(order, pos) - pos).max() <= 1e-10


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 6))
def test_coordinate_order_reduces_to_componentwise(seed, dim):
    rng = np.random.default_rng(seed)
    order = cl.identity_order(dim)
    x = rng.uniform(-10, 10, dim)
    y = rng.uniform(-10, 10, dim)
    np.testing.assert_array_equal(cl.pos_part(order, x), np.maximum(x, 0.0))
    np.testing.assert_array_equal(cl.absolute(order, x), np.abs(x))
    # sup/inf go through x + pos_part(y - x), which rounds once
    assert np.abs(cl.sup(order, x, y) - np.maximum(x, y)).max() <= 1e-10
    assert np.abs(cl.inf(order, x, y) - np.minimum(x, y)).max() <= 1e-10
    assert cl.leq(order, x, y) == bool(np.all(x <= y))


def test_pos_part_rows_matches_scalar():
    rng = np.random.default_rng(11)
    order = cl.order_basis(random_well_conditioned(rng, 4))
    rows = rng.uniform(-5, 5, size=(40, 4))
    batch = cl.pos_part_rows(order, rows)
    for k in range(40):
        np.testing.assert_allclose(batch[k], cl.pos_part(order, rows[k]), atol=1e-13)
