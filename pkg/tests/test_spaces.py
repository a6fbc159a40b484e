import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import conelattice as cl
from conelattice.errors import (
    ConditioningError,
    DimensionMismatchError,
    SpaceValidationError,
)
from helpers import random_spd


class TestValidation:
    def test_identity_accepts(self):
        assert cl.validate_gram(np.eye(2)).ok

    def test_offdiag_spd_accepts(self):
        gram = np.array([[2.0, 1.0], [1.0, 2.0]])
        assert cl.validate_gram(gram).ok
        # pivots of the symmetric triangular factorization are 2 and 3/2
        chol = np.linalg.cholesky(gram)
        np.testing.assert_allclose(np.diagonal(chol) ** 2, [2.0, 1.5], rtol=1e-14)

    def test_indefinite_rejected_with_witness(self):
        gram = np.array([[1.0, 2.0], [2.0, 1.0]])
        result = cl.validate_gram(gram)
        assert not result.ok
        assert result.failed_property == "positive_definite"
        witness = result.witness
        assert witness is not None
        assert float(witness @ gram @ witness) <= 0.0
        # the canonical hand witness: <v, v> = -2 for v = (1, -1)
        v = np.array([1.0, -1.0])
        assert float(v @ gram @ v) == -2.0
        with pytest.raises(SpaceValidationError):
            cl.inner_space(gram)

    def test_nonsquare_is_structural_error(self):
        with pytest.raises(DimensionMismatchError):
            cl.validate_gram([[1.0, 0.0]])

    def test_declared_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            cl.validate_gram(np.eye(3), dim=2)

    def test_asymmetry_beyond_threshold_rejected(self):
        gram = np.array([[1.0, 1e-9], [0.0, 1.0]])
        result = cl.validate_gram(gram)
        assert not result.ok
        assert result.failed_property == "symmetry"

    def test_tiny_asymmetry_is_symmetrized(self):
        gram = np.array([[1.0, 1e-13], [0.0, 1.0]])
        space = cl.inner_space(gram)
        assert np.array_equal(space.gram, space.gram.T)

    def test_ill_conditioned_rejected(self):
        assert cl.validate_gram(np.diag([1.0, 1e9])).failed_property == "conditioning"
        with pytest.raises(ConditioningError):
            cl.inner_space(np.diag([1.0, 1e9]))

    def test_condition_limit_can_be_lifted(self):
        space = cl.inner_space(np.diag([1.0, 1e9]), condition_limit=None)
        assert space.dim == 2

    def test_nonfinite_entries_rejected(self):
        with pytest.raises(SpaceValidationError):
            cl.validate_gram([[np.nan, 0.0], [0.0, 1.0]])

    def test_validate_space_roundtrip(self):
        space = cl.inner_space([[2.0, 1.0], [1.0, 2.0]])
        assert cl.validate_space(space).ok


class TestInner:
    def test_euclidean_dot(self):
        space = cl.euclidean_space(2)
        assert cl.inner(space, [1.0, 2.0], [3.0, -1.0]) == pytest.approx(1.0)

    def test_weighted_sum(self):
        space = cl.inner_space(np.diag([1.0, 2.0]))
        assert cl.inner(space, [1.0, 1.0], [1.0, 1.0]) == pytest.approx(3.0)

    def test_reads_off_diagonal(self):
        space = cl.inner_space([[2.0, 1.0], [1.0, 2.0]])
        assert cl.inner(space, [1.0, 0.0], [0.0, 1.0]) == pytest.approx(1.0)

    def test_dimension_mismatch(self):
        space = cl.euclidean_space(2)
        with pytest.raises(DimensionMismatchError):
            cl.inner(space, [1.0, 2.0, 3.0], [1.0, 2.0])


class TestNorm:
    def test_three_four_five(self):
        assert cl.norm(cl.euclidean_space(2), [3.0, 4.0]) == pytest.approx(5.0)

    def test_zero_vector(self):
        space = cl.inner_space([[2.0, 1.0], [1.0, 2.0]])
        assert cl.norm(space, [0.0, 0.0]) == 0.0

    def test_quadratic_form_expansion(self):
        # 2 - 2*1 + 2 = 2 by expanding the quadratic form
        space = cl.inner_space([[2.0, 1.0], [1.0, 2.0]])
        assert cl.norm(space, [1.0, -1.0]) == pytest.approx(np.sqrt(2.0))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 6))
def test_inner_symmetry_is_bitwise(seed, dim):
    rng = np.random.default_rng(seed)
    space = cl.inner_space(random_spd(rng, dim))
    x = rng.uniform(-10, 10, dim)
    y = rng.uniform(-10, 10, dim)
    assert cl.inner(space, x, y) == cl.inner(space, y, x)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 6))
def test_cauchy_schwarz(seed, dim):
    rng = np.random.default_rng(seed)
    space = cl.inner_space(random_spd(rng, dim))
    x = rng.uniform(-10, 10, dim)
    y = rng.uniform(-10, 10, dim)
    bound = cl.norm(space, x) * cl.norm(space, y)
    assert abs(cl.inner(space, x, y)) <= bound + 1e-10 * max(1.0, bound)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 6))
def test_parallelogram_law(seed, dim):
    rng = np.random.default_rng(seed)
    space = cl.inner_space(random_spd(rng, dim))
    x = rng.uniform(-10, 10, dim)
    y = rng.uniform(-10, 10, dim)
    lhs = cl.norm(space, x + y) ** 2 + cl.norm(space, x - y) ** 2
    rhs = 2.0 * cl.norm(space, x) ** 2 + 2.0 * cl.norm(space, y) ** 2
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, rhs)


def test_positive_definiteness_sampled():
    rng = np.random.default_rng(20240811)
    space = cl.inner_space(random_spd(rng, 5))
    samples = rng.uniform(-10, 10, size=(10_000, 5))
    samples = samples[np.any(samples != 0.0, axis=1)]
    values = cl.inner_rows(space, samples, samples)
    assert np.all(values > 0.0)


def test_norm_rows_matches_scalar_norm():
    rng = np.random.default_rng(3)
    space = cl.inner_space(random_spd(rng, 4))
    rows = rng.uniform(-5, 5, size=(50, 4))
    batch = cl.norm_rows(space, rows)
    for k in range(50):
        assert batch[k] == pytest.approx(cl.norm(space, rows[k]), rel=1e-13)
