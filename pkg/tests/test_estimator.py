import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

import conelattice as cl
from conelattice import ConeProjection

OFFDIAG = np.array([[2.0, 1.0], [1.0, 2.0]])


def test_get_params_roundtrip():
    proj = ConeProjection(gram=OFFDIAG, method="closed_form", tol=1e-9)
    params = proj.get_params()
    assert params["method"] == "closed_form"
    assert params["tol"] == 1e-9
    rebuilt = ConeProjection(**params)
    assert rebuilt.get_params()["tol"] == 1e-9


def test_clone_preserves_parameters():
    proj = ConeProjection(gram=OFFDIAG, max_iter=123)
    other = clone(proj)
    assert other.max_iter == 123
    assert other is not proj


def test_set_params():
    proj = ConeProjection().set_params(method="closed_form")
    assert proj.method == "closed_form"


def test_default_fit_infers_dimension_from_data():
    X = np.array([[1.0, -2.0], [0.5, 0.5]])
    proj = ConeProjection().fit(X)
    assert proj.n_features_in_ == 2
    assert proj.lattice_metric_
    np.testing.assert_allclose(proj.transform(X), np.maximum(X, 0.0), atol=1e-10)


def test_fit_without_any_dimension_source_fails():
    with pytest.raises(ValueError):
        ConeProjection().fit()


def test_gram_only_fit():
    proj = ConeProjection(gram=OFFDIAG).fit()
    assert proj.n_features_in_ == 2
    assert not proj.lattice_metric_


def test_transform_matches_functional_api():
    rng = np.random.default_rng(0)
    proj = ConeProjection(gram=OFFDIAG).fit()
    X = rng.uniform(-5, 5, size=(20, 2))
    expected = cl.project_dykstra_rows(proj.space_, X).points
    np.testing.assert_array_equal(proj.transform(X), expected)


def test_closed_form_method_is_positive_part():
    rng = np.random.default_rng(1)
    proj = ConeProjection(gram=OFFDIAG, method="closed_form").fit()
    X = rng.uniform(-5, 5, size=(10, 2))
    np.testing.assert_array_equal(
        proj.transform(X), cl.pos_part_rows(proj.space_.order, X)
    )


def test_methods_agree_on_lattice_metric():
    rng = np.random.default_rng(2)
    X = rng.uniform(-5, 5, size=(30, 3))
    a = ConeProjection(method="dykstra").fit(X).transform(X)
    b = ConeProjection(method="closed_form").fit(X).transform(X)
    assert np.abs(a - b).max() <= 1e-9


def test_order_basis_parameter():
    basis = np.array([[1.0, 0.0], [1.0, 1.0]])
    proj = ConeProjection(order_basis=basis, method="closed_form").fit()
    out = proj.transform([[-1.0, 3.0]])
    np.testing.assert_allclose(out[0], [0.0, 2.0], atol=1e-12)


def test_unfitted_transform_raises():
    with pytest.raises(NotFittedError):
        ConeProjection().transform([[1.0, 2.0]])


def test_bad_method_rejected_at_fit():
    with pytest.raises(ValueError):
        ConeProjection(method="newton").fit(np.zeros((1, 2)))


def test_feature_width_mismatch():
    proj = ConeProjection(gram=OFFDIAG).fit()
    with pytest.raises(ValueError):
        proj.transform([[1.0, 2.0, 3.0]])
    with pytest.raises(ValueError):
        ConeProjection(gram=OFFDIAG).fit(np.zeros((2, 3)))


def test_invalid_gram_rejected_at_fit():
    with pytest.raises(cl.SpaceValidationError):
        ConeProjection(gram=[[1.0, 2.0], [2.0, 1.0]]).fit()


def test_pipeline_composition():
    X = np.array([[1.0, -2.0], [-0.5, 0.5], [3.0, 4.0]])
    pipe = Pipeline([("project", ConeProjection())])
    out = pipe.fit_transform(X)
    np.testing.assert_allclose(out, np.maximum(X, 0.0), atol=1e-10)


def test_project_single_vector():
    proj = ConeProjection(gram=OFFDIAG).fit()
    result = proj.project([1.0, -1.0])
    np.testing.assert_allclose(result.point, [0.5, 0.0], atol=1e-8)
    assert result.method == "dykstra"
