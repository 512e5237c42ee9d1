import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from apo.estimator import HarmonicExtractor
from apo.exceptions import DegreeExceeded, UnsupportedFamily


def coeff_rows(rng, rows, degree):
    return rng.uniform(-1, 1, size=(rows, 2 * degree + 1))


def test_params_round_trip():
    est = HarmonicExtractor(mu=3, degree=4, alpha=2)
    params = est.get_params()
    assert params == {"mu": 3, "degree": 4, "s": None, "alpha": 2, "family": "auto"}
    est.set_params(alpha=1)
    assert clone(est).get_params()["alpha"] == 1


def test_transform_keeps_only_target_harmonic(rng):
    est = HarmonicExtractor(mu=3, degree=4).fit()
    X = coeff_rows(rng, 10, 4)
    H = est.transform(X)
    assert H.shape == X.shape
    assert np.allclose(H[:, 0], X[:, 0] * est.omega_)
    assert np.allclose(H[:, 5:7], X[:, 5:7], atol=1e-12)
    others = np.delete(H, [0, 5, 6], axis=1)
    assert np.max(np.abs(others)) < 1e-12
    assert np.allclose(est.harmonic(X), X[:, 5:7], atol=1e-12)


@pytest.mark.parametrize("params", [
    {"mu": 1, "degree": 6, "alpha": 3},
    {"mu": 2, "s": 4, "alpha": 2},
    {"mu": 5, "degree": 5},
    {"mu": 4, "degree": 6, "family": "General"},
])
def test_families(params, rng):
    est = HarmonicExtractor(**params).fit()
    d = est.valid_degree_
    X = coeff_rows(rng, 5, d)
    mu = params["mu"]
    assert np.allclose(est.harmonic(X), X[:, 2 * mu - 1:2 * mu + 1], atol=1e-11)


def test_fit_checks_width(rng):
    est = HarmonicExtractor(mu=2, s=2)
    est.fit(coeff_rows(rng, 3, 3))
    assert est.n_features_in_ == 7
    with pytest.raises(ValueError):
        est.fit(rng.normal(size=(3, 6)))
    with pytest.raises(DegreeExceeded):
        est.transform(coeff_rows(rng, 3, 4))


def test_narrower_rows_allowed(rng):
    est = HarmonicExtractor(mu=3, degree=4).fit()
    assert np.allclose(est.harmonic(coeff_rows(rng, 2, 2)), 0.0)


def test_not_fitted():
    with pytest.raises(NotFittedError):
        HarmonicExtractor(mu=2, s=2).transform(np.zeros((1, 5)))


def test_bad_family():
    with pytest.raises(ValueError):
        HarmonicExtractor(mu=1, degree=3, family="MuTwo").fit()
    with pytest.raises(UnsupportedFamily):
        HarmonicExtractor(mu=4, degree=2).fit()


def test_pipeline(rng):
    pipe = make_pipeline(FunctionTransformer(lambda X: 2 * X), HarmonicExtractor(mu=2, s=3))
    X = coeff_rows(rng, 4, 5)
    out = pipe.fit_transform(X)
    assert np.allclose(out[:, 3:5], 2 * X[:, 3:5], atol=1e-11)
