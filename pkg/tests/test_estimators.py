import numpy as np
import pytest
from sklearn.base import clone

from granball import GBDPC, GBSC, GranularBallGenerator, clustering_accuracy, validate_partition


def test_generator_attributes_and_transform(iris):
    g = GranularBallGenerator(delta=0.5).fit(iris.features)
    assert validate_partition(g.balls_)
    assert g.centers_.shape == (g.n_balls_, 4)
    assert g.labels_.shape == (150,) and g.labels_.min() >= 0
    D = g.transform(iris.features[:5])
    assert D.shape == (5, g.n_balls_)
    assert np.array_equal(g.predict(g.centers_), np.arange(g.n_balls_))
    with pytest.raises(ValueError):
        g.transform(np.ones((2, 3)))


def test_params_and_clone():
    est = GBSC(n_clusters=4, sigma=0.3, eigensolver="lapack")
    params = est.get_params()
    assert params["n_clusters"] == 4 and params["sigma"] == 0.3
    twin = clone(est)
    assert twin.get_params() == params and twin is not est
    est.set_params(delta=0.9)
    assert est.delta == 0.9


def test_bad_method():
    with pytest.raises(ValueError):
        GranularBallGenerator(method="other").fit(np.ones((3, 1)))


def test_clusterers_on_iris(iris):
    dpc = GBDPC(n_clusters=3).fit(iris.features)
    assert clustering_accuracy(dpc.labels_, iris.labels) >= 0.9
    assert dpc.fit_predict(iris.features).tolist() == dpc.labels_.tolist()
    sc = GBSC(n_clusters=3, sigma=0.2).fit(iris.features)
    assert set(sc.labels_.tolist()) == {0, 1, 2}
    assert sc.ball_labels_.shape == (len(sc.balls_),)
