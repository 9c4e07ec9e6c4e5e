from __future__ import annotations

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from unicyclic import GraphInvariantTransformer
from unicyclic.estimator import check_graph, check_graphs
from unicyclic.families import cycle, path, us_up
from unicyclic.graph import GraphError, write_edgelist


def test_transform_exact_values():
    X = [cycle(5), path(4), us_up("us", 6)]
    out = GraphInvariantTransformer().fit_transform(X)
    assert out.dtype == object and out.shape == (3, 4)
    assert out[0].tolist() == [26, 15, 11, 11]
    assert out[1].tolist() == [11, 10, 8, 5]


def test_edgelist_strings_and_feature_names():
    t = GraphInvariantTransformer(indices=("sigma",)).fit([write_edgelist(cycle(4))])
    assert t.transform([write_edgelist(cycle(4))]).tolist() == [[7]]
    assert t.get_feature_names_out().tolist() == ["sigma"]


def test_sklearn_protocol():
    t = GraphInvariantTransformer(indices=("wiener",), workers=2)
    assert clone(t).get_params() == {"indices": ("wiener",), "workers": 2}
    pipe = Pipeline([("inv", GraphInvariantTransformer(indices=("hosoya", "subtrees")))])
    out = pipe.fit_transform([path(3), cycle(3)])
    assert out.tolist() == [[3, 7], [4, 10]]
    with pytest.raises(NotFittedError):
        GraphInvariantTransformer().transform([path(2)])


def test_workers_do_not_change_output():
    X = [us_up("up", n) for n in range(3, 10)]
    a = GraphInvariantTransformer(workers=1).fit_transform(X)
    b = GraphInvariantTransformer(workers=3).fit_transform(X)
    assert np.array_equal(a, b)


def test_validation():
    with pytest.raises(GraphError):
        check_graph(42)
    with pytest.raises(GraphError):
        check_graphs(path(3))
    with pytest.raises(GraphError):
        check_graphs([])
    with pytest.raises(ValueError):
        GraphInvariantTransformer(indices=("pagerank",)).fit([path(2)])
