"""Thin scikit-learn adapter over the invariant engine.

The engine itself is a set of pure functions on :class:`~unicyclic.graph.Graph`;
this transformer only lets a list of graphs flow through a ``Pipeline`` as an
``(n_graphs, n_indices)`` feature matrix.  Values are exact Python ints in an
``object`` array so nothing is rounded on the way.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .enumeration import parallel_map
from .graph import Graph, GraphError, read_edgelist
from .invariants import hosoya, merrifield_simmons, subtree_total, wiener

__all__ = ["GraphInvariantTransformer", "check_graph", "check_graphs", "INDEX_FUNCTIONS"]

INDEX_FUNCTIONS = {
    "subtrees": subtree_total,
    "wiener": wiener,
    "sigma": merrifield_simmons,
    "hosoya": hosoya,
}


def check_graph(obj) -> Graph:
    """Accept a Graph or edge-list text; anything else is a GraphError."""
    if isinstance(obj, Graph):
        return obj
    if isinstance(obj, str):
        return read_edgelist(obj)
    raise GraphError(f"expected a Graph or edge-list string, got {type(obj).__name__}")


def check_graphs(X) -> list[Graph]:
    if isinstance(X, (Graph, str)):
        raise GraphError("expected a sequence of graphs, got a single graph")
    graphs = [check_graph(x) for x in X]
    if not graphs:
        raise GraphError("expected at least one graph")
    return graphs


class _Row:
    # picklable callable for the process pool
    def __init__(self, names):
        self.names = names

    def __call__(self, g):
        return tuple(INDEX_FUNCTIONS[name](g) for name in self.names)


class GraphInvariantTransformer(TransformerMixin, BaseEstimator):
    """Map graphs to exact index vectors.

    Parameters
    ----------
    indices : tuple of str
        Any of ``subtrees``, ``wiener``, ``sigma``, ``hosoya``.
    workers : int
        Process count for the evaluation; output does not depend on it.
    """

    def __init__(self, indices=("subtrees", "wiener", "sigma", "hosoya"), workers=1):
        self.indices = indices
        self.workers = workers

    def _names(self):
        names = tuple(self.indices)
        bad = [x for x in names if x not in INDEX_FUNCTIONS]
        if bad or not names:
            raise ValueError(f"unknown or empty indices {bad}; choose from {sorted(INDEX_FUNCTIONS)}")
        return names

    def fit(self, X, y=None):
        check_graphs(X)
        self.feature_names_ = np.asarray(self._names(), dtype=object)
        self.n_features_out_ = len(self.feature_names_)
        return self

    def transform(self, X):
        check_is_fitted(self, "feature_names_")
        graphs = check_graphs(X)
        rows = parallel_map(_Row(tuple(self.feature_names_)), graphs, self.workers)
        out = np.empty((len(rows), self.n_features_out_), dtype=object)
        for i, row in enumerate(rows):
            out[i, :] = row
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "feature_names_")
        return self.feature_names_.copy()
