"""Exact subtree, Wiener, Merrifield-Simmons and Hosoya indices for trees and
unicyclic graphs, with exhaustive checkers for extremal results."""

from .enumeration import ClassFilter, class_count, trees, unicyclic, unicyclic_with_keys
from .families import (
    cycle,
    cycle_with_pendants,
    path,
    slide,
    star,
    starlike,
    u1n,
    u_cycle_seg,
    u_two_branch,
    us_up,
)
from .graph import (
    Graph,
    GraphError,
    build_graph,
    canonical_key,
    cycle_info,
    read_edgelist,
    segment_sequence,
    write_edgelist,
)
from .invariants import (
    closed_form,
    hosoya,
    merrifield_simmons,
    rooted_subtree_profile,
    subtree_profile,
    subtree_total,
    wiener,
)
from .verification import check_lemma, check_theorem, formula_audit, reproduce_counterexamples

__all__ = [
    "ClassFilter",
    "class_count",
    "trees",
    "unicyclic",
    "unicyclic_with_keys",
    "cycle",
    "cycle_with_pendants",
    "path",
    "slide",
    "star",
    "starlike",
    "u1n",
    "u_cycle_seg",
    "u_two_branch",
    "us_up",
    "Graph",
    "GraphError",
    "build_graph",
    "canonical_key",
    "cycle_info",
    "read_edgelist",
    "segment_sequence",
    "write_edgelist",
    "closed_form",
    "hosoya",
    "merrifield_simmons",
    "rooted_subtree_profile",
    "subtree_profile",
    "subtree_total",
    "wiener",
    "check_lemma",
    "check_theorem",
    "formula_audit",
    "reproduce_counterexamples",
    "GraphInvariantTransformer",
]

__version__ = "0.1.0"


def __getattr__(name):
    # sklearn is only imported when the adapter is asked for
    if name == "GraphInvariantTransformer":
        from .estimator import GraphInvariantTransformer

        return GraphInvariantTransformer
    raise AttributeError(name)
