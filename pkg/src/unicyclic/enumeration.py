"""Isomorphism-free generation of trees and unicyclic graphs.

Trees of order ``n`` come from trees of order ``n - 1`` by hanging a leaf on
every vertex; unicyclic graphs from trees by adding one non-edge.  Both are
deduplicated by :func:`~unicyclic.graph.canonical_key` and emitted in
ascending key order, so output is reproducible and can be split by key.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .graph import (
    Graph,
    GraphError,
    TooLarge,
    build_graph,
    canonical_key,
    cycle_info,
    is_connected,
    segment_sequence,
)

__all__ = [
    "InfeasibleFilter",
    "ClassFilter",
    "MAX_TREE_ORDER",
    "MAX_UNICYCLIC_ORDER",
    "trees",
    "unicyclic",
    "unicyclic_with_keys",
    "class_count",
    "matches",
    "prufer_decode",
    "brute_force_trees",
    "brute_force_unicyclic",
    "random_tree",
    "random_unicyclic",
    "parallel_map",
    "shard_by_key",
]

MAX_TREE_ORDER = 12
MAX_UNICYCLIC_ORDER = 11


class InfeasibleFilter(GraphError):
    pass


@dataclass(frozen=True)
class ClassFilter:
    """Order plus optional girth and either a segment sequence or a segment count."""

    order: int
    girth: int | None = None
    segment_sequence: tuple[int, ...] | None = None
    segment_count: int | None = None

    def __post_init__(self):
        if self.segment_sequence is not None:
            seq = tuple(sorted((int(x) for x in self.segment_sequence), reverse=True))
            object.__setattr__(self, "segment_sequence", seq)
            if self.segment_count is not None:
                raise InfeasibleFilter("set a segment sequence or a segment count, not both")
            if not seq or min(seq) < 1:
                raise InfeasibleFilter("segment lengths must be positive")
            if sum(seq) != self.order:
                raise InfeasibleFilter(f"segment lengths sum to {sum(seq)}, order is {self.order}")
        if self.order < 3:
            raise InfeasibleFilter("unicyclic graphs need at least 3 vertices")
        if self.girth is not None and not 3 <= self.girth <= self.order:
            raise InfeasibleFilter(f"girth {self.girth} impossible at order {self.order}")
        if self.segment_count is not None and not 1 <= self.segment_count <= self.order:
            raise InfeasibleFilter(f"segment count {self.segment_count} impossible at order {self.order}")

    @classmethod
    def for_sequence(cls, lengths: Sequence[int], girth: int | None = None) -> "ClassFilter":
        return cls(order=sum(lengths), girth=girth, segment_sequence=tuple(lengths))


def prufer_decode(seq: Sequence[int], n: int) -> Graph:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    return build_graph(n, edges)


@lru_cache(maxsize=None)
def _trees_keyed(n: int) -> tuple[tuple[bytes, Graph], ...]:
    if n == 1:
        g = build_graph(1, [])
        return ((canonical_key(g), g),)
    found: dict[bytes, Graph] = {}
    for _, t in _trees_keyed(n - 1):
        for v in range(n - 1):
            g = Graph(n, t.edges | {(v, n - 1)})
            found.setdefault(canonical_key(g), g)
    return tuple(sorted(found.items()))


def trees(n: int) -> Iterator[Graph]:
    """One representative of every isomorphism class of ``n``-vertex trees."""
    if not 1 <= n <= MAX_TREE_ORDER:
        raise TooLarge(f"tree generation supports 1 <= n <= {MAX_TREE_ORDER}")
    for _, g in _trees_keyed(n):
        yield g


@lru_cache(maxsize=None)
def _unicyclic_keyed(n: int) -> tuple[tuple[bytes, Graph], ...]:
    found: dict[bytes, Graph] = {}
    for _, t in _trees_keyed(n):
        for u, v in itertools.combinations(range(n), 2):
            if (u, v) in t.edges:
                continue
            g = Graph(n, t.edges | {(u, v)})
            found.setdefault(canonical_key(g), g)
    return tuple(sorted(found.items()))


def matches(g: Graph, flt: ClassFilter) -> bool:
    if g.vertex_count != flt.order:
        return False
    if flt.girth is not None and cycle_info(g).girth != flt.girth:
        return False
    if flt.segment_sequence is not None and segment_sequence(g) != flt.segment_sequence:
        return False
    if flt.segment_count is not None and len(segment_sequence(g)) != flt.segment_count:
        return False
    return True


def unicyclic_with_keys(flt: ClassFilter) -> Iterator[tuple[bytes, Graph]]:
    if flt.order > MAX_UNICYCLIC_ORDER:
        raise TooLarge(f"unicyclic generation supports order <= {MAX_UNICYCLIC_ORDER}")
    for key, g in _unicyclic_keyed(flt.order):
        if matches(g, flt):
            yield key, g


def unicyclic(flt: ClassFilter | int) -> Iterator[Graph]:
    """Every unicyclic isomorphism class passing ``flt``, ascending by key."""
    if isinstance(flt, int):
        flt = ClassFilter(order=flt)
    for _, g in unicyclic_with_keys(flt):
        yield g


def class_count(flt: ClassFilter | int) -> int:
    if isinstance(flt, int):
        flt = ClassFilter(order=flt)
    return sum(1 for _ in unicyclic_with_keys(flt))


# -- independent generators used as cross-checks ------------------------------


def brute_force_trees(n: int) -> list[bytes]:
    """Sorted class keys of all labeled ``n``-vertex trees via Prufer codes."""
    if n <= 2:
        return [canonical_key(build_graph(n, [(0, 1)] if n == 2 else []))]
    keys = {canonical_key(prufer_decode(seq, n)) for seq in itertools.product(range(n), repeat=n - 2)}
    return sorted(keys)


def brute_force_unicyclic(n: int) -> list[bytes]:
    """Sorted class keys of all connected labeled graphs with ``n`` vertices and ``n`` edges."""
    pairs = list(itertools.combinations(range(n), 2))
    keys = set()
    for chosen in itertools.combinations(pairs, n):
        g = Graph(n, frozenset(chosen))
        if is_connected(g):
            keys.add(canonical_key(g))
    return sorted(keys)


def random_tree(n: int, rng: random.Random) -> Graph:
    if n == 1:
        return build_graph(1, [])
    if n == 2:
        return build_graph(2, [(0, 1)])
    return prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)


def random_unicyclic(n: int, rng: random.Random) -> Graph:
    if n < 3:
        raise InfeasibleFilter("unicyclic graphs need at least 3 vertices")
    t = random_tree(n, rng)
    missing = [p for p in itertools.combinations(range(n), 2) if p not in t.edges]
    return Graph(n, t.edges | {rng.choice(missing)})


# -- sharding -----------------------------------------------------------------


def shard_by_key(items: Sequence[tuple[bytes, Graph]], workers: int) -> list[list[tuple[bytes, Graph]]]:
    """Contiguous slices of the key-ordered stream, one per worker."""
    workers = max(1, workers)
    size = -(-len(items) // workers) if items else 0
    return [list(items[i : i + size]) for i in range(0, len(items), size or 1)]


def _apply(fn, chunk):
    return [fn(g) for g in chunk]


def parallel_map(fn: Callable[[Graph], object], graphs: Sequence[Graph], workers: int = 1) -> list:
    """``[fn(g) for g in graphs]``, optionally spread across processes.

    Results come back in input order whatever the worker count.
    """
    graphs = list(graphs)
    if workers <= 1 or len(graphs) < 2:
        return [fn(g) for g in graphs]
    size = -(-len(graphs) // workers)
    chunks = [graphs[i : i + size] for i in range(0, len(graphs), size)]
    out: list = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_apply, [fn] * len(chunks), chunks):
            out.extend(part)
    return out
