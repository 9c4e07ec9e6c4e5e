"""Simple undirected graphs on ``0..n-1`` with the structural queries and
surgery used throughout the package.

Graphs are immutable.  Every surgery (deletion, merging, union) returns a new
:class:`Graph`; derived data such as adjacency lists are computed lazily from
the frozen edge set and therefore can never go stale.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "GraphError",
    "ParseError",
    "IndexOutOfRange",
    "SelfLoop",
    "DuplicateEdge",
    "NoSuchEdge",
    "NotUnicyclic",
    "NotTreeOrUnicyclic",
    "TooLarge",
    "Graph",
    "CycleInfo",
    "build_graph",
    "is_connected",
    "is_tree",
    "is_unicyclic",
    "components",
    "cycle_info",
    "segment_sequence",
    "canonical_key",
    "brute_force_key",
    "relabel",
    "delete_vertices",
    "closed_neighborhood",
    "delete_edge",
    "merge_vertices",
    "disjoint_union",
    "read_edgelist",
    "write_edgelist",
    "MAX_BRUTE_FORCE_ORDER",
]

MAX_BRUTE_FORCE_ORDER = 12


class GraphError(ValueError):
    """Base class for invalid graph input or surgery."""


class ParseError(GraphError):
    pass


class IndexOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class NoSuchEdge(GraphError):
    pass


class NotUnicyclic(GraphError):
    pass


class NotTreeOrUnicyclic(GraphError):
    pass


class TooLarge(GraphError):
    pass


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple graph with vertices ``0..vertex_count-1``.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``.  Use
    :func:`build_graph` to construct one from user input; it validates
    indices, loops and duplicates.
    """

    vertex_count: int
    edges: frozenset = field(default_factory=frozenset)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def __repr__(self) -> str:
        return f"Graph({self.vertex_count}, {list(self.sorted_edges)})"


@dataclass(frozen=True)
class CycleInfo:
    girth: int
    cycle_vertices: tuple[int, ...]
    branch_vertices: frozenset


def build_graph(vertex_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    if vertex_count < 0:
        raise IndexOutOfRange(f"negative vertex count {vertex_count}")
    seen: set[tuple[int, int]] = set()
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{vertex_count - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        e = _norm(u, v)
        if e in seen:
            raise DuplicateEdge(f"duplicate edge {e}")
        seen.add(e)
    return Graph(vertex_count, frozenset(seen))


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.vertex_count:
        raise IndexOutOfRange(f"vertex {v} not in graph of order {g.vertex_count}")


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.vertex_count
    out = []
    for s in range(g.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.vertex_count > 0 and len(components(g)) == 1


def is_tree(g: Graph) -> bool:
    return is_connected(g) and g.m == g.n - 1


def is_unicyclic(g: Graph) -> bool:
    return is_connected(g) and g.m == g.n


def _cycle_core(g: Graph) -> set[int]:
    """Vertices left after repeatedly stripping degree <= 1 vertices."""
    deg = g.degrees()
    alive = set(range(g.vertex_count))
    stack = [v for v in alive if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.adjacency[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return alive


def _canonical_cycle_order(g: Graph, core: set[int]) -> tuple[int, ...]:
    start = min(core)
    a, b = [w for w in g.adjacency[start] if w in core]
    order = [start]
    prev, cur = start, min(a, b)
    while cur != start:
        order.append(cur)
        nxt = [w for w in g.adjacency[cur] if w in core and w != prev]
        prev, cur = cur, nxt[0]
    return tuple(order)


def cycle_info(g: Graph) -> CycleInfo:
    if not is_unicyclic(g):
        raise NotUnicyclic("cycle_info requires a unicyclic graph")
    order = _canonical_cycle_order(g, _cycle_core(g))
    branch = frozenset(v for v in order if g.degree(v) >= 3)
    return CycleInfo(len(order), order, branch)


def segment_sequence(g: Graph) -> tuple[int, ...]:
    """Non-increasing segment lengths of a tree or unicyclic graph.

    A cycle carrying exactly one branch vertex contributes a single closed
    segment; the bare cycle ``C_n`` has no valid endpoints and is given the
    sequence ``(n,)``.
    """
    if not (is_tree(g) or is_unicyclic(g)):
        raise NotTreeOrUnicyclic("segment_sequence needs a tree or a unicyclic graph")
    terminals = [v for v in range(g.n) if g.degree(v) != 2]
    if not terminals:
        return (g.n,)
    seen_edges: set[tuple[int, int]] = set()
    lengths = []
    for t in terminals:
        for first in g.adjacency[t]:
            if _norm(t, first) in seen_edges:
                continue
            prev, cur, length = t, first, 1
            seen_edges.add(_norm(t, first))
            while g.degree(cur) == 2:
                nxt = g.adjacency[cur][0] if g.adjacency[cur][0] != prev else g.adjacency[cur][1]
                seen_edges.add(_norm(cur, nxt))
                prev, cur = cur, nxt
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


# -- canonical labeling -------------------------------------------------------


def _rooted_code(adj, root: int, parent: int, allowed) -> str:
    # iterative post-order keeps deep paths off the recursion limit
    stack = [(root, parent, False)]
    codes: dict[int, str] = {}
    children: dict[int, list[int]] = {}
    while stack:
        v, p, done = stack.pop()
        if done:
            codes[v] = "(" + "".join(sorted(codes[c] for c in children[v])) + ")"
            continue
        kids = [w for w in adj[v] if w != p and w in allowed]
        children[v] = kids
        stack.append((v, p, True))
        stack.extend((c, v, False) for c in kids)
    return codes[root]


def _tree_centers(adj, verts: list[int]) -> list[int]:
    if len(verts) <= 2:
        return list(verts)
    vs = set(verts)
    deg = {v: sum(1 for w in adj[v] if w in vs) for v in verts}
    layer = [v for v in verts if deg[v] <= 1]
    remaining = len(verts)
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                if w in vs and deg[w] > 0:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
            deg[v] = 0
        layer = nxt
    return layer


def _tree_code(g: Graph, verts: list[int]) -> str:
    allowed = set(verts)
    return min(_rooted_code(g.adjacency, c, -1, allowed) for c in _tree_centers(g.adjacency, verts))


def _unicyclic_code(g: Graph, verts: list[int]) -> str:
    sub_core = _cycle_core(g) & set(verts)
    order = _canonical_cycle_order(g, sub_core)
    allowed = set(verts) - sub_core
    codes = []
    for c in order:
        allowed.add(c)
        codes.append(_rooted_code(g.adjacency, c, -1, allowed))
        allowed.discard(c)
    k = len(codes)
    candidates = []
    for seq in (codes, codes[::-1]):
        for r in range(k):
            candidates.append(tuple(seq[r:] + seq[:r]))
    return "[" + ",".join(min(candidates)) + "]"


def _refine(adj, n: int) -> list[int]:
    """Colour refinement starting from degrees; returns a stable colouring."""
    colours = [len(adj[v]) for v in range(n)]
    while True:
        sigs = [(colours[v], tuple(sorted(colours[w] for w in adj[v]))) for v in range(n)]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(set(new)) == len(set(colours)):
            return new
        colours = new


def brute_force_key(g: Graph) -> bytes:
    """Canonical form by exhaustive search over refinement-respecting orderings.

    The key is the lexicographically largest upper-triangle adjacency string
    over every vertex ordering that lists colour classes in colour order.
    Exact for any simple graph; cost grows with the automorphism group, so it
    is limited to small orders.
    """
    n = g.vertex_count
    if n > MAX_BRUTE_FORCE_ORDER:
        raise TooLarge(f"brute-force canonical labeling supports n <= {MAX_BRUTE_FORCE_ORDER}")
    adj = g.adjacency
    colours = _refine(adj, n)
    adjset = [set(a) for a in adj]
    slots = sorted(range(n), key=lambda v: colours[v])
    slot_colour = [colours[v] for v in slots]
    best: list[int] | None = None
    placed: list[int] = []
    used = [False] * n
    bits: list[int] = []

    def extend(pos: int) -> None:
        nonlocal best
        if pos == n:
            if best is None or bits > best:
                best = list(bits)
            return
        want = slot_colour[pos]
        for v in range(n):
            if used[v] or colours[v] != want:
                continue
            row = [1 if placed[i] in adjset[v] else 0 for i in range(pos)]
            # bits are the column-major upper triangle, so a row appends a prefix-comparable block
            start = len(bits)
            bits.extend(row)
            if best is not None and bits < best[: len(bits)]:
                del bits[start:]
                continue
            used[v] = True
            placed.append(v)
            extend(pos + 1)
            placed.pop()
            used[v] = False
            del bits[start:]

    extend(0)
    header = f"G{n}:" + ",".join(map(str, slot_colour)) + ":"
    return header.encode() + bytes(best or [])


def canonical_key(g: Graph) -> bytes:
    """Isomorphism-class key: equal keys exactly for isomorphic graphs.

    Components that are trees or unicyclic get exact structural codes
    (centre-rooted nested parenthesis codes, and the minimal rotation or
    reflection of the rooted codes around the cycle).  Any component with two
    or more independent cycles sends the whole graph to :func:`brute_force_key`.
    """
    comps = components(g)
    parts = []
    for comp in comps:
        e = sum(len(g.adjacency[v]) for v in comp) // 2
        if e == len(comp) - 1:
            parts.append("T" + _tree_code(g, comp))
        elif e == len(comp):
            parts.append("U" + _unicyclic_code(g, comp))
        else:
            return b"B" + brute_force_key(g)
    parts.sort()
    return (f"S{g.vertex_count}:" + "|".join(parts)).encode()


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    return Graph(g.vertex_count, frozenset(_norm(perm[u], perm[v]) for u, v in g.edges))


# -- surgery ------------------------------------------------------------------


def delete_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the complement of ``s``.

    Returns the new graph and the order-preserving map old index -> new index.
    """
    drop = set(s)
    for v in drop:
        _check_vertex(g, v)
    keep = [v for v in range(g.vertex_count) if v not in drop]
    index = {v: i for i, v in enumerate(keep)}
    edges = frozenset(
        (index[u], index[v]) for u, v in g.edges if u in index and v in index
    )
    return Graph(len(keep), edges), index


def closed_neighborhood(g: Graph, v: int) -> frozenset:
    _check_vertex(g, v)
    return frozenset((v, *g.adjacency[v]))


def delete_edge(g: Graph, e: Sequence[int]) -> Graph:
    key = _norm(int(e[0]), int(e[1]))
    if key not in g.edges:
        raise NoSuchEdge(f"edge {key} not in graph")
    return Graph(g.vertex_count, g.edges - {key})


def disjoint_union(a: Graph, b: Graph) -> Graph:
    shift = a.vertex_count
    edges = set(a.edges)
    edges.update((u + shift, v + shift) for u, v in b.edges)
    return Graph(a.vertex_count + b.vertex_count, frozenset(edges))


def merge_vertices(a: Graph, u: int, b: Graph, v: int) -> Graph:
    """Disjoint union of ``a`` and ``b`` with ``u`` (in a) and ``v`` (in b) identified.

    Vertices of ``a`` keep their indices; ``v`` becomes ``u`` and the other
    vertices of ``b`` follow ``a`` in their original order.
    """
    _check_vertex(a, u)
    _check_vertex(b, v)
    mapping = {}
    nxt = a.vertex_count
    for w in range(b.vertex_count):
        if w == v:
            mapping[w] = u
        else:
            mapping[w] = nxt
            nxt += 1
    edges = set(a.edges)
    edges.update(_norm(mapping[x], mapping[y]) for x, y in b.edges)
    return Graph(nxt, frozenset(edges))


# -- edge-list text format ----------------------------------------------------


def read_edgelist(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise ParseError("empty edge list")
    try:
        n, m = (int(x) for x in rows[0])
        pairs = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise ParseError(f"malformed edge list: {exc}") from None
    if len(pairs) != m:
        raise ParseError(f"header announces {m} edges, found {len(pairs)}")
    return build_graph(n, pairs)


def write_edgelist(g: Graph) -> str:
    lines = [f"{g.vertex_count} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def _all_permutations_key(g: Graph) -> bytes:
    # reference for tests at tiny orders: minimum sorted edge list over all labelings
    best = None
    for perm in itertools.permutations(range(g.vertex_count)):
        cand = sorted(_norm(perm[u], perm[v]) for u, v in g.edges)
        if best is None or cand < best:
            best = cand
    return repr((g.vertex_count, best)).encode()
