"""Exact invariants: subtree counts, Wiener, Merrifield-Simmons and Hosoya.

Counting polynomials are plain lists of Python ints indexed by the number of
vertices, so nothing overflows.  Every fast routine has a definition-level
oracle next to it (``*_oracle``) that enumerates subsets directly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import (
    Graph,
    GraphError,
    TooLarge,
    canonical_key,
    components,
    cycle_info,
    delete_edge,
    delete_vertices,
    is_connected,
    is_tree,
    is_unicyclic,
)

__all__ = [
    "Disconnected",
    "AnchorNotInGraph",
    "UnknownFamily",
    "OutOfRange",
    "SubtreeProfile",
    "InvariantBundle",
    "subtree_profile",
    "rooted_subtree_profile",
    "subtree_count_oracle",
    "subtree_total",
    "rooted_total",
    "wiener",
    "merrifield_simmons",
    "hosoya",
    "sigma_oracle",
    "hosoya_oracle",
    "fibonacci",
    "closed_form",
    "CLOSED_FORMS",
    "invariant_bundle",
]

ORACLE_EDGE_LIMIT = 22
ORACLE_VERTEX_LIMIT = 22


class Disconnected(GraphError):
    pass


class AnchorNotInGraph(GraphError):
    pass


class UnknownFamily(KeyError):
    pass


class OutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class SubtreeProfile:
    """``counts[k]`` is the number of ``k``-vertex subtrees, ``k = 0..n``."""

    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, k: int) -> int:
        return self.counts[k] if 0 <= k < len(self.counts) else 0

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class InvariantBundle:
    subtree_total: int
    wiener: int
    merrifield_simmons: int
    hosoya: int


# -- polynomial helpers -------------------------------------------------------


def _padd(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return out


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _one_plus(a: list[int]) -> list[int]:
    out = list(a) if a else [0]
    out[0] += 1
    return out


def _shift(a: list[int]) -> list[int]:
    return [0] + list(a)


def _rooted_polys(adj, root: int, allowed, anchors=frozenset()) -> tuple[dict[int, list[int]], dict[int, bool]]:
    """Post-order DP over the tree spanned by ``allowed`` around ``root``.

    ``poly[v]`` counts subtrees inside v's branch that contain v and every
    anchor of that branch; ``need[v]`` says whether the branch holds an anchor.
    """
    order = []
    parent = {root: -1}
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for w in adj[v]:
            if w in allowed and w != parent[v]:
                parent[w] = v
                stack.append(w)
    poly: dict[int, list[int]] = {}
    need: dict[int, bool] = {}
    for v in reversed(order):
        acc = [1]
        needed = v in anchors
        for w in adj[v]:
            if w in allowed and w != parent[v]:
                if need[w]:
                    acc = _pmul(acc, poly[w])
                    needed = True
                else:
                    acc = _pmul(acc, _one_plus(poly[w]))
        poly[v] = _shift(acc)
        need[v] = needed
    return poly, need


def _tree_profile(adj, verts: set[int]) -> list[int]:
    root = min(verts)
    poly, _ = _rooted_polys(adj, root, verts)
    total = [1]
    for p in poly.values():
        total = _padd(total, p)
    return total


def _finish(poly: list[int], n: int) -> SubtreeProfile:
    out = list(poly[: n + 1]) + [0] * max(0, n + 1 - len(poly))
    return SubtreeProfile(tuple(out))


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise Disconnected("subtree counts are defined here for connected graphs only")


def _arc_decomposition(g: Graph):
    """Cycle order plus rooted data of the pendant tree hanging at each cycle vertex."""
    info = cycle_info(g)
    cyc = info.cycle_vertices
    on_cycle = set(cyc)
    # pendant tree at c: c itself plus everything reachable without touching the cycle
    owner = {}
    for c in cyc:
        owner[c] = c
        queue = deque([c])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if y not in on_cycle and y not in owner:
                    owner[y] = c
                    queue.append(y)
    return cyc, owner


def _arcs_through_edge(cyc: Sequence[int]):
    """Every cycle arc (as a vertex path) that uses the edge ``cyc[-1]-cyc[0]``."""
    g = len(cyc)
    for size in range(2, g + 1):
        for back in range(0, size - 1):
            # back vertices behind cyc[-1] plus cyc[-1], then forward from cyc[0]
            fwd = size - 1 - back
            path = [cyc[(g - 1 - back + i) % g] for i in range(back + 1)] + [cyc[i] for i in range(fwd)]
            yield path


def subtree_profile(g: Graph) -> SubtreeProfile:
    """Exact ``n_k(G)`` for a tree or unicyclic graph.

    Trees use the rooted size-polynomial DP.  For a unicyclic graph with cycle
    edge ``e``: subtrees avoiding ``e`` are those of the tree ``G - e``; a
    subtree through ``e`` meets the cycle in a contiguous arc through ``e``
    and is a product of rooted pendant-tree polynomials along that arc.
    Other connected graphs fall back to :func:`_enumerate_subtrees`.
    """
    _require_connected(g)
    n = g.vertex_count
    if is_tree(g):
        return _finish(_tree_profile(g.adjacency, set(range(n))), n)
    if not is_unicyclic(g):
        return _enumerate_subtrees(g, frozenset(), frozenset())
    cyc, owner = _arc_decomposition(g)
    e = (cyc[-1], cyc[0])
    tree = delete_edge(g, e)
    base = _tree_profile(tree.adjacency, set(range(n)))
    hang = _pendant_polys(g, cyc, owner, frozenset())
    through = [0]
    for path in _arcs_through_edge(cyc):
        acc = [1]
        for c in path:
            acc = _pmul(acc, hang[c])
        through = _padd(through, acc)
    return _finish(_padd(base, through), n)


def _pendant_polys(g: Graph, cyc, owner, anchors) -> dict[int, list[int]]:
    out = {}
    for c in cyc:
        allowed = {v for v, o in owner.items() if o == c}
        poly, _ = _rooted_polys(g.adjacency, c, allowed, anchors)
        out[c] = poly[c]
    return out


def _normalize_anchors(g: Graph, anchors: Iterable) -> tuple[frozenset, frozenset]:
    verts, edges = set(), set()
    for a in anchors:
        if isinstance(a, (tuple, list, frozenset, set)):
            u, v = sorted(a)
            if (u, v) not in g.edges:
                raise AnchorNotInGraph(f"edge {(u, v)} not in graph")
            edges.add((u, v))
            verts.update((u, v))
        else:
            v = int(a)
            if not 0 <= v < g.vertex_count:
                raise AnchorNotInGraph(f"vertex {v} not in graph")
            verts.add(v)
    return frozenset(verts), frozenset(edges)


def rooted_subtree_profile(g: Graph, anchors: Iterable) -> SubtreeProfile:
    """``n_k(A, G)``: subtrees containing every anchor (vertices and/or edges).

    Vertex anchors are ints, edge anchors are pairs.
    """
    _require_connected(g)
    verts, edges = _normalize_anchors(g, anchors)
    if not verts:
        raise AnchorNotInGraph("at least one anchor is required")
    n = g.vertex_count
    if is_tree(g):
        # in a tree, holding both endpoints forces the edge
        root = min(verts)
        poly, _ = _rooted_polys(g.adjacency, root, set(range(n)), verts)
        return _finish(poly[root], n)
    if not is_unicyclic(g):
        return _enumerate_subtrees(g, verts, edges)
    cyc, owner = _arc_decomposition(g)
    e = (min(cyc[-1], cyc[0]), max(cyc[-1], cyc[0]))
    total = [0]
    if e not in edges:
        tree = delete_edge(g, e)
        root = min(verts)
        poly, _ = _rooted_polys(tree.adjacency, root, set(range(n)), verts)
        total = poly[root]
    hang = _pendant_polys(g, cyc, owner, verts)
    needs_cycle_vertex = {owner[v] for v in verts}
    for path in _arcs_through_edge(cyc):
        on_arc = set(path)
        if not needs_cycle_vertex <= on_arc:
            continue
        arc_edges = {(min(a, b), max(a, b)) for a, b in zip(path, path[1:])}
        if any(owner[u] == u and owner[v] == v and (u, v) not in arc_edges for u, v in edges):
            continue
        acc = [1]
        for c in path:
            acc = _pmul(acc, hang[c])
        total = _padd(total, acc)
    return _finish(total, n)


def _enumerate_subtrees(g: Graph, verts: frozenset, edges: frozenset) -> SubtreeProfile:
    """Backtracking over frontier edges; cost is linear in the number of subtrees.

    Each subtree is grown from its smallest vertex (or from the smallest
    anchor), deciding frontier edges in order: once an edge is skipped it is
    never offered again, so every subtree is produced exactly once.
    """
    n = g.vertex_count
    adj = g.adjacency
    counts = [0] * (n + 1)
    if not verts:
        counts[0] = 1
    roots = [min(verts)] if verts else range(n)

    def grow(tree_vs: set, tree_es: set, frontier: list, low: int) -> None:
        if verts <= tree_vs and edges <= tree_es:
            counts[len(tree_vs)] += 1
        for i, (u, w) in enumerate(frontier):
            rest = [(a, b) for a, b in frontier[i + 1 :] if b != w]
            rest += [(w, x) for x in sorted(adj[w]) if x not in tree_vs and x >= low]
            tree_vs.add(w)
            tree_es.add((min(u, w), max(u, w)))
            grow(tree_vs, tree_es, rest, low)
            tree_vs.discard(w)
            tree_es.discard((min(u, w), max(u, w)))

    for r in roots:
        low = 0 if verts else r
        grow({r}, set(), [(r, x) for x in sorted(adj[r]) if x >= low], low)
    return SubtreeProfile(tuple(counts))


def subtree_count_oracle(g: Graph, anchors: Iterable = ()) -> SubtreeProfile:
    """Definition-level count over every edge subset.

    A nonempty edge subset is a subtree on k vertices iff it touches k
    vertices, has k - 1 edges and is connected.  The empty subtree and the
    single vertices are added separately.  With ``anchors`` only subtrees
    holding every anchor vertex/edge are counted (and the empty one is not).
    """
    m = g.m
    if m > ORACLE_EDGE_LIMIT:
        raise TooLarge(f"oracle enumerates 2^|E| subsets; |E| <= {ORACLE_EDGE_LIMIT} required")
    verts, anchor_edges = _normalize_anchors(g, anchors) if anchors else (frozenset(), frozenset())
    n = g.vertex_count
    counts = [0] * (n + 1)
    if not verts:
        counts[0] = 1
        if n:
            counts[1] = n
    elif len(verts) == 1 and not anchor_edges:
        counts[1] = 1
    edges = g.sorted_edges
    anchor_idx = [edges.index(e) for e in anchor_edges]
    for mask in range(1, 1 << m):
        if any(not (mask >> i) & 1 for i in anchor_idx):
            continue
        chosen = [edges[i] for i in range(m) if (mask >> i) & 1]
        touched: set[int] = set()
        for u, v in chosen:
            touched.add(u)
            touched.add(v)
        k = len(touched)
        if len(chosen) != k - 1 or not verts <= touched:
            continue
        parent = {v: v for v in touched}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        merged = 0
        for u, v in chosen:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                merged += 1
        if merged == k - 1:
            counts[k] += 1
    return SubtreeProfile(tuple(counts))


def subtree_total(g: Graph) -> int:
    return subtree_profile(g).total


def rooted_total(g: Graph, anchors: Iterable) -> int:
    return rooted_subtree_profile(g, anchors).total


# -- distances ----------------------------------------------------------------


def wiener(g: Graph) -> int:
    """Sum of distances over unordered vertex pairs (BFS from every vertex)."""
    if g.vertex_count and not is_connected(g):
        raise Disconnected("Wiener index is infinite on a disconnected graph")
    total = 0
    adj = g.adjacency
    for s in range(g.vertex_count):
        dist = [-1] * g.vertex_count
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        total += sum(dist)
    return total // 2


# -- independent sets and matchings ------------------------------------------

_SIGMA_CACHE: dict[bytes, int] = {}
_HOSOYA_CACHE: dict[bytes, int] = {}


def _memo_key(g: Graph) -> bytes:
    # connected g; a labeled key is exact and avoids brute-force canonization
    if g.m <= g.vertex_count:
        return canonical_key(g)
    return b"L" + repr(g.sorted_edges).encode()


def _split(g: Graph) -> list[Graph]:
    comps = components(g)
    if len(comps) == 1:
        return [g]
    out = []
    for comp in comps:
        keep = set(comp)
        sub, _ = delete_vertices(g, [v for v in range(g.vertex_count) if v not in keep])
        out.append(sub)
    return out


def _sigma_connected(g: Graph) -> int:
    if g.m == 0:
        return 2 ** g.vertex_count
    key = _memo_key(g)
    hit = _SIGMA_CACHE.get(key)
    if hit is not None:
        return hit
    deg = g.degrees()
    v = max(range(g.vertex_count), key=lambda x: (deg[x], -x))
    without, _ = delete_vertices(g, [v])
    closed, _ = delete_vertices(g, (v, *g.adjacency[v]))
    value = merrifield_simmons(without) + merrifield_simmons(closed)
    _SIGMA_CACHE[key] = value
    return value


def merrifield_simmons(g: Graph) -> int:
    """Number of independent vertex sets, the empty set included.

    ``sigma(G) = sigma(G - v) + sigma(G - [v])`` on a maximum-degree vertex,
    multiplied over components and memoized per component isomorphism class.
    """
    result = 1
    for part in _split(g):
        result *= _sigma_connected(part)
    return result


def _hosoya_connected(g: Graph) -> int:
    if g.m == 0:
        return 1
    key = _memo_key(g)
    hit = _HOSOYA_CACHE.get(key)
    if hit is not None:
        return hit
    u, v = g.sorted_edges[0]
    value = hosoya(delete_edge(g, (u, v))) + hosoya(delete_vertices(g, (u, v))[0])
    _HOSOYA_CACHE[key] = value
    return value


def hosoya(g: Graph) -> int:
    """Number of matchings, the empty matching included.

    ``Z(G) = Z(G - e) + Z(G - u - v)`` for the first edge ``e = uv``, with the
    same component splitting and memoization as :func:`merrifield_simmons`.
    """
    result = 1
    for part in _split(g):
        result *= _hosoya_connected(part)
    return result


def sigma_oracle(g: Graph) -> int:
    n = g.vertex_count
    if n > ORACLE_VERTEX_LIMIT:
        raise TooLarge(f"sigma_oracle enumerates 2^|V| subsets; |V| <= {ORACLE_VERTEX_LIMIT} required")
    masks = [(1 << u) | (1 << v) for u, v in g.edges]
    count = 0
    for s in range(1 << n):
        if all((s & em) != em for em in masks):
            count += 1
    return count


def hosoya_oracle(g: Graph) -> int:
    m = g.m
    if m > ORACLE_EDGE_LIMIT:
        raise TooLarge(f"hosoya_oracle enumerates 2^|E| subsets; |E| <= {ORACLE_EDGE_LIMIT} required")
    ends = [(1 << u) | (1 << v) for u, v in g.sorted_edges]
    count = 0
    for s in range(1 << m):
        used = 0
        ok = True
        for i in range(m):
            if (s >> i) & 1:
                if used & ends[i]:
                    ok = False
                    break
                used |= ends[i]
        count += ok
    return count


def invariant_bundle(g: Graph) -> InvariantBundle:
    return InvariantBundle(subtree_total(g), wiener(g), merrifield_simmons(g), hosoya(g))


# -- closed forms -------------------------------------------------------------


def fibonacci(n: int) -> int:
    """``F_n`` with ``F_0 = 0, F_1 = F_2 = 1``."""
    if n < 0:
        raise OutOfRange("fibonacci index must be non-negative")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _need(params: Sequence[int], count: int, lows: Sequence[int]) -> None:
    if len(params) != count:
        raise OutOfRange(f"expected {count} parameter(s), got {len(params)}")
    for p, lo in zip(params, lows):
        if p < lo:
            raise OutOfRange(f"parameter {p} below minimum {lo}")


def _cf_n_path(p):
    _need(p, 1, [1])
    n = p[0]
    return (n * n + n + 2) // 2


def _cf_n_cycle(p):
    _need(p, 1, [3])
    return p[0] ** 2 + 1


def _cf_n_star(p):
    _need(p, 1, [1])
    return p[0] + 2 ** (p[0] - 1)


def _cf_n_us(p):
    _need(p, 1, [4])
    n = p[0]
    return 2 ** (n - 1) + 2 ** (n - 2) + n + 1


def _cf_n_up_inline(p):
    _need(p, 1, [3])
    n = p[0]
    return (n * n + 7 * n - 16) // 2


def _cf_n_up(p):
    _need(p, 1, [3])
    n = p[0]
    return (n * n + 7 * n - 10) // 2


def _cf_n_u1_two(p):
    _need(p, 2, [3, 1])
    l1, l2 = p
    return _cf_n_path([l1 + l2]) + (l1 * l1 * l2 - l1 * l2 + l1 * l1 - l1) // 2


def _cf_n_u2_two(p):
    _need(p, 2, [1, 3])
    l1, l2 = p
    return _cf_n_path([l1 + l2]) + (l1 * l2 * l2 - l1 * l2 + l2 * l2 - l2) // 2


def _cf_rooted_u1_two(p):
    _need(p, 2, [3, 1])
    l1, l2 = p
    return (l2 + 1) * (l1 + 1) * l1 // 2


def _cf_n_u22_l1(p):
    _need(p, 1, [1])
    l = p[0]
    return (l * l + 33 * l + 54) // 2


def _cf_n_u21_l2(p):
    _need(p, 1, [1])
    l = p[0]
    return (l * l + 29 * l + 50) // 2


def _cf_rooted_u22_l1(p):
    _need(p, 1, [1])
    return 16 * (p[0] + 1)


def _cf_rooted_u21_l2(p):
    _need(p, 1, [1])
    return 14 * (p[0] + 1)


def _cf_n_girth4_ones(p):
    _need(p, 1, [8])
    n = p[0]
    return 12 * 2 ** (n - 5) + 2 ** (n - 7) + n + 19


def _cf_n_u1n(p):
    _need(p, 1, [6])
    n = p[0]
    return n + 6 + 17 * 2 ** (n - 5)


def _cf_sigma_path(p):
    _need(p, 1, [0])
    return fibonacci(p[0] + 2)


def _cf_sigma_path_pair(p):
    _need(p, 2, [0, 0])
    return fibonacci(p[0] + 2) * fibonacci(p[1] + 2)


def _cf_hosoya_path(p):
    _need(p, 1, [0])
    return fibonacci(p[0] + 1)


def _cf_sigma_u_cycle_seg(p):
    # params: i (1-based) followed by the segment lengths
    if len(p) < 2:
        raise OutOfRange("need an index and at least one length")
    i, lengths = p[0], list(p[1:])
    if not 1 <= i <= len(lengths) or lengths[i - 1] < 3 or min(lengths) < 1:
        raise OutOfRange("cycle segment must exist and have length >= 3")
    sp = lambda k: fibonacci(k + 2)  # noqa: E731
    li = lengths[i - 1]
    rest = lengths[: i - 1] + lengths[i:]
    a, b = sp(li - 1), sp(li - 3)
    for lj in rest:
        a *= sp(lj)
        b *= sp(lj - 1)
    return a + b


CLOSED_FORMS = {
    "n_path": _cf_n_path,
    "n_cycle": _cf_n_cycle,
    "n_star": _cf_n_star,
    "n_us": _cf_n_us,
    "n_up": _cf_n_up,
    "n_up_inline": _cf_n_up_inline,
    "n_u1_two": _cf_n_u1_two,
    "n_u2_two": _cf_n_u2_two,
    "rooted_u1_two": _cf_rooted_u1_two,
    "n_u22_l1": _cf_n_u22_l1,
    "n_u21_l2": _cf_n_u21_l2,
    "rooted_u22_l1": _cf_rooted_u22_l1,
    "rooted_u21_l2": _cf_rooted_u21_l2,
    "n_girth4_ones": _cf_n_girth4_ones,
    "n_u1n": _cf_n_u1n,
    "sigma_path": _cf_sigma_path,
    "sigma_path_pair": _cf_sigma_path_pair,
    "hosoya_path": _cf_hosoya_path,
    "sigma_u_cycle_seg": _cf_sigma_u_cycle_seg,
}


def closed_form(family: str, params: Sequence[int]) -> int:
    """Evaluate a named closed-form count exactly.

    ``n_up_inline`` is the expression printed for ``n(UP_n)``; ``n_up`` is
    the value the enumeration actually produces (they differ by 3).
    """
    try:
        fn = CLOSED_FORMS[family]
    except KeyError:
        raise UnknownFamily(family) from None
    return fn([int(x) for x in params])

