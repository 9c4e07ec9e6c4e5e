"""Constructors for the named graph families.

Cycle vertices come first (``0..g-1`` in cyclic order), pendant paths follow
in the order their lengths were given.  Constructors refuse parameters that
would need a loop or a multi-edge instead of quietly producing something
else.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .graph import Graph, GraphError, build_graph, merge_vertices

__all__ = [
    "FamilyError",
    "OutOfRange",
    "CycleTooShort",
    "NotSimple",
    "elementary",
    "path",
    "cycle",
    "star",
    "us_up",
    "u_cycle_seg",
    "u_two_branch",
    "u1n",
    "starlike",
    "cycle_with_pendants",
    "slide",
    "attach_at_branch",
    "path_union",
]


class FamilyError(GraphError):
    pass


class OutOfRange(FamilyError):
    pass


class CycleTooShort(FamilyError):
    pass


class NotSimple(FamilyError):
    pass


class _Builder:
    def __init__(self, n: int = 0):
        self.n = n
        self.edges: list[tuple[int, int]] = []

    def add_cycle(self, g: int) -> list[int]:
        start = self.n
        self.n += g
        vs = list(range(start, start + g))
        self.edges.extend((vs[i], vs[(i + 1) % g]) for i in range(g))
        return vs

    def add_path_from(self, anchor: int, length: int) -> None:
        prev = anchor
        for _ in range(length):
            self.edges.append((prev, self.n))
            prev = self.n
            self.n += 1

    def graph(self) -> Graph:
        return build_graph(self.n, self.edges)


def path(n: int) -> Graph:
    if n < 1:
        raise OutOfRange("a path needs at least one vertex")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise OutOfRange("a cycle needs at least three vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    if n < 1:
        raise OutOfRange("a star needs at least one vertex")
    return build_graph(n, [(0, i) for i in range(1, n)])


def elementary(kind: str, n: int) -> Graph:
    makers = {"path": path, "cycle": cycle, "star": star}
    if kind not in makers:
        raise OutOfRange(f"unknown elementary family {kind!r}")
    return makers[kind](n)


def us_up(kind: str, n: int, l: int = 3) -> Graph:
    """``US_n^l`` (``n - l`` pendant vertices at one cycle vertex) or
    ``UP_n^l`` (one pendant path of length ``n - l``)."""
    if not n >= l >= 3:
        raise OutOfRange(f"need n >= l >= 3, got n={n}, l={l}")
    b = _Builder()
    cyc = b.add_cycle(l)
    if kind == "us":
        for _ in range(n - l):
            b.add_path_from(cyc[0], 1)
    elif kind == "up":
        b.add_path_from(cyc[0], n - l)
    else:
        raise OutOfRange(f"kind must be 'us' or 'up', got {kind!r}")
    return b.graph()


def cycle_with_pendants(g: int, attachments: Mapping[int, Sequence[int]]) -> Graph:
    if g < 3:
        raise OutOfRange("cycle length must be at least 3")
    b = _Builder()
    cyc = b.add_cycle(g)
    for pos in sorted(attachments):
        if not 0 <= pos < g:
            raise OutOfRange(f"attachment position {pos} outside 0..{g - 1}")
        for length in attachments[pos]:
            if length < 1:
                raise OutOfRange("pendant path lengths must be positive")
            b.add_path_from(cyc[pos], length)
    return b.graph()


def u_cycle_seg(lengths: Sequence[int], i: int) -> Graph:
    """``U_i(l_1, ..., l_m)``: the ``i``-th length (1-based) forms the cycle and
    the others hang as pendant paths from one cycle vertex."""
    lengths = list(lengths)
    if not 1 <= i <= len(lengths):
        raise OutOfRange(f"index {i} outside 1..{len(lengths)}")
    if min(lengths) < 1:
        raise OutOfRange("segment lengths must be positive")
    if lengths[i - 1] < 3:
        raise CycleTooShort(f"a cycle segment of length {lengths[i - 1]} is not simple")
    rest = lengths[: i - 1] + lengths[i:]
    return cycle_with_pendants(lengths[i - 1], {0: rest} if rest else {})


def u_two_branch(li: int, lj: int, left: Sequence[int], right: Sequence[int]) -> Graph:
    """``U_{li,lj}(left; right)``: cycle of length ``li + lj`` whose two branch
    vertices split it into arcs of lengths ``li`` and ``lj``."""
    if li < 1 or lj < 1:
        raise OutOfRange("arc lengths must be positive")
    if li + lj < 3:
        raise NotSimple("two arcs of length 1 would form a double edge")
    if not left or not right:
        raise OutOfRange("both branch vertices need at least one pendant path")
    return cycle_with_pendants(li + lj, {0: list(left), li: list(right)})


def u1n(n: int) -> Graph:
    """Triangle with one pendant vertex at two corners and ``n - 5`` at the third."""
    if n < 6:
        raise OutOfRange("U^1_n needs n >= 6")
    return cycle_with_pendants(3, {0: [1], 1: [1], 2: [1] * (n - 5)})


def starlike(lengths: Sequence[int]) -> Graph:
    if any(x < 1 for x in lengths):
        raise OutOfRange("starlike path lengths must be positive")
    b = _Builder(1)
    for length in lengths:
        b.add_path_from(0, length)
    return b.graph()


def slide(n: int, k: int, g: Graph, v: int) -> Graph:
    """Merge vertex ``v`` of ``g`` with the ``k``-th vertex (1-based) of ``P_n``."""
    if not 1 <= k <= n:
        raise OutOfRange(f"need 1 <= k <= n, got k={k}, n={n}")
    if not 0 <= v < g.vertex_count:
        raise OutOfRange(f"vertex {v} not in g")
    return merge_vertices(g, v, path(n), k - 1)


def attach_at_branch(core: Graph, branch: int, g: Graph, v: int) -> Graph:
    """Identify vertex ``v`` of ``g`` with vertex ``branch`` of ``core``."""
    return merge_vertices(core, branch, g, v)


def path_union(sizes: Sequence[int]) -> Graph:
    """Disjoint union of paths ``P_s`` (``s = 0`` contributes nothing)."""
    edges = []
    n = 0
    for s in sizes:
        if s < 0:
            raise OutOfRange("path sizes must be non-negative")
        edges.extend((n + i, n + i + 1) for i in range(s - 1))
        n += s
    return build_graph(n, edges)
