from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unicyclic.enumeration import random_tree, random_unicyclic, unicyclic
from unicyclic.families import cycle, path, star, u_cycle_seg, us_up
from unicyclic.graph import (
    DuplicateEdge,
    Graph,
    IndexOutOfRange,
    NoSuchEdge,
    NotTreeOrUnicyclic,
    NotUnicyclic,
    ParseError,
    SelfLoop,
    _all_permutations_key,
    brute_force_key,
    build_graph,
    canonical_key,
    closed_neighborhood,
    cycle_info,
    delete_edge,
    delete_vertices,
    disjoint_union,
    is_connected,
    is_tree,
    is_unicyclic,
    merge_vertices,
    read_edgelist,
    relabel,
    segment_sequence,
    write_edgelist,
)


def test_build_graph_basics():
    tri = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert tri.m == 3 and is_unicyclic(tri)
    single = build_graph(1, [])
    assert single.n == 1 and single.m == 0
    with pytest.raises(DuplicateEdge):
        build_graph(4, [(0, 1), (0, 1)])
    with pytest.raises(DuplicateEdge):
        build_graph(4, [(0, 1), (1, 0)])
    with pytest.raises(SelfLoop):
        build_graph(2, [(1, 1)])
    with pytest.raises(IndexOutOfRange):
        build_graph(2, [(0, 2)])


def test_is_unicyclic_examples():
    assert is_unicyclic(cycle(4))
    assert not is_unicyclic(path(5))
    two_triangles = disjoint_union(cycle(3), cycle(3))
    assert not is_unicyclic(two_triangles) and not is_connected(two_triangles)


def test_cycle_info_examples():
    us6 = us_up("us", 6)
    info = cycle_info(us6)
    assert info.girth == 3 and len(info.branch_vertices) == 1
    up6 = cycle_info(us_up("up", 6))
    assert up6.girth == 3 and len(up6.branch_vertices) == 1
    c7 = cycle_info(cycle(7))
    assert c7.girth == 7 and not c7.branch_vertices
    with pytest.raises(NotUnicyclic):
        cycle_info(path(4))


def test_cycle_info_rotation_reflection_invariant():
    base = us_up("up", 7, 5)
    outs = set()
    for shift in range(5):
        for flip in (False, True):
            perm = list(range(7))
            for i in range(5):
                j = (i + shift) % 5
                perm[i] = (5 - j) % 5 if flip else j
            outs.add(cycle_info(relabel(base, perm)).girth)
    assert outs == {5}
    g = relabel(base, [3, 4, 0, 1, 2, 5, 6])
    info = cycle_info(g)
    assert info.cycle_vertices[0] == min(info.cycle_vertices)
    assert info.cycle_vertices[1] < info.cycle_vertices[-1]


def test_segment_sequence_examples():
    assert segment_sequence(star(6)) == (1, 1, 1, 1, 1)
    assert segment_sequence(path(5)) == (4,)
    assert segment_sequence(us_up("up", 6)) == (3, 3)
    assert segment_sequence(u_cycle_seg([4, 4, 1, 1], 1)) == (4, 4, 1, 1)
    assert segment_sequence(cycle(6)) == (6,)
    with pytest.raises(NotTreeOrUnicyclic):
        segment_sequence(build_graph(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3)]))


def test_segment_sum_equals_order():
    for n in range(3, 11):
        for g in unicyclic(n):
            assert sum(segment_sequence(g)) == n


def test_canonical_key_examples():
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    c4b = build_graph(4, [(0, 2), (2, 1), (1, 3), (3, 0)])
    assert canonical_key(c4) == canonical_key(c4b)
    assert canonical_key(us_up("us", 4)) == canonical_key(us_up("up", 4))
    assert canonical_key(us_up("us", 5)) != canonical_key(us_up("up", 5))


def _random_perm(n, rng):
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def test_canonical_key_relabel_invariance():
    rng = random.Random(7)
    corpus = [random_unicyclic(rng.randint(3, 11), rng) for _ in range(6)]
    corpus += [random_tree(rng.randint(1, 11), rng) for _ in range(4)]
    corpus.append(build_graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)]))
    for g in corpus:
        key = canonical_key(g)
        for _ in range(1000):
            assert canonical_key(relabel(g, _random_perm(g.n, rng))) == key


def test_canonical_key_matches_permutation_reference():
    # equal keys exactly when the exhaustive reference agrees
    graphs = []
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for r in range(len(pairs) + 1):
            for chosen in itertools.combinations(pairs, r):
                graphs.append(Graph(n, frozenset(chosen)))
    ref = {}
    ours = {}
    for g in graphs:
        ref.setdefault(_all_permutations_key(g), set()).add(canonical_key(g))
        ours.setdefault(canonical_key(g), set()).add(_all_permutations_key(g))
    assert all(len(v) == 1 for v in ref.values())
    assert all(len(v) == 1 for v in ours.values())


def test_brute_force_key_agrees_on_unicyclic():
    rng = random.Random(3)
    for _ in range(40):
        g = random_unicyclic(rng.randint(3, 8), rng)
        h = relabel(g, _random_perm(g.n, rng))
        assert brute_force_key(g) == brute_force_key(h)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=3, max_value=10), st.integers(min_value=0, max_value=10**6))
def test_canonical_key_property(n, seed):
    rng = random.Random(seed)
    g = random_unicyclic(n, rng)
    assert canonical_key(relabel(g, _random_perm(n, rng))) == canonical_key(g)


def test_delete_vertices_examples():
    c4 = cycle(4)
    p3, mapping = delete_vertices(c4, {0})
    assert canonical_key(p3) == canonical_key(path(3))
    assert mapping == {1: 0, 2: 1, 3: 2}
    rest, _ = delete_vertices(c4, closed_neighborhood(c4, 0))
    assert rest.n == 1 and rest.m == 0
    split, _ = delete_vertices(path(5), {2})
    assert canonical_key(split) == canonical_key(disjoint_union(path(2), path(2)))
    with pytest.raises(IndexOutOfRange):
        delete_vertices(c4, {9})


def test_closed_neighborhood_examples():
    assert len(closed_neighborhood(cycle(5), 2)) == 3
    s6 = star(6)
    assert closed_neighborhood(s6, 0) == frozenset(range(6))
    assert closed_neighborhood(s6, 3) == frozenset({0, 3})
    with pytest.raises(IndexOutOfRange):
        closed_neighborhood(s6, 6)


def test_closed_neighborhood_deletion_size():
    rng = random.Random(11)
    for _ in range(30):
        g = random_unicyclic(rng.randint(3, 10), rng)
        for v in range(g.n):
            rest, _ = delete_vertices(g, closed_neighborhood(g, v))
            assert rest.n == g.n - 1 - g.degree(v)


def test_delete_edge_examples():
    for n in range(3, 13):
        c = cycle(n)
        for e in c.sorted_edges:
            assert canonical_key(delete_edge(c, e)) == canonical_key(path(n))
    us4 = us_up("us", 4)
    leaves = [v for v in range(1, 3)]
    assert canonical_key(delete_edge(us4, tuple(leaves))) == canonical_key(star(4))
    with pytest.raises(NoSuchEdge):
        delete_edge(path(3), (0, 2))


def test_merge_and_union_examples():
    assert canonical_key(merge_vertices(path(3), 2, path(3), 0)) == canonical_key(path(5))
    assert canonical_key(merge_vertices(cycle(3), 0, path(4), 0)) == canonical_key(us_up("up", 6))
    assert canonical_key(merge_vertices(star(4), 0, star(4), 0)) == canonical_key(star(7))
    u = disjoint_union(path(2), path(1))
    assert u.n == 3 and u.m == 1
    assert disjoint_union(build_graph(0, []), cycle(3)) == cycle(3)
    with pytest.raises(IndexOutOfRange):
        merge_vertices(path(2), 5, path(2), 0)


def test_graph_is_immutable():
    g = cycle(4)
    with pytest.raises(AttributeError):
        g.vertex_count = 5
    delete_edge(g, (0, 1))
    assert g.m == 4


def test_edgelist_round_trip():
    g = u_cycle_seg([4, 4, 1, 1], 1)
    text = write_edgelist(g)
    assert read_edgelist(text) == g
    assert text.splitlines()[0] == "10 10"
    edges = [tuple(map(int, line.split())) for line in text.splitlines()[1:]]
    assert edges == sorted(edges)
    assert read_edgelist("# comment\n3 2\n0 1 # trailing\n1 2\n") == path(3)


@pytest.mark.parametrize("text", ["", "3\n", "3 2\n0 1\n", "2 1\n0 x\n", "2 1\n0 1 1\n"])
def test_edgelist_parse_errors(text):
    with pytest.raises(ParseError):
        read_edgelist(text)


def test_tree_predicates():
    assert is_tree(path(1)) and is_tree(star(5))
    assert not is_tree(cycle(3))
