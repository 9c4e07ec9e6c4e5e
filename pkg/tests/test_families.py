from __future__ import annotations

import itertools

import pytest

from unicyclic.families import (
    CycleTooShort,
    NotSimple,
    OutOfRange,
    cycle,
    cycle_with_pendants,
    elementary,
    path,
    path_union,
    slide,
    star,
    starlike,
    u1n,
    u_cycle_seg,
    u_two_branch,
    us_up,
)
from unicyclic.graph import build_graph, canonical_key, cycle_info, is_tree, is_unicyclic, segment_sequence
from unicyclic.invariants import subtree_total


def key(g):
    return canonical_key(g)


def test_elementary():
    assert elementary("path", 1).n == 1
    assert elementary("cycle", 3).m == 3
    s5 = elementary("star", 5)
    assert s5.degree(0) == 4
    with pytest.raises(OutOfRange):
        elementary("cycle", 2)
    with pytest.raises(OutOfRange):
        elementary("path", 0)
    with pytest.raises(OutOfRange):
        elementary("wheel", 5)


def test_us_up():
    us6 = us_up("us", 6)
    assert us6.n == 6 and max(us6.degrees()) == 5
    assert key(us_up("up", 4)) == key(us_up("us", 4))
    g = us_up("us", 7, 4)
    assert segment_sequence(g) == (4, 1, 1, 1)
    for n in range(3, 11):
        for l in range(3, n + 1):
            a, b = us_up("us", n, l), us_up("up", n, l)
            assert cycle_info(a).girth == cycle_info(b).girth == l
            assert sum(1 for d in a.degrees() if d >= 3) == (1 if n > l else 0)
            assert max(b.degrees()) == (3 if n > l else 2)
    with pytest.raises(OutOfRange):
        us_up("us", 4, 5)
    with pytest.raises(OutOfRange):
        us_up("xx", 5)


def test_u_cycle_seg():
    h2 = u_cycle_seg([4, 4, 1, 1], 1)
    assert h2.n == 10 and segment_sequence(h2) == (4, 4, 1, 1)
    g = u_cycle_seg([6, 4], 2)
    assert cycle_info(g).girth == 4
    assert key(u_cycle_seg([3, 3], 1)) == key(us_up("up", 6))
    with pytest.raises(CycleTooShort):
        u_cycle_seg([4, 2], 2)
    with pytest.raises(OutOfRange):
        u_cycle_seg([4, 2], 3)


def test_u_cycle_seg_round_trip():
    def partitions(total, cap):
        if total == 0:
            yield ()
            return
        for first in range(min(total, cap), 0, -1):
            for rest in partitions(total - first, first):
                yield (first,) + rest

    for total in range(3, 13):
        for seq in partitions(total, total):
            for i, li in enumerate(seq, start=1):
                if li >= 3:
                    g = u_cycle_seg(seq, i)
                    assert is_unicyclic(g)
                    assert segment_sequence(g) == seq


def test_u_two_branch():
    h1 = u_two_branch(4, 4, [1], [1])
    assert h1.n == 10 and segment_sequence(h1) == (4, 4, 1, 1)
    assert key(h1) != key(u_cycle_seg([4, 4, 1, 1], 1))
    g = u_two_branch(2, 1, [1], [1])
    assert g.n == 5 and subtree_total(g) == 28
    t8 = u_two_branch(2, 2, [1, 1, 1], [1])
    assert cycle_info(t8).girth == 4 and segment_sequence(t8) == (2, 2, 1, 1, 1, 1)
    for li, lj in itertools.product(range(1, 6), repeat=2):
        if li + lj < 3:
            continue
        assert cycle_info(u_two_branch(li, lj, [2], [1])).girth == li + lj
        if li == lj:
            assert key(u_two_branch(li, lj, [2], [1])) == key(u_two_branch(li, lj, [1], [2]))
    with pytest.raises(NotSimple):
        u_two_branch(1, 1, [1], [1])
    with pytest.raises(OutOfRange):
        u_two_branch(2, 2, [], [1])


def test_u1n():
    g6 = u1n(6)
    assert g6.n == 6 and sorted(g6.degrees()) == [1, 1, 1, 3, 3, 3]
    g8 = u1n(8)
    assert sorted(d for d in g8.degrees() if d >= 3) == [3, 3, 5]
    for n in range(6, 12):
        assert segment_sequence(u1n(n)) == (1,) * n
    with pytest.raises(OutOfRange):
        u1n(5)


def test_starlike_and_pendants():
    assert key(starlike([1, 1, 1])) == key(star(4))
    assert is_tree(starlike([2, 3]))
    c = cycle_with_pendants(11, {0: [2, 1], 3: [3], 7: [1]})
    sc = cycle_with_pendants(11, {0: [2, 1, 3, 1]})
    assert c.n == sc.n == 18 and is_unicyclic(c) and is_unicyclic(sc)
    with pytest.raises(OutOfRange):
        cycle_with_pendants(4, {4: [1]})
    with pytest.raises(OutOfRange):
        cycle_with_pendants(4, {0: [0]})
    with pytest.raises(OutOfRange):
        starlike([1, 0])


def test_slide():
    single = build_graph(1, [])
    for n in range(1, 8):
        assert key(slide(n, 1, single, 0)) == key(path(n))
    g = slide(5, 3, cycle(3), 0)
    assert key(g) == key(cycle_with_pendants(3, {0: [2, 2]}))
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert key(slide(n, k, cycle(4), 1)) == key(slide(n, n + 1 - k, cycle(4), 1))
    with pytest.raises(OutOfRange):
        slide(4, 5, cycle(3), 0)
    with pytest.raises(OutOfRange):
        slide(4, 1, cycle(3), 3)


def test_path_union():
    g = path_union([3, 0, 2])
    assert g.n == 5 and g.m == 3
    with pytest.raises(OutOfRange):
        path_union([-1])


def test_every_constructor_is_unicyclic_except_starlike():
    samples = [cycle(5), us_up("us", 6), us_up("up", 6, 4), u_cycle_seg([5, 2, 1], 1),
               u_two_branch(3, 2, [1], [2]), u1n(7), cycle_with_pendants(5, {1: [1]})]
    assert all(is_unicyclic(g) for g in samples)
    assert not is_unicyclic(starlike([1, 2]))
