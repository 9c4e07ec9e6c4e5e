from __future__ import annotations

import random

import pytest

from unicyclic.enumeration import (
    ClassFilter,
    InfeasibleFilter,
    brute_force_trees,
    brute_force_unicyclic,
    class_count,
    matches,
    parallel_map,
    prufer_decode,
    random_unicyclic,
    shard_by_key,
    trees,
    unicyclic,
    unicyclic_with_keys,
)
from unicyclic.graph import TooLarge, canonical_key, cycle_info, is_tree, is_unicyclic, segment_sequence
from unicyclic.invariants import subtree_total

TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47}
UNICYCLIC_COUNTS = {3: 1, 4: 2, 5: 5, 6: 13, 7: 33, 8: 89, 9: 240}


def test_tree_counts():
    for n, c in TREE_COUNTS.items():
        got = list(trees(n))
        assert len(got) == c and all(is_tree(t) for t in got)


def test_trees_match_prufer():
    for n in range(1, 8):
        assert sorted(canonical_key(t) for t in trees(n)) == brute_force_trees(n)


def test_unicyclic_counts():
    for n, c in UNICYCLIC_COUNTS.items():
        assert class_count(n) == c


def test_unicyclic_matches_brute_force():
    for n in range(3, 7):
        assert [k for k, _ in unicyclic_with_keys(ClassFilter(order=n))] == brute_force_unicyclic(n)


def test_no_duplicates_and_filter_soundness():
    for n in range(3, 10):
        keys = [k for k, _ in unicyclic_with_keys(ClassFilter(order=n))]
        assert len(keys) == len(set(keys)) and keys == sorted(keys)
        for g in unicyclic(ClassFilter(order=n, girth=4 if n >= 4 else 3)):
            assert is_unicyclic(g) and cycle_info(g).girth == (4 if n >= 4 else 3)
    for g in unicyclic(ClassFilter.for_sequence((4, 2, 1, 1))):
        assert segment_sequence(g) == (4, 2, 1, 1)


def test_segment_count_partition():
    for n in range(3, 10):
        total = sum(class_count(ClassFilter(order=n, segment_count=m)) for m in range(1, n + 1))
        assert total == class_count(n)


def test_class_count_examples():
    assert class_count(ClassFilter(order=5, girth=5)) == 1
    assert class_count(ClassFilter.for_sequence((4, 4, 1, 1))) >= 2
    for g in unicyclic(ClassFilter(order=7, segment_count=7)):
        assert segment_sequence(g) == (1,) * 7
    assert class_count(ClassFilter.for_sequence((4, 2, 1, 1))) == 6


def test_class_filter_validation():
    with pytest.raises(InfeasibleFilter):
        ClassFilter(order=5, girth=6)
    with pytest.raises(InfeasibleFilter):
        ClassFilter(order=2)
    with pytest.raises(InfeasibleFilter):
        ClassFilter(order=7, segment_sequence=(4, 2))
    with pytest.raises(InfeasibleFilter):
        ClassFilter(order=6, segment_sequence=(4, 2), segment_count=2)
    with pytest.raises(InfeasibleFilter):
        ClassFilter(order=6, segment_count=7)
    assert ClassFilter(order=6, segment_sequence=(1, 4, 1)).segment_sequence == (4, 1, 1)


def test_bounds():
    with pytest.raises(TooLarge):
        list(trees(13))
    with pytest.raises(TooLarge):
        list(unicyclic(12))


def test_matches_order_mismatch():
    g = next(unicyclic(5))
    assert not matches(g, ClassFilter(order=6))


def test_prufer_decode():
    t = prufer_decode([3, 3, 3], 5)
    assert sorted(t.degrees()) == [1, 1, 1, 1, 4]


def test_parallel_map_order_and_sharding():
    rng = random.Random(2)
    graphs = [random_unicyclic(rng.randint(3, 9), rng) for _ in range(23)]
    serial = [subtree_total(g) for g in graphs]
    assert parallel_map(subtree_total, graphs, 1) == serial
    assert parallel_map(subtree_total, graphs, 4) == serial
    items = list(unicyclic_with_keys(ClassFilter(order=7)))
    shards = shard_by_key(items, 4)
    assert len(shards) <= 4 and [x for s in shards for x in s] == items
    assert shard_by_key([], 3) == []
