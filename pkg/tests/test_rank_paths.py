import random

import pytest
from hypothesis import given, settings, strategies as st

from rotkit.errors import RankTooLow, SizeMismatch
from rotkit.oracle import TreeFilter, bfs_distance, enumerate_trees
from rotkit.rank_paths import (
    flatten_rank2_node,
    gadget_height,
    gadget_rank,
    gadget_rank_depth,
    rank_bounded_path,
    rank_path_bound,
    reduce_rank_by_one,
    reduce_to_skew,
    reduction_bound,
)
from rotkit.encodings import string_to_skew_tree
from rotkit.tree import (
    LEAF,
    Node,
    common_nodes,
    complete_tree,
    height,
    internal_count,
    is_skew,
    parse_tree,
    random_tree,
    rank,
    replay,
    right_comb,
)
from strategies import nonempty_trees

COMPLETE3 = parse_tree("((L L) (L L))")


class TestReduceRank:
    def test_complete3(self):
        out, path = reduce_rank_by_one(COMPLETE3)
        assert rank(out) == 1 and len(path) >= 1

    def test_complete7(self):
        out, path = reduce_rank_by_one(complete_tree(3))
        assert rank(out) == 2
        assert all(rank(u) <= 3 for u in replay(complete_tree(3), path))

    def test_skew_rejected(self):
        with pytest.raises(RankTooLow):
            reduce_rank_by_one(right_comb(4))
        with pytest.raises(RankTooLow):
            reduce_rank_by_one(LEAF)

    def test_one_pass_is_not_always_enough(self):
        # flattening the lowest rank-2 node of the left child leaves two
        # rank-1 children under the root, so the loop must flatten again
        t = Node(COMPLETE3, Node(LEAF, LEAF))
        out, path = reduce_rank_by_one(t)
        assert rank(out) == 1
        once, _ = flatten_rank2_node(t, 2)
        assert rank(once) == 2

    def test_flatten_yields_right_comb(self):
        t = parse_tree("(((L L) L) (L (L L)))")
        out, _ = flatten_rank2_node(t, 3)
        assert out == right_comb(5)

    @settings(deadline=None)
    @given(nonempty_trees.filter(lambda t: rank(t) >= 2))
    def test_drops_exactly_one(self, t):
        r, n = rank(t), internal_count(t)
        out, path = reduce_rank_by_one(t)
        assert rank(out) == r - 1
        assert all(rank(u) <= r for u in replay(t, path))
        assert len(path) <= reduction_bound(n)

    def test_reduce_to_skew(self):
        out, path = reduce_to_skew(complete_tree(4))
        assert is_skew(out) and list(replay(complete_tree(4), path))[-1] == out


class TestRankBoundedPath:
    def test_identity(self):
        assert rank_bounded_path(COMPLETE3, COMPLETE3) == []

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            rank_bounded_path(right_comb(2), right_comb(3))

    def test_skew_pairs_stay_skew(self):
        a, b = string_to_skew_tree("0110"), string_to_skew_tree("1001")
        path = rank_bounded_path(a, b)
        assert len(path) <= 16
        assert all(is_skew(u) for u in replay(a, path))

    @settings(deadline=None, max_examples=60)
    @given(st.integers(1, 12), st.integers(0, 2 ** 32))
    def test_random_pairs(self, n, seed):
        rng = random.Random(seed)
        t1, t2 = random_tree(n, rng), random_tree(n, rng)
        r1, r2 = rank(t1), rank(t2)
        path = rank_bounded_path(t1, t2)
        trees = list(replay(t1, path))
        assert trees[-1] == t2
        assert max(rank(u) for u in trees) <= max(r1, r2)
        assert len(path) <= rank_path_bound(n, r1, r2)

    def test_bound_formula(self):
        assert rank_path_bound(6, 2, 3) == 36 * (1 + 13 * 3)
        assert reduction_bound(4) == 2 * 64 + 16


class TestGadgets:
    def test_rank_depths(self):
        assert [gadget_rank_depth(n) for n in (1, 2, 3, 4, 5, 8, 9)] == [2, 2, 3, 3, 4, 4, 5]

    def test_rank_gadget_n3(self):
        for t in enumerate_trees(3):
            g = gadget_rank(t)
            assert internal_count(g) == 10 and rank(g) == 3

    def test_rank_gadget_n1(self):
        g = gadget_rank(Node(LEAF, LEAF))
        assert rank(g) == 2 and internal_count(g) == 4

    def test_rank_gadget_skew_n4(self):
        for t in enumerate_trees(4):
            if is_skew(t):
                assert rank(gadget_rank(t)) == 3

    def test_gadget_nodes_are_common(self):
        trees = enumerate_trees(3)
        frame = set(range(4, 11))
        for t1 in trees:
            for t2 in trees:
                common = common_nodes(gadget_rank(t1), gadget_rank(t2))
                assert {(k, k) for k in frame} <= common

    def test_height_gadget(self):
        for t in enumerate_trees(3):
            g = gadget_height(t)
            assert internal_count(g) == 7 and height(g) == 4
        assert internal_count(gadget_height(Node(LEAF, LEAF))) == 3

    @given(nonempty_trees)
    def test_height_gadget_shape(self, t):
        n = internal_count(t)
        g = gadget_height(t)
        assert height(g) == n + 1 and internal_count(g) == 2 * n + 1
        assert g.left == t

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            gadget_rank(LEAF)
        with pytest.raises(ValueError):
            gadget_height(LEAF)

    @pytest.mark.slow
    def test_rank_gadget_sample_n4(self):
        rng = random.Random(11)
        trees = enumerate_trees(4)
        for _ in range(6):
            t1, t2 = rng.choice(trees), rng.choice(trees)
            g1, g2 = gadget_rank(t1), gadget_rank(t2)
            assert bfs_distance(t1, t2)[0] == bfs_distance(g1, g2, TreeFilter.rank_at_most(3))[0]
