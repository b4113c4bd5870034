import pickle
import random

import pytest
from hypothesis import given, strategies as st

from rotkit.errors import IllegalRotation, IndexOutOfRange, ParseError, SizeMismatch
from rotkit.oracle import catalan, enumerate_trees
from rotkit.tree import (
    LEAF,
    Direction,
    Node,
    RotationStep,
    apply_path,
    common_nodes,
    complete_tree,
    height,
    internal_count,
    inverse_step,
    is_skew,
    left_comb,
    parse_tree,
    random_tree,
    rank,
    replay,
    reverse_path,
    right_comb,
    rightmost_path_length,
    rotate,
    rotation_neighbors,
    serialize_tree,
    subtree_at,
)
from rotkit.verify import labelled_rotation
from strategies import nonempty_trees, trees

COMPLETE3 = parse_tree("((L L) (L L))")


class TestText:
    def test_leaf(self):
        assert parse_tree("L") is LEAF
        assert serialize_tree(LEAF) == "L"

    def test_combs(self):
        assert parse_tree("(L (L L))") == right_comb(2)
        assert serialize_tree(right_comb(2)) == "(L (L L))"
        assert serialize_tree(left_comb(2)) == "((L L) L)"

    def test_complete(self):
        assert internal_count(COMPLETE3) == 3 and rank(COMPLETE3) == 2

    def test_trailing_newline(self):
        assert parse_tree("(L L)\n") == Node(LEAF, LEAF)

    @pytest.mark.parametrize("text, offset", [
        ("", 0), ("(L L", 4), ("(L  L)", 3), ("(LL)", 2), ("(L L) ", 5),
        ("x", 0), ("(L L)\n\n", 5), ("((L L)L)", 6),
    ])
    def test_errors_carry_offset(self, text, offset):
        with pytest.raises(ParseError) as info:
            parse_tree(text)
        assert info.value.offset == offset
        assert f"offset {offset}" in str(info.value)

    def test_deep_comb_does_not_recurse(self):
        deep = "(L " * 5000 + "L" + ")" * 5000
        t = parse_tree(deep)
        assert serialize_tree(t) == deep

    @given(trees)
    def test_round_trip(self, t):
        assert parse_tree(serialize_tree(t)) == t


class TestMeasures:
    def test_examples(self):
        assert (internal_count(LEAF), height(LEAF), rank(LEAF)) == (0, 0, 0)
        assert (internal_count(right_comb(5)), height(right_comb(5))) == (5, 5)
        assert (internal_count(COMPLETE3), height(COMPLETE3)) == (3, 2)
        assert rightmost_path_length(right_comb(5)) == 5
        assert rightmost_path_length(left_comb(5)) == 1
        assert rightmost_path_length(COMPLETE3) == 2

    def test_complete_rank(self):
        for k in range(6):
            t = complete_tree(k)
            assert rank(t) == height(t) == k
            assert internal_count(t) == 2 ** k - 1

    def test_skew(self):
        assert is_skew(LEAF)
        assert is_skew(right_comb(4))
        assert not is_skew(COMPLETE3)

    def test_rank_one_iff_skew(self):
        for n in range(1, 11):
            for t in enumerate_trees(n):
                assert (rank(t) == 1) == is_skew(t)

    @given(nonempty_trees)
    def test_rank_height_order(self, t):
        assert 1 <= rank(t) <= height(t) <= internal_count(t)

    def test_random_tree_is_uniform_enough(self):
        rng = random.Random(1)
        counts = {}
        for _ in range(7000):
            t = random_tree(4, rng)
            counts[t] = counts.get(t, 0) + 1
        assert len(counts) == catalan(4)
        assert min(counts.values()) > 350 and max(counts.values()) < 650


class TestRotation:
    def test_left_at_root_of_comb(self):
        assert rotate(right_comb(3), RotationStep(1, Direction.LEFT)) == COMPLETE3

    def test_right_undoes_it(self):
        assert rotate(COMPLETE3, RotationStep(2, Direction.RIGHT)) == right_comb(3)

    def test_direction_strings_accepted(self):
        assert rotate(right_comb(3), (1, "L")) == COMPLETE3

    def test_illegal(self):
        with pytest.raises(IllegalRotation):
            rotate(right_comb(2), RotationStep(1, Direction.RIGHT))
        with pytest.raises(IllegalRotation):
            rotate(left_comb(2), RotationStep(1, Direction.LEFT))

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            rotate(right_comb(2), RotationStep(3, Direction.LEFT))
        with pytest.raises(IndexOutOfRange):
            rotate(right_comb(2), RotationStep(0, Direction.LEFT))

    def test_in_order_preserved(self):
        for n in range(1, 9):
            for t in enumerate_trees(n):
                for step, u in rotation_neighbors(t):
                    shape, labels = labelled_rotation(t, step)
                    assert shape == u
                    assert labels == list(range(1, n + 1))

    def test_involution(self):
        for n in range(1, 8):
            for t in enumerate_trees(n):
                for step, u in rotation_neighbors(t):
                    back = inverse_step(t, step)
                    assert back.direction is step.direction.inverse()
                    assert rotate(u, back) == t

    def test_height_changes_by_at_most_one(self):
        for n in range(1, 8):
            for t in enumerate_trees(n):
                for _, u in rotation_neighbors(t):
                    assert abs(height(u) - height(t)) <= 1

    def test_neighbour_degree(self):
        assert rotation_neighbors(Node(LEAF, LEAF)) == []
        assert len(rotation_neighbors(right_comb(3))) == 2
        for n in range(1, 9):
            for t in enumerate_trees(n):
                neighbours = rotation_neighbors(t)
                assert len(neighbours) == len({u for _, u in neighbours}) == n - 1

    def test_neighbour_order(self):
        steps = [s for s, _ in rotation_neighbors(COMPLETE3)]
        assert steps == [RotationStep(2, Direction.LEFT), RotationStep(2, Direction.RIGHT)]
        keys = [(s.node, s.direction.value) for s, _ in rotation_neighbors(parse_tree("((L (L L)) (L L))"))]
        assert keys == sorted(keys, key=lambda k: (k[0], k[1] == "R"))

    @given(nonempty_trees, st.lists(st.integers(0, 10 ** 6), max_size=12))
    def test_paths_reverse(self, t, choices):
        path, cur = [], t
        for c in choices:
            options = rotation_neighbors(cur)
            if not options:
                break
            step, cur = options[c % len(options)]
            path.append(step)
        assert apply_path(t, path) == cur
        assert list(replay(t, path))[-1] == cur
        assert apply_path(cur, reverse_path(t, path)) == t

    def test_subtree_at(self):
        t = parse_tree("((L (L L)) (L L))")
        sub, offset = subtree_at(t, 2)
        assert sub == right_comb(1) and offset == 1
        sub, offset = subtree_at(t, 4)
        assert sub == Node(LEAF, LEAF) and offset == 3
        with pytest.raises(IndexOutOfRange):
            subtree_at(t, 5)


class TestCommonNodes:
    def test_identity(self):
        for t in enumerate_trees(4):
            assert common_nodes(t, t) == {(i, i) for i in range(1, 5)}

    def test_combs(self):
        assert common_nodes(right_comb(2), left_comb(2)) == {(1, 2)}

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            common_nodes(right_comb(2), right_comb(3))


def test_values_are_hashable_and_picklable():
    t = parse_tree("((L L) (L (L L)))")
    assert pickle.loads(pickle.dumps(t)) == t
    assert pickle.loads(pickle.dumps(LEAF)) is LEAF
    assert len({t, parse_tree("((L L) (L (L L)))")}) == 1
    assert RotationStep(3, Direction.RIGHT).to_json() == {"node": 3, "dir": "R"}
