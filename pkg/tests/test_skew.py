import pytest
from hypothesis import given

from rotkit.encodings import skew_tree_to_string, string_to_skew_tree
from rotkit.errors import LengthMismatch, MalformedString, NotSkew, SizeMismatch
from rotkit.oracle import TreeFilter, all_pairs_distances, bfs_distance, enumerate_trees
from rotkit.skew import (
    binary_skew_rotation,
    expected_nearest_skew_distance,
    expected_right_comb_distance,
    nearest_skew,
    skew_distance,
    skew_rotation_trace,
    to_right_comb,
)
from rotkit.tree import (
    Direction,
    apply_path,
    complete_tree,
    height,
    internal_count,
    is_skew,
    left_comb,
    parse_tree,
    replay,
    right_comb,
    rightmost_path_length,
)
from strategies import nonempty_trees, skew_string_pairs

COMPLETE3 = parse_tree("((L L) (L L))")


def common_prefix(a: str, b: str) -> int:
    k = 0
    while k < len(a) and a[k] == b[k]:
        k += 1
    return k


class TestBinarySkewRotation:
    def test_combs(self):
        assert binary_skew_rotation("0001", "1110")[0] == 6

    def test_identity(self):
        assert binary_skew_rotation("0110", "0110") == (0, [])

    def test_single_swap(self):
        count, path = binary_skew_rotation("001", "010")
        assert count == 1
        assert bfs_distance(string_to_skew_tree("001"), string_to_skew_tree("010"),
                            TreeFilter.skew_only())[0] == 1
        assert apply_path(string_to_skew_tree("001"), path) == string_to_skew_tree("010")

    def test_last_bit_swap(self):
        # swapping the final pair only flips bit n-1
        count, path = binary_skew_rotation("01", "10")
        assert count == 1 and path[0].direction is Direction.LEFT

    def test_errors(self):
        with pytest.raises(LengthMismatch):
            binary_skew_rotation("01", "001")
        with pytest.raises(MalformedString):
            binary_skew_rotation("011", "001")

    @given(skew_string_pairs())
    def test_path_replays_through_skew_trees(self, pair):
        a, b = pair
        count, path = binary_skew_rotation(a, b)
        n = len(a)
        assert count == len(path) <= n * n
        trees = list(replay(string_to_skew_tree(a), path))
        assert trees[-1] == string_to_skew_tree(b)
        assert all(is_skew(t) for t in trees)

    @given(skew_string_pairs())
    def test_symmetric(self, pair):
        a, b = pair
        assert binary_skew_rotation(a, b)[0] == binary_skew_rotation(b, a)[0]

    @given(skew_string_pairs())
    def test_prefix_grows_every_pass(self, pair):
        a, b = pair
        _, _, passes = skew_rotation_trace(a, b)
        prefixes = [common_prefix(a, b)] + [common_prefix(s, b) for s in passes]
        assert all(x < y for x, y in zip(prefixes, prefixes[1:]))
        assert not passes or passes[-1] == b

    def test_comb_distance_closed_form(self):
        for n in range(2, 13):
            assert skew_distance(right_comb(n), left_comb(n))[0] == n * (n - 1) // 2


class TestSkewDistance:
    def test_examples(self):
        assert skew_distance(right_comb(5), left_comb(5))[0] == 10
        assert skew_distance(right_comb(5), right_comb(5)) == (0, [])

    def test_errors(self):
        with pytest.raises(SizeMismatch):
            skew_distance(right_comb(2), right_comb(3))
        with pytest.raises(NotSkew):
            skew_distance(COMPLETE3, right_comb(3))

    def test_matches_oracle(self):
        for n in range(1, 8):
            table = all_pairs_distances(n, TreeFilter.skew_only())
            for t1, row in zip(table.trees, table.rows):
                for t2, d in zip(table.trees, row):
                    assert skew_distance(t1, t2)[0] == d == skew_distance(t2, t1)[0]

    def test_frozen_distances(self):
        # skew-filtered BFS values at n=4, rows and columns in string order
        strings = ["0001", "0010", "0101", "0110", "1001", "1010", "1101", "1110"]
        expected = [
            [0, 1, 2, 3, 3, 4, 5, 6],
            [1, 0, 1, 2, 2, 3, 4, 5],
            [2, 1, 0, 1, 1, 2, 3, 4],
            [3, 2, 1, 0, 2, 1, 2, 3],
            [3, 2, 1, 2, 0, 1, 2, 3],
            [4, 3, 2, 1, 1, 0, 1, 2],
            [5, 4, 3, 2, 2, 1, 0, 1],
            [6, 5, 4, 3, 3, 2, 1, 0],
        ]
        got = [[binary_skew_rotation(a, b)[0] for b in strings] for a in strings]
        assert got == expected


class TestNearestSkew:
    def test_skew_input(self):
        t = string_to_skew_tree("01101")
        assert nearest_skew(t) == (0, t, [])

    def test_complete_trees(self):
        assert nearest_skew(COMPLETE3)[0] == 1
        assert nearest_skew(complete_tree(3))[0] == 4

    @given(nonempty_trees)
    def test_height_climbs_each_step(self, t):
        d, witness, path = nearest_skew(t)
        assert d == len(path) == internal_count(t) - height(t) == expected_nearest_skew_distance(t)
        heights = [height(u) for u in replay(t, path)]
        assert all(y == x + 1 for x, y in zip(heights, heights[1:]))
        assert is_skew(witness) and apply_path(t, path) == witness

    def test_tie_rotates_left(self):
        _, _, path = nearest_skew(COMPLETE3)
        assert path[0].direction is Direction.LEFT


class TestRightComb:
    def test_examples(self):
        assert to_right_comb(right_comb(6)) == (0, [])
        assert to_right_comb(left_comb(6))[0] == 5
        assert to_right_comb(COMPLETE3)[0] == 1

    @given(nonempty_trees)
    def test_right_rotations_only(self, t):
        d, path = to_right_comb(t)
        assert d == internal_count(t) - rightmost_path_length(t) == expected_right_comb_distance(t)
        assert all(step.direction is Direction.RIGHT for step in path)
        assert apply_path(t, path) == right_comb(internal_count(t))

    def test_strings_of_skew_witnesses(self):
        for t in enumerate_trees(5):
            _, witness, _ = nearest_skew(t)
            assert len(skew_tree_to_string(witness)) == 5
