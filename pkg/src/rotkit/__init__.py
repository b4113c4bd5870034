"""Rotation distance between full binary trees, under rank and height bounds."""

from .encodings import (
    Transposition,
    apply_transposition,
    induced_transposition,
    is_one_transposition,
    is_skew_permutation,
    is_skew_transposition_pair,
    is_tree_permutation,
    one_transpositions,
    permutation_to_tree,
    skew_tree_to_string,
    string_to_skew_tree,
    tree_to_permutation,
)
from .errors import RotkitError
from .oracle import (
    TreeFilter,
    all_pairs_distances,
    bfs_distance,
    catalan,
    enumerate_trees,
)
from .polynomials import (
    TreePolynomial,
    do_rotation,
    find_duplicate_polynomial_trees,
    is_skew_polynomial,
    parse_polynomial,
    poly_rotation_distance,
    skew_polynomial_to_tree,
    tree_to_polynomial,
    wiley_grey_test,
)
from .rank_paths import gadget_height, gadget_rank, rank_bounded_path, reduce_rank_by_one
from .skew import binary_skew_rotation, nearest_skew, skew_distance, to_right_comb
from .tree import (
    LEAF,
    Direction,
    Node,
    RotationStep,
    Tree,
    apply_path,
    common_nodes,
    height,
    internal_count,
    is_skew,
    left_comb,
    parse_tree,
    random_tree,
    rank,
    rightmost_path_length,
    right_comb,
    rotate,
    rotation_neighbors,
    serialize_tree,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
