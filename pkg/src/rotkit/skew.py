"""Skew rotation distance and the closed-form distances to skew trees and combs.

Under the bit-string encoding, a rotation that keeps a skew tree skew is
exactly a swap of two adjacent, different bits (the swap at positions
``n-1, n`` flips bit ``n-1``, since the last bit is only a convention).
:func:`binary_skew_rotation` repeatedly fixes the leftmost mismatch by
bubbling the nearest matching bit leftwards.
"""

from __future__ import annotations

from .encodings import (
    check_skew_string,
    normalize_last_bit,
    skew_tree_to_string,
)
from .errors import LengthMismatch, NotSkew, SizeMismatch
from .tree import (
    LEAF,
    Direction,
    RotationPath,
    RotationStep,
    Tree,
    height,
    internal_count,
    is_skew,
    rightmost_path_length,
    rotate,
)


def _swap_step(bits: list[str], p: int) -> RotationStep:
    """Rotation realising the swap of 0-based positions ``p`` and ``p+1``."""
    zeros = bits[:p].count("0")
    ones = p - zeros
    n = len(bits)
    if bits[p] == "0":
        return RotationStep(1 + zeros, Direction.LEFT)
    return RotationStep(n - ones, Direction.RIGHT)


def skew_rotation_trace(a: str, b: str) -> tuple[int, RotationPath, list[str]]:
    """Run the bubbling procedure, also returning ``a`` after each outer pass."""
    check_skew_string(a)
    check_skew_string(b)
    if len(a) != len(b):
        raise LengthMismatch(f"lengths {len(a)} and {len(b)} differ")
    n = len(a)
    cur = list(a)
    target = list(b)
    path: RotationPath = []
    passes: list[str] = []
    while cur != target:
        i = next(p for p in range(n) if cur[p] != target[p])
        # the last two bits differ, so a match always exists to the right
        j = next(p for p in range(i + 1, n) if cur[p] == target[i])
        while j != i:
            path.append(_swap_step(cur, j - 1))
            cur[j - 1], cur[j] = cur[j], cur[j - 1]
            # bit n-1 may have changed; keep the last-bit convention
            cur[-1] = "1" if cur[-2] == "0" else "0"
            j -= 1
        cur = list(normalize_last_bit("".join(cur)))
        passes.append("".join(cur))
    return len(path), path, passes


def binary_skew_rotation(a: str, b: str) -> tuple[int, RotationPath]:
    """Skew rotation distance between the skew trees encoded by ``a`` and ``b``.

    Returns the count and a rotation path on ``string_to_skew_tree(a)`` whose
    every intermediate tree is skew.  Runs in O(n^2).
    """
    count, path, _ = skew_rotation_trace(a, b)
    return count, path


def skew_distance(t1: Tree, t2: Tree) -> tuple[int, RotationPath]:
    if internal_count(t1) != internal_count(t2):
        raise SizeMismatch("trees have different internal counts")
    if not (is_skew(t1) and is_skew(t2)):
        raise NotSkew("skew distance is defined for skew trees only")
    return binary_skew_rotation(skew_tree_to_string(t1), skew_tree_to_string(t2))


def nearest_skew(t: Tree) -> tuple[int, Tree, RotationPath]:
    """Rotate to a skew tree in exactly ``n - height(t)`` height-increasing steps.

    Walk down the one-leaf spine to the first node with two internal
    children and rotate there towards the taller side (left rotation on
    ties).
    """
    path: RotationPath = []
    cur = t
    while True:
        sub, offset = cur, 0
        while sub is not LEAF:
            if sub.left is LEAF:
                offset += 1
                sub = sub.right
            elif sub.right is LEAF:
                sub = sub.left
            else:
                break
        if sub is LEAF:
            return len(path), cur, path
        index = offset + internal_count(sub.left) + 1
        if height(sub.left) >= height(sub.right):
            step = RotationStep(index, Direction.LEFT)
        else:
            step = RotationStep(index, Direction.RIGHT)
        cur = rotate(cur, step)
        path.append(step)


def to_right_comb(t: Tree) -> tuple[int, RotationPath]:
    """Right rotations along the rightmost path until the tree is a right comb."""
    path: RotationPath = []
    cur = t
    while True:
        sub, offset = cur, 0
        while sub is not LEAF and sub.left is LEAF:
            offset += 1
            sub = sub.right
        if sub is LEAF:
            return len(path), path
        step = RotationStep(offset + internal_count(sub.left) + 1, Direction.RIGHT)
        cur = rotate(cur, step)
        path.append(step)


def expected_nearest_skew_distance(t: Tree) -> int:
    return internal_count(t) - height(t)


def expected_right_comb_distance(t: Tree) -> int:
    return internal_count(t) - rightmost_path_length(t)
