"""Rank-bounded rotation paths and the two reduction gadgets.

:func:`reduce_rank_by_one` flattens rank-2 subtrees with two skew children
into right combs: both children are first turned into combs through skew
trees only (left comb on the left, right comb on the right), then the node
subtree root is right-rotated until the whole subtree is a right comb.  Ranks only go
down along the way, so no intermediate tree exceeds the starting rank.
"""

from __future__ import annotations

from .errors import RankTooLow, SizeMismatch
from .skew import skew_distance
from .tree import (
    LEAF,
    Direction,
    Node,
    RotationPath,
    RotationStep,
    Tree,
    apply_path,
    complete_tree,
    internal_count,
    left_comb,
    rank,
    reverse_path,
    right_comb,
    subtree_at,
)


def _lowest_rank2_node(t: Tree) -> int | None:
    """In-order index of the first (post-order) rank-2 node with no rank-2 descendant."""
    found: list[int] = []

    def go(sub: Tree, offset: int) -> tuple[int, bool]:
        # returns (rank, subtree contains a rank-2 node)
        if sub is LEAF or found:
            return 0, False
        left_size = internal_count(sub.left)
        rl, below_l = go(sub.left, offset)
        if found:
            return 0, True
        rr, below_r = go(sub.right, offset + left_size + 1)
        if found:
            return 0, True
        r = rl + 1 if rl == rr else max(rl, rr)
        below = below_l or below_r
        if r == 2 and not below:
            found.append(offset + left_size + 1)
        return r, below or r == 2

    go(t, 0)
    return found[0] if found else None


def _shift(path: RotationPath, offset: int) -> RotationPath:
    return [RotationStep(s.node + offset, s.direction) for s in path]


def flatten_rank2_node(t: Tree, node: int) -> tuple[Tree, RotationPath]:
    """Turn the subtree at ``node`` (two skew children) into a right comb."""
    sub, offset = subtree_at(t, node)
    a, b = internal_count(sub.left), internal_count(sub.right)
    path: RotationPath = []
    if a:
        _, steps = skew_distance(sub.left, left_comb(a))
        path += _shift(steps, offset)
    if b:
        _, steps = skew_distance(sub.right, right_comb(b))
        path += _shift(steps, offset + a + 1)
    # each right rotation lifts the next left-comb node to the subtree root
    path += [RotationStep(offset + k, Direction.RIGHT) for k in range(a + 1, 1, -1)]
    return apply_path(t, path), path


def reduce_rank_by_one(t: Tree) -> tuple[Tree, RotationPath]:
    """Rotate ``t`` (rank ``r >= 2``) to a tree of rank ``r - 1``.

    Every intermediate tree has rank at most ``r`` and the path has at most
    ``2n^3 + n^2`` steps.
    """
    r = rank(t)
    if r < 2:
        raise RankTooLow(f"rank {r} tree cannot be reduced")
    path: RotationPath = []
    cur = t
    # one flattening lowers the root rank by at most one
    while rank(cur) == r:
        node = _lowest_rank2_node(cur)
        cur, steps = flatten_rank2_node(cur, node)
        path += steps
    return cur, path


def reduce_to_skew(t: Tree) -> tuple[Tree, RotationPath]:
    path: RotationPath = []
    while rank(t) > 1:
        t, steps = reduce_rank_by_one(t)
        path += steps
    return t, path


def rank_bounded_path(t1: Tree, t2: Tree) -> RotationPath:
    """A path from ``t1`` to ``t2`` through trees of rank at most ``max(rank)``.

    Both ends are reduced to skew trees, which are joined by a skew path.
    """
    if internal_count(t1) != internal_count(t2):
        raise SizeMismatch("trees have different internal counts")
    if t1 == t2:
        return []
    s1, down1 = reduce_to_skew(t1)
    s2, down2 = reduce_to_skew(t2)
    _, bridge = skew_distance(s1, s2)
    return down1 + bridge + reverse_path(t2, down2)


def rank_path_bound(n: int, r1: int, r2: int) -> int:
    return n * n * (1 + (2 * n + 1) * (r1 + r2 - 2))


def reduction_bound(n: int) -> int:
    return 2 * n ** 3 + n ** 2


def _replace_leftmost_leaf(host: Tree, t: Tree) -> Tree:
    if host is LEAF:
        return t
    return Node(_replace_leftmost_leaf(host.left, t), host.right)


def gadget_rank_depth(n: int) -> int:
    # ceil(log2 n) + 1, never below 2 so the gadget still dominates when n = 1
    return max(2, (n - 1).bit_length() + 1)


def gadget_rank(t: Tree) -> Tree:
    """Hang ``t`` from the leftmost leaf of a complete tree of rank ``ceil(log2 n) + 1``."""
    n = internal_count(t)
    if n < 1:
        raise ValueError("gadget needs at least one internal node")
    r = gadget_rank_depth(n)
    out = _replace_leftmost_leaf(complete_tree(r), t)
    assert rank(out) == r
    return out


def gadget_height(t: Tree) -> Tree:
    """Hang ``t`` as the left subtree of the root of a right comb with ``n+1`` nodes."""
    n = internal_count(t)
    if n < 1:
        raise ValueError("gadget needs at least one internal node")
    comb = right_comb(n + 1)
    return Node(t, comb.right)

