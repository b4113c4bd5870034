"""Trees as permutations, skew trees as binary strings, rotations as transpositions.

A tree with ``n`` internal nodes is encoded by the pre-order listing of its
in-order labels.  Exactly the permutations avoiding the pattern
``sigma(k) < sigma(i) < sigma(j)`` (``i < j < k``) arise this way.

Skew trees are encoded by a string of ``n`` bits: bit ``i`` is ``0`` when
``sigma(i)`` is the minimum of its suffix and ``1`` when it is the maximum.
The last bit carries no information and is fixed to the complement of the
one before it (``"0"`` for ``n = 1``).
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .errors import (
    BadIndices,
    EmptyTree,
    MalformedString,
    NotAPermutation,
    NotATreePermutation,
    NotSkew,
    SizeMismatch,
)
from .tree import LEAF, Node, Tree, internal_count, is_skew, preorder_labels


class Transposition(NamedTuple):
    """Exchange of the adjacent blocks ``[i, j-1]`` and ``[j, k-1]`` (1-based)."""

    i: int
    j: int
    k: int


def _check_permutation(sigma: Sequence[int]) -> None:
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise NotAPermutation(f"{list(sigma)} is not a permutation of 1..{n}")


# ---------------------------------------------------------------------------
# tree permutations
# ---------------------------------------------------------------------------

def tree_to_permutation(t: Tree) -> tuple[int, ...]:
    if t is LEAF:
        raise EmptyTree("a tree permutation needs at least one internal node")
    return tuple(preorder_labels(t))


def has_pattern_bruteforce(sigma: Sequence[int]) -> bool:
    """Direct O(n^3) search for ``i < j < k`` with ``sigma[k] < sigma[i] < sigma[j]``."""
    n = len(sigma)
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[j] <= sigma[i]:
                continue
            for k in range(j + 1, n):
                if sigma[k] < sigma[i]:
                    return True
    return False


def has_pattern_stack(sigma: Sequence[int]) -> bool:
    """Linear-time search for the same pattern (stack-sortability scan)."""
    # ``bound``: largest value already followed by something larger.  Any
    # later value below it completes the pattern.
    bound = None
    stack: list[int] = []
    for value in sigma:
        if bound is not None and value < bound:
            return True
        while stack and stack[-1] < value:
            bound = stack.pop() if bound is None else max(bound, stack.pop())
        stack.append(value)
    return False


def is_tree_permutation(sigma: Sequence[int], *, fast: bool = False) -> bool:
    _check_permutation(sigma)
    if fast:
        return not has_pattern_stack(sigma)
    return not has_pattern_bruteforce(sigma)


def permutation_to_tree(sigma: Sequence[int]) -> Tree:
    """Inverse of :func:`tree_to_permutation`."""
    _check_permutation(sigma)
    if not sigma:
        raise EmptyTree("empty permutation")
    if has_pattern_bruteforce(sigma):
        raise NotATreePermutation(f"{list(sigma)} contains the forbidden pattern")

    def build(lo: int, hi: int) -> Tree:
        # sigma[lo:hi] is the pre-order of one subtree
        if lo == hi:
            return LEAF
        root = sigma[lo]
        split = lo + 1
        while split < hi and sigma[split] < root:
            split += 1
        return Node(build(lo + 1, split), build(split, hi))

    return build(0, len(sigma))


# ---------------------------------------------------------------------------
# skew permutations and strings
# ---------------------------------------------------------------------------

def is_skew_permutation(sigma: Sequence[int]) -> bool:
    _check_permutation(sigma)
    lo, hi = None, None
    for value in reversed(sigma):
        if lo is not None and lo < value < hi:
            return False
        lo = value if lo is None else min(lo, value)
        hi = value if hi is None else max(hi, value)
    return True


def check_skew_string(s: str) -> None:
    if not s or any(c not in "01" for c in s):
        raise MalformedString(f"{s!r} is not a non-empty 0/1 string")
    if len(s) == 1 and s != "0":
        raise MalformedString("a one-node skew string is '0' by convention")
    if len(s) >= 2 and s[-1] == s[-2]:
        raise MalformedString(f"{s!r}: last two bits must differ")


def normalize_last_bit(bits: str) -> str:
    """Force the final bit to the complement of the one before it."""
    if len(bits) == 1:
        return "0"
    return bits[:-1] + ("1" if bits[-2] == "0" else "0")


def skew_tree_to_string(t: Tree) -> str:
    if t is LEAF:
        raise EmptyTree("a skew string needs at least one internal node")
    if not is_skew(t):
        raise NotSkew("tree has a node with two internal children")
    bits = []
    while t is not LEAF:
        # leaf on the left: root carries the smallest label of its subtree
        if t.left is LEAF:
            bits.append("0")
            t = t.right
        else:
            bits.append("1")
            t = t.left
    return normalize_last_bit("".join(bits))


def string_to_skew_tree(s: str) -> Tree:
    check_skew_string(s)
    t: Tree = Node(LEAF, LEAF)
    for bit in reversed(s[:-1]):
        t = Node(LEAF, t) if bit == "0" else Node(t, LEAF)
    return t


def skew_string_labels(s: str) -> list[int]:
    """In-order label of the spine node at each level (the skew permutation)."""
    lo, hi = 1, len(s)
    out = []
    for bit in s:
        if bit == "0":
            out.append(lo)
            lo += 1
        else:
            out.append(hi)
            hi -= 1
    return out


# ---------------------------------------------------------------------------
# transpositions
# ---------------------------------------------------------------------------

def _check_transposition(delta: Transposition, n: int) -> None:
    i, j, k = delta
    # k may be n + 1 so that the second block can end at the last element
    if not (1 <= i < j < k <= n + 1):
        raise BadIndices(f"need 1 <= i < j < k <= {n + 1}, got {tuple(delta)}")


def apply_transposition(sigma: Sequence[int], delta: Transposition | tuple) -> tuple[int, ...]:
    delta = Transposition(*delta)
    n = len(sigma)
    _check_transposition(delta, n)
    i, j, k = delta
    q = k + i - j
    out = []
    for t in range(1, n + 1):
        if t < i or t >= k:
            src = t
        elif t < q:
            src = t + j - i
        else:
            src = t + j - k
        out.append(sigma[src - 1])
    return tuple(out)


def is_one_transposition(delta: Transposition | tuple) -> bool:
    i, j, k = delta
    return j == i + 1 or k == j + 1


def one_transpositions(n: int) -> list[Transposition]:
    """Every 1-transposition on ``n`` positions."""
    return [
        Transposition(i, j, k)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        for k in range(j + 1, n + 2)
        if j == i + 1 or k == j + 1
    ]


def find_transposition(sigma: Sequence[int], tau: Sequence[int]) -> Transposition | None:
    """The unique block exchange taking ``sigma`` to ``tau``, if one exists."""
    if len(sigma) != len(tau):
        raise SizeMismatch("sequences differ in length")
    diff = [p for p in range(len(sigma)) if sigma[p] != tau[p]]
    if not diff:
        return None
    i, k = diff[0] + 1, diff[-1] + 2
    for j in range(i + 1, k):
        delta = Transposition(i, j, k)
        if apply_transposition(sigma, delta) == tuple(tau):
            return delta
    return None


def induced_transposition(t1: Tree, t2: Tree) -> Transposition | None:
    if internal_count(t1) != internal_count(t2):
        raise SizeMismatch("trees have different internal counts")
    return find_transposition(tree_to_permutation(t1), tree_to_permutation(t2))


def is_skew_transposition_pair(sigma: Sequence[int], tau: Sequence[int]) -> bool:
    """Whether ``tau`` is ``sigma`` with an adjacent min/max pair swapped.

    The swap at ``i`` qualifies when one of ``sigma(i)``, ``sigma(i+1)``
    is the minimum and the other the maximum of ``sigma(i..n)``.
    """
    _check_permutation(sigma)
    _check_permutation(tau)
    if len(sigma) != len(tau):
        return False
    diff = [p for p in range(len(sigma)) if sigma[p] != tau[p]]
    if len(diff) != 2 or diff[1] != diff[0] + 1:
        return False
    p = diff[0]
    if sigma[p] != tau[p + 1] or sigma[p + 1] != tau[p]:
        return False
    suffix = sigma[p:]
    pair = {sigma[p], sigma[p + 1]}
    return pair == {min(suffix), max(suffix)}
