"""Full binary trees: representation, traversals, rank and rotation.

A tree is either the singleton :data:`LEAF` or a :class:`Node` holding two
subtrees.  Nodes are tuples, so trees are immutable, hashable and compare
structurally.  Internal nodes are addressed by their in-order index
``1..n``; a rotation keeps the in-order sequence intact, so an index keeps
naming the same label across a rotation path.
"""

from __future__ import annotations

import enum
import random
from typing import Iterator, NamedTuple, Sequence, Union

from .errors import IllegalRotation, IndexOutOfRange, ParseError, SizeMismatch


class Leaf:
    __slots__ = ()
    _instance: "Leaf | None" = None

    def __new__(cls) -> "Leaf":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "LEAF"

    def __reduce__(self) -> str:
        return "LEAF"


LEAF = Leaf()


class Node(NamedTuple):
    left: "Tree"
    right: "Tree"

    def __repr__(self) -> str:
        return f"Node({serialize_tree(self)})"


Tree = Union[Leaf, Node]


class Direction(str, enum.Enum):
    LEFT = "L"
    RIGHT = "R"

    def inverse(self) -> "Direction":
        return Direction.RIGHT if self is Direction.LEFT else Direction.LEFT


class RotationStep(NamedTuple):
    node: int
    direction: Direction

    def to_json(self) -> dict:
        return {"node": self.node, "dir": self.direction.value}


RotationPath = list  # list[RotationStep]


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def parse_tree(text: str) -> Tree:
    """Parse ``Tree := "L" | "(" Tree " " Tree ")"``.

    The whole string must be consumed; a single trailing newline is
    tolerated so lines read from files can be passed directly.
    """
    if text.endswith("\n"):
        text = text[:-1]
    pos = 0
    # explicit stack so very deep combs don't hit the recursion limit
    stack: list[list] = []
    result: Tree | None = None
    n = len(text)
    while True:
        if pos >= n:
            raise ParseError("unexpected end of input", pos)
        ch = text[pos]
        if ch == "L":
            pos += 1
            value: Tree = LEAF
        elif ch == "(":
            stack.append([])
            pos += 1
            continue
        else:
            raise ParseError(f"expected 'L' or '(' but found {ch!r}", pos)
        # reduce completed values
        while True:
            if not stack:
                result = value
                break
            frame = stack[-1]
            frame.append(value)
            if len(frame) == 1:
                if pos >= n or text[pos] != " ":
                    raise ParseError("expected single space", pos)
                pos += 1
                break
            if pos >= n or text[pos] != ")":
                raise ParseError("expected ')'", pos)
            pos += 1
            stack.pop()
            value = Node(frame[0], frame[1])
        if result is not None:
            break
    if pos != n:
        raise ParseError("trailing characters", pos)
    return result


def serialize_tree(t: Tree) -> str:
    parts: list[str] = []
    stack: list = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif item is LEAF:
            parts.append("L")
        else:
            stack.extend((")", item.right, " ", item.left))
            parts.append("(")
    return "".join(parts)


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------

def internal_count(t: Tree) -> int:
    if t is LEAF:
        return 0
    return 1 + internal_count(t.left) + internal_count(t.right)


def height(t: Tree) -> int:
    """Number of internal nodes on a longest root-to-leaf path."""
    if t is LEAF:
        return 0
    return 1 + max(height(t.left), height(t.right))


def rank(t: Tree) -> int:
    if t is LEAF:
        return 0
    rl, rr = rank(t.left), rank(t.right)
    return rl + 1 if rl == rr else max(rl, rr)


def is_skew(t: Tree) -> bool:
    """True iff every internal node has at least one leaf child."""
    while t is not LEAF:
        if t.left is LEAF:
            t = t.right
        elif t.right is LEAF:
            t = t.left
        else:
            return False
    return True


def rightmost_path_length(t: Tree) -> int:
    count = 0
    while t is not LEAF:
        count += 1
        t = t.right
    return count


def inorder_labels(t: Tree) -> list[int]:
    """In-order sequence of the internal nodes' labels (always ``1..n``)."""
    return list(range(1, internal_count(t) + 1))


def preorder_labels(t: Tree) -> list[int]:
    """Pre-order listing of the in-order labels of the internal nodes."""
    out: list[int] = []

    def walk(node: Tree, offset: int) -> int:
        # returns the number of internal nodes in ``node``
        if node is LEAF:
            return 0
        slot = len(out)
        out.append(0)
        left = walk(node.left, offset)
        out[slot] = offset + left + 1
        right = walk(node.right, offset + left + 1)
        return left + right + 1

    walk(t, 0)
    return out


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def right_comb(n: int) -> Tree:
    t: Tree = LEAF
    for _ in range(n):
        t = Node(LEAF, t)
    return t


def left_comb(n: int) -> Tree:
    t: Tree = LEAF
    for _ in range(n):
        t = Node(t, LEAF)
    return t


def complete_tree(depth: int) -> Tree:
    """Complete tree with ``2**depth`` leaves; its rank and height are ``depth``."""
    t: Tree = LEAF
    for _ in range(depth):
        t = Node(t, t)
    return t


def random_tree(n: int, rng: random.Random | None = None) -> Tree:
    """Uniformly random tree with ``n`` internal nodes (cycle lemma)."""
    rng = rng or random.Random()
    word = [1] * n + [-1] * (n + 1)
    rng.shuffle(word)
    total, lowest, start = 0, 0, 0
    for k, step in enumerate(word):
        total += step
        if total < lowest:
            lowest, start = total, k + 1
    word = word[start:] + word[:start]
    # word is now a pre-order code: +1 internal, -1 leaf
    stack: list[list] = []
    value: Tree | None = None
    for step in word:
        if step == 1:
            stack.append([])
            continue
        value = LEAF
        while stack:
            stack[-1].append(value)
            if len(stack[-1]) < 2:
                break
            left, right = stack.pop()
            value = Node(left, right)
        else:
            break
    assert value is not None
    return value


# ---------------------------------------------------------------------------
# rotation
# ---------------------------------------------------------------------------

def _rotate_here(t: Node, direction: Direction) -> Node:
    if direction is Direction.RIGHT:
        b = t.left
        if b is LEAF:
            raise IllegalRotation("right rotation needs an internal left child")
        return Node(b.left, Node(b.right, t.right))
    b = t.right
    if b is LEAF:
        raise IllegalRotation("left rotation needs an internal right child")
    return Node(Node(t.left, b.left), b.right)


def rotate(t: Tree, step: RotationStep | tuple) -> Tree:
    """Apply one rotation at in-order index ``step.node``.

    Raises :class:`IndexOutOfRange` if the index does not name an internal
    node and :class:`IllegalRotation` if the required child is a leaf.
    """
    node, direction = step
    direction = Direction(direction)
    if node < 1:
        raise IndexOutOfRange(f"node index {node} < 1")

    def go(sub: Tree, i: int) -> Tree:
        if sub is LEAF:
            raise IndexOutOfRange(f"node index {node} exceeds internal count")
        left = internal_count(sub.left)
        if i <= left:
            return Node(go(sub.left, i), sub.right)
        if i == left + 1:
            return _rotate_here(sub, direction)
        return Node(sub.left, go(sub.right, i - left - 1))

    return go(t, node)


def subtree_at(t: Tree, node: int) -> tuple[Node, int]:
    """Return the subtree rooted at in-order index ``node`` and its label offset.

    The subtree's internal labels are ``offset+1 .. offset+size``.
    """
    offset = 0
    sub = t
    i = node
    while sub is not LEAF:
        left = internal_count(sub.left)
        if i <= left:
            sub = sub.left
        elif i == left + 1:
            return sub, offset
        else:
            offset += left + 1
            i -= left + 1
            sub = sub.right
    raise IndexOutOfRange(f"node index {node} out of range")


def inverse_step(t: Tree, step: RotationStep) -> RotationStep:
    """The step that undoes ``step`` once ``step`` has been applied to ``t``."""
    node, direction = step
    direction = Direction(direction)
    sub, _ = subtree_at(t, node)
    if direction is Direction.RIGHT:
        b = sub.left
        if b is LEAF:
            raise IllegalRotation("right rotation needs an internal left child")
        return RotationStep(node - internal_count(b.right) - 1, Direction.LEFT)
    b = sub.right
    if b is LEAF:
        raise IllegalRotation("left rotation needs an internal right child")
    return RotationStep(node + internal_count(b.left) + 1, Direction.RIGHT)


def apply_path(t: Tree, path: Sequence[RotationStep]) -> Tree:
    for step in path:
        t = rotate(t, step)
    return t


def replay(t: Tree, path: Sequence[RotationStep]) -> Iterator[Tree]:
    """Yield ``t`` and every tree reached along ``path``."""
    yield t
    for step in path:
        t = rotate(t, step)
        yield t


def reverse_path(t: Tree, path: Sequence[RotationStep]) -> RotationPath:
    """Given ``path`` from ``t`` to ``u``, return a path from ``u`` back to ``t``."""
    inverses = []
    for step in path:
        inverses.append(inverse_step(t, step))
        t = rotate(t, step)
    inverses.reverse()
    return inverses


def rotation_neighbors(t: Tree) -> list[tuple[RotationStep, Tree]]:
    """All single rotations of ``t``, by ascending node index, Left before Right."""
    out: list[tuple[RotationStep, Tree]] = []

    def go(sub: Tree, offset: int, rebuild) -> None:
        if sub is LEAF:
            return
        left = internal_count(sub.left)
        here = offset + left + 1
        go(sub.left, offset, lambda x: rebuild(Node(x, sub.right)))
        if sub.right is not LEAF:
            out.append((RotationStep(here, Direction.LEFT),
                        rebuild(_rotate_here(sub, Direction.LEFT))))
        if sub.left is not LEAF:
            out.append((RotationStep(here, Direction.RIGHT),
                        rebuild(_rotate_here(sub, Direction.RIGHT))))
        go(sub.right, here, lambda x: rebuild(Node(sub.left, x)))

    go(t, 0, lambda x: x)
    out.sort(key=lambda item: (item[0].node, item[0].direction is Direction.RIGHT))
    return out


def leaf_intervals(t: Tree) -> dict[tuple[int, int], int]:
    """Map each internal node's leaf span ``(first, last)`` to its in-order index.

    Leaves are numbered ``0..n`` left to right.
    """
    spans: dict[tuple[int, int], int] = {}

    def go(sub: Tree, first_leaf: int, offset: int) -> int:
        # returns the number of leaves under ``sub``
        if sub is LEAF:
            return 1
        nl = go(sub.left, first_leaf, offset)
        here = offset + nl  # internal nodes in left subtree == leaves - 1
        nr = go(sub.right, first_leaf + nl, here)
        spans[(first_leaf, first_leaf + nl + nr - 1)] = here
        return nl + nr

    go(t, 0, 0)
    return spans


def common_nodes(t1: Tree, t2: Tree) -> set[tuple[int, int]]:
    """Pairs of internal nodes whose subtrees cover the same leaf interval."""
    if internal_count(t1) != internal_count(t2):
        raise SizeMismatch("trees have different internal counts")
    s1, s2 = leaf_intervals(t1), leaf_intervals(t2)
    return {(s1[span], s2[span]) for span in s1.keys() & s2.keys()}
