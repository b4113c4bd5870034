"""Bivariate tree polynomials.

Each root-to-leaf path contributes ``x^a y^b`` where ``a`` counts left edges
and ``b`` right edges.  The Wiley-Grey test decides which polynomials arise
from trees.  On skew trees the map is injective, and every level of a skew
tree is readable from the ratio of consecutive monomials, which is what the
skew routines below work with.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .encodings import skew_tree_to_string, string_to_skew_tree
from .errors import (
    DegreeMismatch,
    EmptyTree,
    NegativeCoefficient,
    NotAngleNode,
    NotSkewPolynomial,
    RotkitError,
)
from .tree import LEAF, Direction, Node, RotationStep, Tree, rotate

Monomial = tuple[int, int]


class TreePolynomial:
    """Sparse polynomial with positive integer coefficients, keyed by ``(a, b)``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, int] = {}
        for (a, b), c in items:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in x^{a} y^{b}")
            if c < 0:
                raise NegativeCoefficient(f"coefficient {c} of x^{a} y^{b}")
            if c:
                clean[(a, b)] = clean.get((a, b), 0) + c
        self._terms = clean
        self._hash = None

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def __getitem__(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, TreePolynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        return f"TreePolynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    @property
    def degree(self) -> int:
        return max((a + b for a, b in self._terms), default=0)

    def coefficient_sum(self) -> int:
        return sum(self._terms.values())

    def evaluate(self, x: int, y: int) -> int:
        return sum(c * x ** a * y ** b for (a, b), c in self._terms.items())

    def ordered_terms(self) -> list[tuple[Monomial, int]]:
        """Ascending total degree, then decreasing power of ``x``."""
        return sorted(self._terms.items(), key=lambda item: (sum(item[0]), -item[0][0]))

    def to_json(self) -> str:
        return json.dumps([[a, b, c] for (a, b), c in self.ordered_terms()])

    @classmethod
    def from_json(cls, text: str) -> "TreePolynomial":
        return cls(((a, b), c) for a, b, c in json.loads(text))


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def _format_term(a: int, b: int, c: int) -> str:
    factors = []
    if a:
        factors.append("x" if a == 1 else f"x^{a}")
    if b:
        factors.append("y" if b == 1 else f"y^{b}")
    if c != 1 or not factors:
        factors.insert(0, str(c))
    return "*".join(factors)


def format_polynomial(p: TreePolynomial) -> str:
    if not len(p):
        return "0"
    return " + ".join(_format_term(a, b, c) for (a, b), c in p.ordered_terms())


_FACTOR = re.compile(r"\s*(?:(\d+)|([xy])(?:\^(\d+))?)\s*")


def parse_polynomial(text: str) -> TreePolynomial:
    """Parse the ``c*x^a*y^b + ...`` form produced by :func:`format_polynomial`."""
    terms: Counter = Counter()
    text = text.strip()
    if not text:
        raise RotkitError("empty polynomial")
    for raw in text.split("+"):
        coeff, a, b = 1, 0, 0
        factors = raw.split("*")
        for factor in factors:
            m = _FACTOR.fullmatch(factor)
            if not m:
                raise RotkitError(f"cannot parse term {raw.strip()!r}")
            number, var, power = m.groups()
            if number is not None:
                coeff *= int(number)
            elif var == "x":
                a += int(power or 1)
            else:
                b += int(power or 1)
        terms[(a, b)] += coeff
    return TreePolynomial(terms)


# ---------------------------------------------------------------------------
# trees to polynomials
# ---------------------------------------------------------------------------

def tree_to_polynomial(t: Tree) -> TreePolynomial:
    if t is LEAF:
        raise EmptyTree("tree polynomials need at least one internal node")
    counts: Counter = Counter()
    stack = [(t, 0, 0)]
    while stack:
        node, a, b = stack.pop()
        if node is LEAF:
            counts[(a, b)] += 1
        else:
            stack.append((node.left, a + 1, b))
            stack.append((node.right, a, b + 1))
    return TreePolynomial(counts)


def coefficient_vector(p: TreePolynomial, d: int | None = None) -> list[int]:
    """Coefficients by decreasing total degree, then decreasing power of ``x``."""
    d = p.degree if d is None else d
    return [p[(a, k - a)] for k in range(d, -1, -1) for a in range(k, -1, -1)]


def wiley_grey_matrix(d: int) -> list[list[int]]:
    """The ``(d+1) x (d+1)(d+2)/2`` block matrix ``[A^(d) | ... | A^(0)]``."""
    rows = [[] for _ in range(d + 1)]
    for k in range(d, -1, -1):
        for i in range(1, d + 2):
            for j in range(1, k + 2):
                rows[i - 1].append(comb(d - k, i - j) if j <= i <= j + d - k else 0)
    return rows


def wiley_grey_target(d: int) -> list[int]:
    return [comb(d, i) for i in range(d + 1)]


def wiley_grey_test(p: TreePolynomial) -> bool:
    """Whether ``p`` is the polynomial of some full binary tree."""
    d = p.degree
    if d < 1:
        return False
    v = coefficient_vector(p, d)
    matrix = wiley_grey_matrix(d)
    product = [sum(a * c for a, c in zip(row, v)) for row in matrix]
    if product != wiley_grey_target(d):
        return False
    terms = p.terms
    for (a, b), c in terms.items():
        # paths to x^a y^b not already ended by a leaf strictly above it
        free = comb(a + b, a)
        for (i, j), cij in terms.items():
            if i <= a and j <= b and i + j < a + b:
                free -= cij * comb(a + b - i - j, a - i)
        if c > free:
            return False
    return True


# ---------------------------------------------------------------------------
# skew polynomials
# ---------------------------------------------------------------------------

def _levels(p: TreePolynomial) -> tuple[list[Monomial], list[Monomial]] | None:
    """``(m_1..m_{n-1}, [m_n, m_{n+1}])`` if every degree has the right term count."""
    if any(c != 1 for c in p.terms.values()):
        return None
    n = p.degree
    by_degree: dict[int, list[Monomial]] = {}
    for mono in p.terms:
        by_degree.setdefault(sum(mono), []).append(mono)
    if n < 1 or len(p) != n + 1 or len(by_degree.get(n, ())) != 2:
        return None
    if any(len(by_degree.get(k, ())) != 1 for k in range(1, n)):
        return None
    singles = [by_degree[k][0] for k in range(1, n)]
    last = sorted(by_degree[n], key=lambda m: -m[0])
    return singles, last


def _gcd_degree(m1: Monomial, m2: Monomial) -> int:
    return min(m1[0], m2[0]) + min(m1[1], m2[1])


def skew_polynomial_conditions(p: TreePolynomial) -> bool:
    """The three structural conditions on degrees and consecutive gcds.

    These are necessary for ``p`` to come from a skew tree but not
    sufficient: ``x + x^2 + x*y`` satisfies them.
    :func:`is_skew_polynomial` is the exact test.
    """
    levels = _levels(p)
    if levels is None:
        return False
    singles, (mn, mn1) = levels
    n = p.degree
    for i in range(2, n):
        if _gcd_degree(singles[i - 1], singles[i - 2]) not in (i - 1, i - 2):
            return False

    def quotient(m: Monomial, var: int) -> Monomial | None:
        out = list(m)
        out[var] -= 1
        return tuple(out) if out[var] >= 0 else None

    for u, w in ((quotient(mn, 0), quotient(mn1, 1)), (quotient(mn, 1), quotient(mn1, 0))):
        if u is not None and w is not None and _gcd_degree(u, w) == n - 1:
            return True
    return False


def _skew_bits(p: TreePolynomial) -> str | None:
    """Leaf side of every level (``0`` = left leaf), read off monomial ratios."""
    levels = _levels(p)
    if levels is None:
        return None
    singles, _ = levels
    n = p.degree
    if n == 1:
        return "0"
    bits = []
    spine = (0, 0)  # monomial of the path to the current spine node
    for mono in singles:
        # leaf on the left is spine*x, on the right spine*y
        if mono == (spine[0] + 1, spine[1]):
            bits.append("0")
            spine = (spine[0], spine[1] + 1)
        elif mono == (spine[0], spine[1] + 1):
            bits.append("1")
            spine = (spine[0] + 1, spine[1])
        else:
            return None
    bits.append("1" if bits[-1] == "0" else "0")
    return "".join(bits)


def is_skew_polynomial(p: TreePolynomial) -> bool:
    """Whether ``p`` is the polynomial of a skew tree."""
    if not skew_polynomial_conditions(p):
        return False
    bits = _skew_bits(p)
    return bits is not None and tree_to_polynomial(string_to_skew_tree(bits)) == p


@lru_cache(maxsize=1 << 14)
def skew_polynomial_to_tree(p: TreePolynomial) -> Tree:
    """The unique skew tree whose polynomial is ``p``."""
    if not skew_polynomial_conditions(p):
        raise NotSkewPolynomial(f"{p} fails the skew polynomial conditions")
    bits = _skew_bits(p)
    if bits is None:
        raise NotSkewPolynomial(f"{p}: consecutive monomials do not chain")
    t = string_to_skew_tree(bits)
    if tree_to_polynomial(t) != p:
        raise NotSkewPolynomial(f"{p} is not the polynomial of a skew tree")
    return t


def skew_polynomial_string(p: TreePolynomial) -> str:
    return skew_tree_to_string(skew_polynomial_to_tree(p))


def level_monomials(p: TreePolynomial) -> list[Monomial]:
    """``p_1 .. p_{n+1}``: ascending degree, the two top terms by decreasing x-power."""
    levels = _levels(p)
    if levels is None:
        raise NotSkewPolynomial(f"{p} does not have one term per level")
    singles, last = levels
    return singles + last


def _is_angle_bits(bits: str, i: int) -> bool:
    n = len(bits)
    return 1 <= i <= n - 1 and (i == n - 1 or bits[i - 1] != bits[i])


def is_angle_level(p: TreePolynomial, i: int) -> bool:
    """Whether rotating the spine node at level ``i`` keeps the tree skew.

    Level ``n-1`` always qualifies and level ``n`` never does.
    """
    return _is_angle_bits(skew_polynomial_string(p), i)


def do_rotation(p: TreePolynomial, i: int) -> TreePolynomial:
    """Polynomial after the skew rotation at the spine node on level ``i``.

    The rotation swaps the leaf sides of levels ``i`` and ``i+1``.
    """
    t = skew_polynomial_to_tree(p)
    bits = skew_tree_to_string(t)
    if not _is_angle_bits(bits, i):
        raise NotAngleNode(f"level {i} of a {len(bits)}-level skew tree is not an angle node")
    zeros = bits[: i - 1].count("0")
    ones = i - 1 - zeros
    if bits[i - 1] == "0":
        step = RotationStep(1 + zeros, Direction.LEFT)
    else:
        step = RotationStep(len(bits) - ones, Direction.RIGHT)
    out = tree_to_polynomial(rotate(t, step))
    literal = monomial_rotation_update(p, i)
    assert literal is None or literal == out
    return out


def monomial_rotation_update(p: TreePolynomial, i: int) -> TreePolynomial | None:
    """Monomial-level form of the rotation at level ``i`` (``2 <= i <= n-2``).

    Applies when ``m_i / m_{i-1}`` is ``y^2/x`` or ``x^2/y``; returns ``None``
    otherwise.  In the second case the new ``m_i`` is ``m_{i+1}/y``.  The
    result is only meaningful when ``i`` is an angle level; elsewhere it is
    not a skew polynomial.
    """
    mono = level_monomials(p)
    n = p.degree
    if not 2 <= i <= n - 2:
        return None
    prev, cur, nxt = mono[i - 2], mono[i - 1], mono[i]
    ratio = (cur[0] - prev[0], cur[1] - prev[1])
    if ratio == (-1, 2):
        new_cur, new_nxt = (nxt[0] - 1, nxt[1]), (cur[0], cur[1] + 1)
    elif ratio == (2, -1):
        new_cur, new_nxt = (nxt[0], nxt[1] - 1), (cur[0] + 1, cur[1])
    else:
        return None
    if min(new_cur) < 0:
        return None
    terms = p.terms
    del terms[cur], terms[nxt]
    terms[new_cur] = terms.get(new_cur, 0) + 1
    terms[new_nxt] = terms.get(new_nxt, 0) + 1
    return TreePolynomial(terms)


def poly_rotation_distance(p: TreePolynomial, q: TreePolynomial) -> int:
    """Skew rotation distance computed on skew polynomials.

    Fix the lowest level whose monomials differ by rotating at angle
    levels of ``p`` only, bubbling the nearest level whose leaf side matches
    ``q`` up to it.
    """
    for poly in (p, q):
        if not is_skew_polynomial(poly):
            raise NotSkewPolynomial(f"{poly} is not a skew polynomial")
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    n = p.degree
    target_bits = _skew_bits(q)
    count = 0
    while p != q:
        mp, mq = level_monomials(p), level_monomials(q)
        i = next(k for k in range(n + 1) if mp[k] != mq[k]) + 1
        bits = _skew_bits(p)
        j = next(k for k in range(i + 1, n + 1) if bits[k - 1] == target_bits[i - 1])
        for level in range(j - 1, i - 1, -1):
            p = do_rotation(p, level)
            count += 1
    return count


def find_duplicate_polynomial_trees(n: int) -> tuple[Tree, Tree]:
    """Two distinct trees with ``n >= 4`` internal nodes and equal polynomials.

    Take a tree on ``n - 1`` nodes with two leaves carrying the same monomial
    and grow an internal node at each of them in turn.
    """
    if n < 4:
        raise ValueError("distinct trees with equal polynomials need n >= 4")
    from .oracle import enumerate_trees

    base = _base_with_repeat(n - 1, enumerate_trees if n - 1 <= 8 else None)
    leaves = _leaf_monomials(base)
    seen: dict[Monomial, int] = {}
    for k, mono in enumerate(leaves):
        if mono in seen:
            first, second = seen[mono], k
            break
        seen[mono] = k
    t1 = _grow_leaf(base, first)
    t2 = _grow_leaf(base, second)
    assert t1 != t2 and tree_to_polynomial(t1) == tree_to_polynomial(t2)
    return t1, t2


def _base_with_repeat(m: int, enumerate_fn) -> Tree:
    if enumerate_fn is not None:
        for t in enumerate_fn(m):
            leaves = _leaf_monomials(t)
            if len(set(leaves)) < len(leaves):
                return t
    # complete tree on three nodes has x*y twice; pad it with a right comb
    t: Tree = Node(Node(LEAF, LEAF), Node(LEAF, LEAF))
    for _ in range(m - 3):
        t = Node(LEAF, t)
    return t


def _leaf_monomials(t: Tree) -> list[Monomial]:
    """Monomial of each leaf, left to right."""
    out: list[Monomial] = []

    def go(sub: Tree, a: int, b: int) -> None:
        if sub is LEAF:
            out.append((a, b))
            return
        go(sub.left, a + 1, b)
        go(sub.right, a, b + 1)

    go(t, 0, 0)
    return out


def _grow_leaf(t: Tree, k: int) -> Tree:
    """Replace the ``k``-th leaf (0-based, left to right) by an internal node."""
    def go(sub: Tree, k: int) -> tuple[Tree, int]:
        # returns (new subtree, leaves remaining to skip); k < 0 means done
        if sub is LEAF:
            if k == 0:
                return Node(LEAF, LEAF), -1
            return sub, k - 1
        left, k = go(sub.left, k)
        if k < 0:
            return Node(left, sub.right), k
        right, k = go(sub.right, k)
        return Node(left, right), k

    return go(t, k)[0]
