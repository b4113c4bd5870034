"""Invariant suites run by ``rotkit verify``.

Each check declares the operations it exercises, so the registry can report
which public operations a run actually touched.  Checks are capped at a size
where they stay cheap; ``max_n`` only ever lowers the cap.
"""

from __future__ import annotations

import contextlib
import io
import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable

from . import encodings as enc
from . import polynomials as poly
from . import rank_paths as rp
from . import skew as sk
from . import tree as tr
from .oracle import (
    TreeFilter,
    all_pairs_distances,
    bfs_distance,
    catalan,
    distance_to_set,
    enumerate_trees,
)

OPERATIONS = (
    # tree core
    "parse_tree", "serialize_tree", "internal_count", "height", "rank", "is_skew",
    "rotate", "rotation_neighbors", "common_nodes", "rightmost_path_length",
    # encodings
    "tree_to_permutation", "permutation_to_tree", "is_tree_permutation",
    "is_skew_permutation", "skew_tree_to_string", "string_to_skew_tree",
    "apply_transposition", "is_one_transposition", "induced_transposition",
    "is_skew_transposition_pair",
    # skew distance
    "binary_skew_rotation", "skew_distance", "nearest_skew", "to_right_comb",
    # rank paths
    "reduce_rank_by_one", "rank_bounded_path", "gadget_rank", "gadget_height",
    # oracle
    "enumerate_trees", "bfs_distance", "all_pairs_distances",
    # polynomials
    "tree_to_polynomial", "wiley_grey_test", "is_skew_polynomial",
    "skew_polynomial_to_tree", "poly_rotation_distance", "do_rotation",
    "find_duplicate_polynomial_trees",
    # cli
    "cmd_encode", "cmd_distance", "cmd_construct", "cmd_verify",
)

SUITES = ("permutations", "transpositions", "skew", "rank", "height",
          "polynomials", "graph", "cli")


class CheckFailed(Exception):
    pass


def expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    covers: tuple[str, ...]
    cap: int
    low: int
    fn: Callable[[int], str]


@dataclass
class CheckResult:
    check: Check
    status: str  # "pass", "fail" or "skip"
    detail: str

    def line(self) -> str:
        return f"{self.status.upper():4} {self.check.suite}/{self.check.name}: {self.detail}"


REGISTRY: list[Check] = []


def check(suite: str, covers: Iterable[str], cap: int, low: int = 1):
    """Register ``fn(n)``; it runs when ``min(max_n, cap) >= low``."""
    covers = tuple(covers)
    unknown = set(covers) - set(OPERATIONS)
    assert not unknown, unknown

    def wrap(fn: Callable[[int], str]) -> Callable[[int], str]:
        REGISTRY.append(Check(fn.__name__, suite, covers, cap, low, fn))
        return fn

    return wrap


def skew_strings(n: int) -> list[str]:
    if n == 1:
        return ["0"]
    return ["".join(b) + ("1" if b[-1] == "0" else "0")
            for b in itertools.product("01", repeat=n - 1)]


def labelled_rotation(t: tr.Tree, step: tr.RotationStep) -> tuple:
    """Rotate a copy of ``t`` that carries explicit labels; return it unlabelled with its labels."""
    counter = itertools.count(1)

    def label(sub):
        if sub is tr.LEAF:
            return None
        left = label(sub.left)
        here = next(counter)
        return (left, here, label(sub.right))

    def rot(node):
        left, here, right = node
        if here == step.node:
            if step.direction is tr.Direction.RIGHT:
                b_left, b, b_right = left
                return (b_left, b, (b_right, here, right))
            b_left, b, b_right = right
            return ((left, here, b_left), b, b_right)
        if step.node < here:
            return (rot(left), here, right)
        return (left, here, rot(right))

    def strip(node):
        return tr.LEAF if node is None else tr.Node(strip(node[0]), strip(node[2]))

    def inorder(node):
        return [] if node is None else inorder(node[0]) + [node[1]] + inorder(node[2])

    out = rot(label(t))
    return strip(out), inorder(out)


def _replay_ok(t: tr.Tree, path, target: tr.Tree, keep: Callable[[tr.Tree], bool]) -> bool:
    trees = list(tr.replay(t, path))
    return trees[-1] == target and all(keep(u) for u in trees)


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

@check("permutations", ["tree_to_permutation", "permutation_to_tree", "is_tree_permutation",
                        "enumerate_trees"], cap=8)
def tree_permutation_roundtrip(max_n: int) -> str:
    for n in range(1, max_n + 1):
        trees = enumerate_trees(n)
        expect(len(trees) == catalan(n), f"n={n}: {len(trees)} trees")
        for t in trees:
            sigma = enc.tree_to_permutation(t)
            expect(enc.permutation_to_tree(sigma) == t, f"round trip fails on {tr.serialize_tree(t)}")
            expect(enc.is_tree_permutation(sigma) and enc.is_tree_permutation(sigma, fast=True),
                   f"{sigma} rejected")
    return f"n<={max_n}"


@check("permutations", ["is_tree_permutation", "tree_to_permutation"], cap=7)
def pattern_avoiders_are_trees(max_n: int) -> str:
    counts = []
    for n in range(1, max_n + 1):
        encoded = {enc.tree_to_permutation(t) for t in enumerate_trees(n)}
        avoiders = set()
        for sigma in itertools.permutations(range(1, n + 1)):
            slow = enc.is_tree_permutation(sigma)
            expect(slow == enc.is_tree_permutation(sigma, fast=True), f"scans disagree on {sigma}")
            if slow:
                avoiders.add(sigma)
        expect(avoiders == encoded, f"n={n}: avoiders differ from tree permutations")
        counts.append(len(avoiders))
    return "counts " + ",".join(map(str, counts))


@check("permutations", ["is_skew_permutation", "is_skew", "skew_tree_to_string",
                        "string_to_skew_tree"], cap=8)
def skew_encodings(max_n: int) -> str:
    for n in range(1, max_n + 1):
        for t in enumerate_trees(n):
            sigma = enc.tree_to_permutation(t)
            expect(enc.is_skew_permutation(sigma) == tr.is_skew(t), f"skew mismatch on {sigma}")
        strings = skew_strings(n)
        trees = [enc.string_to_skew_tree(s) for s in strings]
        expect(len(set(trees)) == len(strings), f"n={n}: strings collide")
        for s, t in zip(strings, trees):
            expect(tr.is_skew(t) and enc.skew_tree_to_string(t) == s, f"string {s} fails")
    return f"n<={max_n}"


# ---------------------------------------------------------------------------
# transpositions
# ---------------------------------------------------------------------------

@check("transpositions", ["rotation_neighbors", "induced_transposition", "is_one_transposition",
                          "apply_transposition"], cap=7)
def induced_transpositions(max_n: int) -> str:
    counts = []
    for n in range(1, max_n + 1):
        seen = set()
        for t in enumerate_trees(n):
            sigma = enc.tree_to_permutation(t)
            for _, u in tr.rotation_neighbors(t):
                delta = enc.induced_transposition(t, u)
                expect(delta is not None and enc.is_one_transposition(delta),
                       f"{tr.serialize_tree(t)} -> {tr.serialize_tree(u)}: {delta}")
                expect(enc.apply_transposition(sigma, delta) == enc.tree_to_permutation(u),
                       f"{delta} does not map the permutations")
                seen.add(delta)
        expect(len(seen) == (n - 1) ** 2, f"n={n}: {len(seen)} distinct transpositions")
        expect(seen == set(enc.one_transpositions(n)), f"n={n}: not every 1-transposition occurs")
        counts.append(len(seen))
    return "counts " + ",".join(map(str, counts))


@check("transpositions", ["is_skew_transposition_pair"], cap=8)
def skew_transposition_pairs(max_n: int) -> str:
    pairs = 0
    for n in range(1, max_n + 1):
        skew_trees = [t for t in enumerate_trees(n) if tr.is_skew(t)]
        members = set(skew_trees)
        perms = {t: enc.tree_to_permutation(t) for t in skew_trees}
        for t in skew_trees:
            adjacent = {u for _, u in tr.rotation_neighbors(t) if u in members}
            for u in skew_trees:
                flag = enc.is_skew_transposition_pair(perms[t], perms[u])
                expect(flag == (u in adjacent),
                       f"{perms[t]} vs {perms[u]}: swap test {flag}")
                pairs += flag
    return f"{pairs} skew rotations"


# ---------------------------------------------------------------------------
# skew distance
# ---------------------------------------------------------------------------

@check("skew", ["binary_skew_rotation", "skew_distance", "all_pairs_distances"], cap=8)
def skew_algorithm_vs_oracle(max_n: int) -> str:
    total = 0
    for n in range(1, max_n + 1):
        table = all_pairs_distances(n, TreeFilter.skew_only())
        for t1, row in zip(table.trees, table.rows):
            a = enc.skew_tree_to_string(t1)
            for t2, d in zip(table.trees, row):
                count, path = sk.binary_skew_rotation(a, enc.skew_tree_to_string(t2))
                expect(count == d == len(path), f"{a} -> {enc.skew_tree_to_string(t2)}: {count} vs {d}")
                expect(_replay_ok(t1, path, t2, tr.is_skew), "path leaves the skew trees")
                expect(sk.skew_distance(t1, t2)[0] == d, "skew_distance disagrees")
                total += 1
    return f"{total} pairs"


@check("skew", ["skew_distance", "bfs_distance"], cap=12, low=2)
def comb_distance(max_n: int) -> str:
    for n in range(2, max_n + 1):
        d, _ = sk.skew_distance(tr.right_comb(n), tr.left_comb(n))
        expect(d == n * (n - 1) // 2, f"n={n}: comb distance {d}")
        if n <= 8:
            oracle, _ = bfs_distance(tr.right_comb(n), tr.left_comb(n), TreeFilter.skew_only())
            expect(oracle == d, f"n={n}: oracle says {oracle}")
    return f"n=2..{max_n}"


@check("skew", ["nearest_skew", "height"], cap=8)
def nearest_skew_distance(max_n: int) -> str:
    for n in range(1, max_n + 1):
        dist = distance_to_set(n, tr.is_skew)
        for t in enumerate_trees(n):
            d, witness, path = sk.nearest_skew(t)
            expect(d == dist[t] == n - tr.height(t) == len(path),
                   f"{tr.serialize_tree(t)}: {d} vs {dist[t]}")
            expect(tr.is_skew(witness) and tr.apply_path(t, path) == witness, "bad witness")
    return f"n<={max_n}"


@check("skew", ["to_right_comb", "rightmost_path_length"], cap=8)
def right_comb_distance(max_n: int) -> str:
    for n in range(1, max_n + 1):
        comb = tr.right_comb(n)
        dist = distance_to_set(n, lambda t: t == comb)
        for t in enumerate_trees(n):
            d, path = sk.to_right_comb(t)
            expect(d == dist[t] == n - tr.rightmost_path_length(t) == len(path),
                   f"{tr.serialize_tree(t)}: {d} vs {dist[t]}")
            expect(tr.apply_path(t, path) == comb, "path misses the comb")
    return f"n<={max_n}"


# ---------------------------------------------------------------------------
# rank
# ---------------------------------------------------------------------------

@check("rank", ["reduce_rank_by_one", "rank"], cap=9, low=3)
def rank_reduction(max_n: int) -> str:
    checked = 0
    for n in range(3, max_n + 1):
        for t in enumerate_trees(n):
            r = tr.rank(t)
            if r < 2:
                continue
            out, path = rp.reduce_rank_by_one(t)
            expect(tr.rank(out) == r - 1, f"{tr.serialize_tree(t)}: rank {tr.rank(out)}")
            expect(_replay_ok(t, path, out, lambda u: tr.rank(u) <= r), "rank exceeded")
            expect(len(path) <= rp.reduction_bound(n), f"path of {len(path)} steps")
            checked += 1
    return f"{checked} trees"


@check("rank", ["rank_bounded_path"], cap=10, low=2)
def rank_bounded_paths(max_n: int) -> str:
    rng = random.Random(20240601)
    for _ in range(50):
        n = rng.randint(2, max_n)
        t1, t2 = tr.random_tree(n, rng), tr.random_tree(n, rng)
        r1, r2 = tr.rank(t1), tr.rank(t2)
        path = rp.rank_bounded_path(t1, t2)
        expect(_replay_ok(t1, path, t2, lambda u: tr.rank(u) <= max(r1, r2)), "invalid path")
        expect(len(path) <= rp.rank_path_bound(n, r1, r2), f"path of {len(path)} steps")
    return "50 random pairs"


@check("rank", ["gadget_rank", "bfs_distance"], cap=3)
def rank_gadget_faithful(max_n: int) -> str:
    pairs = 0
    for n in range(1, max_n + 1):
        trees = enumerate_trees(n)
        for t1 in trees:
            g1 = rp.gadget_rank(t1)
            for t2 in trees:
                g2 = rp.gadget_rank(t2)
                bound = TreeFilter.rank_at_most(max(tr.rank(g1), tr.rank(g2)))
                plain, _ = bfs_distance(t1, t2)
                gadget, _ = bfs_distance(g1, g2, bound)
                expect(plain == gadget, f"n={n}: {plain} vs {gadget}")
                pairs += 1
    return f"{pairs} pairs"


# ---------------------------------------------------------------------------
# height
# ---------------------------------------------------------------------------

@check("height", ["gadget_height", "bfs_distance"], cap=4)
def height_gadget_faithful(max_n: int) -> str:
    pairs = 0
    for n in range(1, max_n + 1):
        trees = enumerate_trees(n)
        for t1 in trees:
            g1 = rp.gadget_height(t1)
            for t2 in trees:
                g2 = rp.gadget_height(t2)
                bound = TreeFilter.height_at_most(max(tr.height(g1), tr.height(g2)))
                plain, _ = bfs_distance(t1, t2)
                gadget, _ = bfs_distance(g1, g2, bound)
                expect(plain == gadget, f"n={n}: {plain} vs {gadget}")
                pairs += 1
    return f"{pairs} pairs"


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

@check("polynomials", ["tree_to_polynomial", "wiley_grey_test"], cap=7)
def wiley_grey_accepts(max_n: int) -> str:
    for n in range(1, max_n + 1):
        for t in enumerate_trees(n):
            p = poly.tree_to_polynomial(t)
            expect(p.evaluate(1, 1) == n + 1, f"{p} does not count {n + 1} leaves")
            expect(poly.wiley_grey_test(p), f"{p} rejected")
    return f"n<={max_n}"


@check("polynomials", ["wiley_grey_test"], cap=5)
def wiley_grey_rejects(max_n: int) -> str:
    expect(not poly.wiley_grey_test(poly.parse_polynomial("x + x^2 + y^2")), "x + x^2 + y^2 accepted")
    tried = 0
    for n in range(1, max_n + 1):
        for t in enumerate_trees(n):
            p = poly.tree_to_polynomial(t)
            d = p.degree
            for a in range(d + 1):
                for b in range(d + 1 - a):
                    terms = p.terms
                    terms[(a, b)] = terms.get((a, b), 0) + 1
                    q = poly.TreePolynomial(terms)
                    expect(not poly.wiley_grey_test(q), f"{q} accepted")
                    tried += 1
    return f"{tried} perturbations"


@check("polynomials", ["is_skew_polynomial", "skew_polynomial_to_tree"], cap=10)
def skew_polynomial_roundtrip(max_n: int) -> str:
    for n in range(1, max_n + 1):
        seen = set()
        for s in skew_strings(n):
            t = enc.string_to_skew_tree(s)
            p = poly.tree_to_polynomial(t)
            expect(p not in seen, f"{p} repeats")
            seen.add(p)
            expect(poly.is_skew_polynomial(p) and poly.skew_polynomial_to_tree(p) == t,
                   f"{p} does not invert")
    return f"n<={max_n}"


@check("polynomials", ["poly_rotation_distance", "do_rotation"], cap=8)
def polynomial_distance(max_n: int) -> str:
    pairs = 0
    for n in range(1, max_n + 1):
        strings = skew_strings(n)
        polys = {s: poly.tree_to_polynomial(enc.string_to_skew_tree(s)) for s in strings}
        for s, p in polys.items():
            for i in range(1, n):
                if not poly.is_angle_level(p, i):
                    continue
                q = poly.do_rotation(p, i)
                expect(q.coefficient_sum() == n + 1, "rotation changed the leaf count")
                expect(poly.do_rotation(q, i) == p, f"rotation at level {i} of {p} is not undone")
        for a in strings:
            for b in strings:
                d = poly.poly_rotation_distance(polys[a], polys[b])
                expect(d == sk.binary_skew_rotation(a, b)[0], f"{a} -> {b}: {d}")
                pairs += 1
    return f"{pairs} pairs"


@check("polynomials", ["find_duplicate_polynomial_trees"], cap=8, low=4)
def duplicate_polynomials(max_n: int) -> str:
    for n in range(4, max_n + 1):
        t1, t2 = poly.find_duplicate_polynomial_trees(n)
        expect(t1 != t2 and tr.internal_count(t1) == tr.internal_count(t2) == n, f"n={n}: bad pair")
        expect(poly.tree_to_polynomial(t1) == poly.tree_to_polynomial(t2), f"n={n}: polynomials differ")
    return f"n=4..{max_n}"


# ---------------------------------------------------------------------------
# graph
# ---------------------------------------------------------------------------

@check("graph", ["parse_tree", "serialize_tree", "internal_count", "rotate", "rotation_neighbors"],
       cap=8)
def rotation_graph_shape(max_n: int) -> str:
    for n in range(1, max_n + 1):
        for t in enumerate_trees(n):
            expect(tr.parse_tree(tr.serialize_tree(t)) == t, "text round trip fails")
            neighbours = tr.rotation_neighbors(t)
            expect(len(neighbours) == n - 1, f"{tr.serialize_tree(t)}: {len(neighbours)} neighbours")
            for step, u in neighbours:
                expect(tr.rotate(t, step) == u and tr.internal_count(u) == n, "bad neighbour")
                shape, labels = labelled_rotation(t, step)
                expect(shape == u and labels == list(range(1, n + 1)), "in-order changed")
    return f"n<={max_n}"


@check("graph", ["common_nodes"], cap=8)
def common_node_pairs(max_n: int) -> str:
    for n in range(1, max_n + 1):
        for t in enumerate_trees(n):
            expect(tr.common_nodes(t, t) == {(i, i) for i in range(1, n + 1)}, "identity")
            for _, u in tr.rotation_neighbors(t):
                expect(len(tr.common_nodes(t, u)) == n - 1, "a rotation changes one node")
    return f"n<={max_n}"


@check("graph", ["all_pairs_distances"], cap=8)
def diameter_bound(max_n: int) -> str:
    found = []
    for n in range(1, max_n + 1):
        d = all_pairs_distances(n).max_distance()
        expect(d <= max(0, 2 * n - 2), f"n={n}: diameter {d}")
        found.append(d)
    return "diameters " + ",".join(map(str, found))


# ---------------------------------------------------------------------------
# cli
# ---------------------------------------------------------------------------

@check("cli", ["cmd_encode", "cmd_distance", "cmd_construct", "cmd_verify"], cap=12)
def cli_smoke(max_n: int) -> str:
    from .cli import main

    def run(*argv: str) -> tuple[int, str]:
        out = io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
            code = main(list(argv))
        return code, out.getvalue().strip()

    expect(run("encode", "--to", "perm", "(L (L (L L)))") == (0, "1 2 3"), "encode perm")
    expect(run("distance", "--method", "skew", "0001", "1110") == (0, '{"distance": 6}'), "distance")
    code, text = run("construct", "nearest-skew", "((L L) (L L))")
    expect(code == 0 and '"distance": 1' in text, "nearest-skew")
    expect(run("verify", "--suite", "permutations", "--max-n", "2")[0] == 0, "nested verify")
    return "4 commands"


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

def selected(suite: str) -> list[Check]:
    if suite == "all":
        return list(REGISTRY)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [c for c in REGISTRY if c.suite == suite]


def run_checks(suite: str, max_n: int) -> list[CheckResult]:
    if max_n < 1:
        raise ValueError("max-n must be at least 1")
    results = []
    for c in selected(suite):
        n = min(max_n, c.cap)
        if n < c.low:
            results.append(CheckResult(c, "skip", f"needs n>={c.low}"))
            continue
        try:
            results.append(CheckResult(c, "pass", c.fn(n)))
        except CheckFailed as exc:
            results.append(CheckResult(c, "fail", str(exc)))
    return results


def covered(results: Iterable[CheckResult]) -> set[str]:
    return {op for r in results if r.status == "pass" for op in r.check.covers}
