"""Exhaustive ground truth: tree enumeration and BFS in the rotation graph.

For ``n <= GRAPH_CACHE_MAX`` the whole rotation graph is built once and
cached, so repeated searches only walk integer adjacency lists.  Larger
``n`` (up to :data:`MAX_N`) falls back to an implicit search that generates
neighbours on the fly; both visit neighbours in the same order and so return
the same paths.
"""

from __future__ import annotations

import csv
import enum
import io
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import FilterViolatedAtEndpoint, SizeMismatch, TooLarge
from .tree import (
    LEAF,
    Node,
    RotationPath,
    RotationStep,
    Tree,
    height,
    internal_count,
    is_skew,
    rank,
    rotation_neighbors,
    serialize_tree,
)

MAX_N = 12
GRAPH_CACHE_MAX = 10


class FilterKind(enum.Enum):
    NONE = "none"
    RANK_AT_MOST = "rank"
    HEIGHT_AT_MOST = "height"
    SKEW_ONLY = "skew"


@dataclass(frozen=True)
class TreeFilter:
    """Vertex predicate for restricted searches."""

    kind: FilterKind = FilterKind.NONE
    bound: int | None = None

    def __post_init__(self):
        if self.kind in (FilterKind.RANK_AT_MOST, FilterKind.HEIGHT_AT_MOST):
            if self.bound is None or self.bound < 1:
                raise ValueError(f"{self.kind.value} filter needs a bound >= 1")
        elif self.bound is not None:
            raise ValueError(f"{self.kind.value} filter takes no bound")

    @classmethod
    def none(cls) -> "TreeFilter":
        return cls()

    @classmethod
    def rank_at_most(cls, r: int) -> "TreeFilter":
        return cls(FilterKind.RANK_AT_MOST, r)

    @classmethod
    def height_at_most(cls, h: int) -> "TreeFilter":
        return cls(FilterKind.HEIGHT_AT_MOST, h)

    @classmethod
    def skew_only(cls) -> "TreeFilter":
        return cls(FilterKind.SKEW_ONLY)

    def accepts(self, t: Tree) -> bool:
        if self.kind is FilterKind.NONE:
            return True
        if self.kind is FilterKind.SKEW_ONLY:
            return is_skew(t)
        if self.kind is FilterKind.RANK_AT_MOST:
            return rank(t) <= self.bound
        return height(t) <= self.bound


NO_FILTER = TreeFilter()


def _guard(n: int, limit: int = MAX_N) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > limit:
        raise TooLarge(f"n={n} exceeds the exhaustive-search guard of {limit}")


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Tree, ...]:
    if n == 0:
        return (LEAF,)
    out = []
    for k in range(n):
        for left in _enumerate(k):
            for right in _enumerate(n - 1 - k):
                out.append(Node(left, right))
    return tuple(out)


def enumerate_trees(n: int) -> tuple[Tree, ...]:
    """All Catalan(n) trees, ordered by left-subtree size then recursively."""
    _guard(n)
    return _enumerate(n)


class RotationGraph:
    """The rotation graph on all trees with ``n`` internal nodes."""

    def __init__(self, n: int):
        self.n = n
        self.trees = enumerate_trees(n)
        self.index = {t: k for k, t in enumerate(self.trees)}
        self.adjacency: list[list[tuple[RotationStep, int]]] = [
            [(step, self.index[u]) for step, u in rotation_neighbors(t)]
            for t in self.trees
        ]
        self._masks: dict[TreeFilter, list[bool]] = {}

    def mask(self, flt: TreeFilter) -> list[bool]:
        if flt not in self._masks:
            self._masks[flt] = [flt.accepts(t) for t in self.trees]
        return self._masks[flt]

    def bfs(self, sources: Iterable[int], flt: TreeFilter = NO_FILTER
            ) -> tuple[list[int | None], list[tuple[int, RotationStep] | None]]:
        """Multi-source BFS; returns distances and parent links."""
        allowed = self.mask(flt)
        dist: list[int | None] = [None] * len(self.trees)
        parent: list[tuple[int, RotationStep] | None] = [None] * len(self.trees)
        queue = deque()
        for s in sources:
            if dist[s] is None:
                dist[s] = 0
                queue.append(s)
        adjacency = self.adjacency
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for step, v in adjacency[u]:
                if dist[v] is None and allowed[v]:
                    dist[v] = du
                    parent[v] = (u, step)
                    queue.append(v)
        return dist, parent


@lru_cache(maxsize=None)
def rotation_graph(n: int) -> RotationGraph:
    _guard(n, GRAPH_CACHE_MAX)
    return RotationGraph(n)


def _path_from_parents(parent, target: int) -> RotationPath:
    steps = []
    while parent[target] is not None:
        u, step = parent[target]
        steps.append(step)
        target = u
    steps.reverse()
    return steps


def _check_endpoints(t1: Tree, t2: Tree, flt: TreeFilter) -> int:
    n = internal_count(t1)
    if n != internal_count(t2):
        raise SizeMismatch("trees have different internal counts")
    for t in (t1, t2):
        if not flt.accepts(t):
            raise FilterViolatedAtEndpoint(
                f"{serialize_tree(t)} violates {flt.kind.value} filter (bound {flt.bound})")
    return n


def _implicit_bfs(t1: Tree, t2: Tree, flt: TreeFilter) -> tuple[int | None, RotationPath]:
    parent: dict[Tree, tuple[Tree, RotationStep] | None] = {t1: None}
    queue = deque([t1])
    while queue:
        u = queue.popleft()
        if u == t2:
            break
        for step, v in rotation_neighbors(u):
            if v not in parent and flt.accepts(v):
                parent[v] = (u, step)
                queue.append(v)
    if t2 not in parent:
        return None, []
    steps = []
    node = t2
    while parent[node] is not None:
        node, step = parent[node]
        steps.append(step)
    steps.reverse()
    return len(steps), steps


def bfs_distance(t1: Tree, t2: Tree, flt: TreeFilter = NO_FILTER
                 ) -> tuple[int | None, RotationPath]:
    """Shortest rotation path from ``t1`` to ``t2`` through trees accepted by ``flt``.

    Returns ``(None, [])`` when ``t2`` is unreachable under the filter.
    """
    n = _check_endpoints(t1, t2, flt)
    _guard(n)
    if n > GRAPH_CACHE_MAX:
        return _implicit_bfs(t1, t2, flt)
    graph = rotation_graph(n)
    src, dst = graph.index[t1], graph.index[t2]
    dist, parent = graph.bfs([src], flt)
    if dist[dst] is None:
        return None, []
    return dist[dst], _path_from_parents(parent, dst)


def distances_from(t: Tree, flt: TreeFilter = NO_FILTER) -> dict[Tree, int]:
    """Filtered BFS distance from ``t`` to every reachable tree."""
    n = internal_count(t)
    if not flt.accepts(t):
        raise FilterViolatedAtEndpoint(f"{serialize_tree(t)} violates the filter")
    graph = rotation_graph(n)
    dist, _ = graph.bfs([graph.index[t]], flt)
    return {graph.trees[k]: d for k, d in enumerate(dist) if d is not None}


def distance_to_set(n: int, member: Callable[[Tree], bool]) -> dict[Tree, int]:
    """Unfiltered distance from every tree to the nearest tree satisfying ``member``."""
    graph = rotation_graph(n)
    dist, _ = graph.bfs([k for k, t in enumerate(graph.trees) if member(t)])
    return {graph.trees[k]: d for k, d in enumerate(dist)}


@dataclass
class DistanceTable:
    trees: tuple[Tree, ...]
    rows: list[list[int | None]]

    def max_distance(self) -> int:
        return max(d for row in self.rows for d in row if d is not None)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([serialize_tree(t) for t in self.trees])
        for row in self.rows:
            writer.writerow(["-" if d is None else d for d in row])
        return buf.getvalue()


def all_pairs_distances(n: int, flt: TreeFilter = NO_FILTER) -> DistanceTable:
    """Distance table over the trees accepted by ``flt``, in enumeration order."""
    _guard(n, 10 if flt.kind is FilterKind.SKEW_ONLY else 8)
    graph = rotation_graph(n)
    allowed = graph.mask(flt)
    members = [k for k in range(len(graph.trees)) if allowed[k]]
    rows = []
    for s in members:
        dist, _ = graph.bfs([s], flt)
        rows.append([dist[k] for k in members])
    return DistanceTable(tuple(graph.trees[k] for k in members), rows)


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


def filters_for(trees: Sequence[Tree]) -> dict[str, TreeFilter]:
    """Rank and height filters inferred from endpoints (their max)."""
    return {
        "rank": TreeFilter.rank_at_most(max(rank(t) for t in trees)),
        "height": TreeFilter.height_at_most(max(height(t) for t in trees)),
    }
