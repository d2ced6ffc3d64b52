"""Labeled simple graphs stored as per-vertex neighbour bitsets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np


class ParameterError(ValueError):
    """Raised when a named-graph constructor receives invalid parameters."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``adj[u]`` is an integer bitset whose bit ``v`` is set iff ``uv`` is an
    edge.  Instances are immutable and hashable; equality is labeled equality.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ParameterError("vertex count must be non-negative")
        if len(self.adj) != self.n:
            raise ParameterError(f"expected {self.n} neighbour sets, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for u, nb in enumerate(self.adj):
            if nb & ~full:
                raise ParameterError(f"vertex {u} has neighbours outside 0..{self.n - 1}")
            if nb >> u & 1:
                raise ParameterError(f"loop at vertex {u}")
            for v in _bits(nb):
                if not self.adj[v] >> u & 1:
                    raise ParameterError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def from_matrix(cls, matrix) -> Graph:
        a = np.asarray(matrix)
        n = a.shape[0]
        return cls.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if a[u, v]])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return list(_bits(self.adj[u]))

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def degrees(self) -> list[int]:
        return [nb.bit_count() for nb in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Image of the graph under ``u -> perm[u]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= self.adj[u]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ---------------------------------------------------------------- constructors

def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path(n: int) -> Graph:
    if n < 1:
        raise ParameterError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ParameterError("complete graph needs n >= 1")
    return Graph.from_edges(n, combinations(range(n), 2))


def star(k: int) -> Graph:
    """K_{1,k}: centre 0, leaves 1..k."""
    if k < 1:
        raise ParameterError("star needs at least one leaf")
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def double_star(s: int, t: int) -> Graph:
    """Adjacent centres 0 and 1 carrying ``s`` and ``t`` leaves respectively."""
    if s < 1 or t < 1:
        raise ParameterError("double star arm counts must be >= 1")
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(s)]
    edges += [(1, 2 + s + j) for j in range(t)]
    return Graph.from_edges(2 + s + t, edges)


FIGURE1_EDGES = [(0, 3), (0, 4), (1, 4), (1, 5), (2, 4), (2, 5), (3, 5)]
FIGURE3_EDGES = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (3, 5), (4, 5)]
FIGURE4_EDGES = [(0, 3), (0, 4), (0, 5), (1, 2), (1, 5), (2, 4), (2, 5), (3, 4)]
# 12-vertex tree whose only periodic edge state is (0, 10)
TREE_FIGURE_EDGES = [(0, 1), (0, 4), (0, 7), (0, 10), (1, 2), (1, 3),
                     (4, 5), (4, 6), (7, 8), (7, 9), (10, 11)]


def figure1() -> Graph:
    """Smallest graph with PST from an edge pair (0,3) to a non-edge pair (4,5)."""
    return Graph.from_edges(6, FIGURE1_EDGES)


def figure3() -> Graph:
    """P_2 x P_3 in the labeling used for its worked PST pairs."""
    return Graph.from_edges(6, FIGURE3_EDGES)


def figure4() -> Graph:
    return Graph.from_edges(6, FIGURE4_EDGES)


def tree_figure() -> Graph:
    return Graph.from_edges(12, TREE_FIGURE_EDGES)


_FAMILIES = {
    "path": (path, 1),
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "empty": (empty, 1),
    "star": (star, 1),
    "double_star": (double_star, 2),
    "figure1": (figure1, 0),
    "figure3": (figure3, 0),
    "figure4": (figure4, 0),
    "tree_figure": (tree_figure, 0),
}


def build_named(family: str, *params: int) -> Graph:
    """Build a graph from a named family, e.g. ``build_named("cycle", 4)``."""
    try:
        ctor, arity = _FAMILIES[family]
    except KeyError:
        raise ParameterError(f"unknown family {family!r}; choose from {sorted(_FAMILIES)}") from None
    if len(params) != arity:
        raise ParameterError(f"{family} takes {arity} integer parameter(s), got {len(params)}")
    return ctor(*params)


# ------------------------------------------------------------------ operations

def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~nb & ~(1 << u) for u, nb in enumerate(g.adj)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, g.adj + tuple(nb << shift for nb in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between ``g`` and ``h``."""
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << g.n
    adj = tuple(nb | hmask for nb in g.adj) + tuple((nb << g.n) | gmask for nb in h.adj)
    return Graph(g.n + h.n, adj)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """g □ h with vertex (u, a) stored at index ``u * h.n + a``."""
    m = h.n
    edges = []
    for u in range(g.n):
        for a, b in h.edges():
            edges.append((u * m + a, u * m + b))
    for u, v in g.edges():
        for a in range(m):
            edges.append((u * m + a, v * m + a))
    return Graph.from_edges(g.n * m, edges)


# ------------------------------------------------------------------ predicates

def twins(g: Graph, a: int, b: int) -> bool:
    """True iff N(a) minus {b} equals N(b) minus {a}."""
    if a == b:
        raise ParameterError("twins needs two distinct vertices")
    return g.adj[a] & ~(1 << b) == g.adj[b] & ~(1 << a)


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """BFS 2-colouring, component by component; ``None`` for odd cycles."""
    colour = [-1] * g.n
    for root in range(g.n):
        if colour[root] >= 0:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in _bits(g.adj[u]):
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None
    return ([v for v in range(g.n) if colour[v] == 0],
            [v for v in range(g.n) if colour[v] == 1])


AUTOMORPHISM_MAX_N = 10


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """All adjacency-preserving permutations, ``perm[u]`` being the image of ``u``.

    Plain backtracking over degree-compatible assignments; the result is
    sorted, so the identity comes first.
    """
    if g.n > AUTOMORPHISM_MAX_N:
        raise ParameterError(f"automorphism search limited to n <= {AUTOMORPHISM_MAX_N}")
    deg = g.degrees()
    n = g.n
    perm = [-1] * n
    used = 0
    found: list[tuple[int, ...]] = []

    def extend(u: int) -> None:
        nonlocal used
        if u == n:
            found.append(tuple(perm))
            return
        for x in range(n):
            if used >> x & 1 or deg[x] != deg[u]:
                continue
            # edges to already-placed vertices must be mirrored exactly
            if any(g.has_edge(u, w) != g.has_edge(x, perm[w]) for w in range(u)):
                continue
            perm[u] = x
            used |= 1 << x
            extend(u + 1)
            used &= ~(1 << x)
        perm[u] = -1

    extend(0)
    return sorted(found)
