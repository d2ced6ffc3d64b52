"""Canonical labeling and isomorph-free enumeration of small graphs.

The canonical form is the minimal upper-triangle adjacency code (graph6 bit
order) over the leaves of an individualization-refinement search tree.  Cell
order after refinement is label-invariant, so two graphs share a canonical
form exactly when they are isomorphic.  Automorphisms discovered at equal
leaves prune sibling branches.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from pairwalk.graphs import Graph, _bits

ENUMERATION_MAX_N = 9


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    code: int

    def bitstring(self) -> str:
        width = self.n * (self.n - 1) // 2
        return format(self.code, f"0{width}b") if width else ""


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbour counts until the partition is equitable."""
    cells = [c[:] for c in cells]
    splitter = 0
    while splitter < len(cells):
        wmask = 0
        for v in cells[splitter]:
            wmask |= 1 << v
        out: list[list[int]] = []
        split_any = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & wmask).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                split_any = True
                out.extend(groups[k] for k in sorted(groups))
        cells = out
        splitter = 0 if split_any else splitter + 1
    return cells


def _code(adj: tuple[int, ...], order: list[int]) -> int:
    code = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            code = (code << 1) | (row >> order[i] & 1)
    return code


def _orbit_reps(candidates: list[int], generators: list[tuple[int, ...]]) -> list[int]:
    parent = {v: v for v in candidates}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for gamma in generators:
        for v in candidates:
            w = gamma[v]
            if w in parent:
                rv, rw = find(v), find(w)
                if rv != rw:
                    parent[max(rv, rw)] = min(rv, rw)
    return [v for v in candidates if find(v) == v]


def canonical_labeling(g: Graph) -> tuple[CanonicalForm, list[int], list[tuple[int, ...]]]:
    """Return ``(form, order, automorphism_generators)``.

    ``order[i]`` is the vertex placed at canonical position ``i``.  The
    generators are the automorphisms found during the search; they need not
    generate the full group.
    """
    n = g.n
    adj = g.adj
    if n == 0:
        return CanonicalForm(0, 0), [], []
    best_code: int | None = None
    best_order: list[int] = []
    autos: list[tuple[int, ...]] = []

    def search(cells: list[list[int]], fixed: list[int]) -> None:
        nonlocal best_code, best_order
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _code(adj, order)
            if best_code is None or code < best_code:
                best_code, best_order = code, order
            elif code == best_code:
                perm = [0] * n
                for a, b in zip(best_order, order):
                    perm[a] = b
                autos.append(tuple(perm))
            return
        cell = cells[target]
        done: list[int] = []
        for v in cell:
            if done:
                stab = [a for a in autos if all(a[f] == f for f in fixed)]
                reps = _orbit_reps(done + [v], stab)
                if v not in reps:
                    continue
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:], fixed + [v])
            done.append(v)

    search([list(range(n))], [])
    assert best_code is not None
    return CanonicalForm(n, best_code), best_order, autos


def canonical_form(g: Graph) -> CanonicalForm:
    return canonical_labeling(g)[0]


def canonical_graph(g: Graph) -> Graph:
    """Relabeled copy of ``g`` whose vertex order is canonical."""
    _, order, _ = canonical_labeling(g)
    position = [0] * g.n
    for i, v in enumerate(order):
        position[v] = i
    return g.relabel(position)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges == h.num_edges and canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------- enumeration

def _augment(parent: Graph, subset: int) -> Graph:
    n = parent.n
    adj = list(parent.adj)
    for u in _bits(subset):
        adj[u] |= 1 << n
    adj.append(subset)
    return Graph(n + 1, tuple(adj))


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[Graph, ...]:
    """One canonical representative per isomorphism class, sorted by code."""
    if n == 0:
        return (Graph(0, ()),)
    seen: dict[CanonicalForm, Graph] = {}
    for parent in _all_graphs(n - 1):
        deg = parent.degrees()
        for subset in range(1 << (n - 1)):
            k = subset.bit_count()
            # the added vertex must be of minimum degree in the child; every
            # graph arises this way by deleting one of its min-degree vertices
            if any(deg[u] + (subset >> u & 1) < k for u in range(n - 1)):
                continue
            child = _augment(parent, subset)
            form = canonical_form(child)
            if form not in seen:
                seen[form] = canonical_graph(child)
    return tuple(seen[f] for f in sorted(seen))


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """All graphs on ``n`` vertices up to isomorphism, connected or not."""
    if not 0 <= n <= ENUMERATION_MAX_N:
        raise ValueError(f"enumeration supports 0 <= n <= {ENUMERATION_MAX_N}")
    yield from _all_graphs(n)


def enumerate_connected(n: int) -> Iterator[Graph]:
    """Connected graphs on ``n`` vertices, one per isomorphism class."""
    if not 1 <= n <= ENUMERATION_MAX_N:
        raise ValueError(f"connected enumeration supports 1 <= n <= {ENUMERATION_MAX_N}")
    for g in _all_graphs(n):
        if g.is_connected():
            yield g


TREE_MAX_N = 16


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, (0,)),)
    seen: dict[CanonicalForm, Graph] = {}
    for parent in _trees(n - 1):
        for u in range(n - 1):
            child = _augment(parent, 1 << u)
            form = canonical_form(child)
            if form not in seen:
                seen[form] = canonical_graph(child)
    return tuple(seen[f] for f in sorted(seen))


def enumerate_trees(n: int) -> Iterator[Graph]:
    """Trees on ``n`` vertices up to isomorphism, grown by leaf addition."""
    if not 1 <= n <= TREE_MAX_N:
        raise ValueError(f"tree enumeration supports 1 <= n <= {TREE_MAX_N}")
    yield from _trees(n)
