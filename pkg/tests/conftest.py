import functools
import itertools
import random

import numpy as np
import pytest
from hypothesis import strategies as st

from pairwalk.canon import enumerate_connected, enumerate_graphs
from pairwalk.graphs import Graph


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    target = set(h.edges())
    for perm in itertools.permutations(range(g.n)):
        if all(tuple(sorted((perm[u], perm[v]))) in target for u, v in g.edges()):
            return True
    return False


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


@functools.lru_cache(maxsize=None)
def connected(n: int) -> tuple[Graph, ...]:
    return tuple(enumerate_connected(n))


@functools.lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(enumerate_graphs(n))


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def connected_graphs(draw, min_n=2, max_n=7):
    n = draw(st.integers(min_n, max_n))
    corpus = connected(n)
    g = corpus[draw(st.integers(0, len(corpus) - 1))]
    perm = draw(st.permutations(range(n)))
    return g.relabel(perm)


def corpus_upto(n_max: int, connected_only: bool = True):
    for n in range(1, n_max + 1):
        yield from (connected(n) if connected_only else all_graphs(n))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def np_rng():
    return np.random.default_rng(7)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
