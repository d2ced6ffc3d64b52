"""graph6 encoding for graphs with at most 62 vertices."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from pairwalk.graphs import Graph

GRAPH6_MAX_N = 62


class Graph6Error(ValueError):
    pass


def encode(g: Graph) -> str:
    if g.n > GRAPH6_MAX_N:
        raise Graph6Error(f"only n <= {GRAPH6_MAX_N} is supported, got {g.n}")
    bits = [g.adj[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        chars.append(chr(value + 63))
    return "".join(chars)


def decode(text: str) -> Graph:
    line = text.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise Graph6Error("empty graph6 string")
    values = [ord(c) - 63 for c in line]
    if any(not 0 <= v <= 63 for v in values):
        raise Graph6Error(f"character outside graph6 range in {line!r}")
    n = values[0]
    if n == 63:
        raise Graph6Error("large-graph headers (n > 62) are not supported")
    nbits = n * (n - 1) // 2
    expected = 1 + -(-nbits // 6)
    if len(values) != expected:
        raise Graph6Error(f"graph6 string for n={n} must have {expected} characters, got {len(values)}")
    bits: list[int] = []
    for v in values[1:]:
        bits.extend(v >> s & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def write_lines(graphs: Iterable[Graph], out: TextIO) -> int:
    count = 0
    for g in graphs:
        out.write(encode(g) + "\n")
        count += 1
    return count


def read_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph | Graph6Error]]:
    """Yield ``(line_number, graph_or_error)`` for every non-blank line."""
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            yield lineno, decode(line)
        except Graph6Error as exc:
            yield lineno, exc
