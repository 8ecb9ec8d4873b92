"""Simple undirected graphs on vertex set ``range(n)``.

Adjacency rows are stored as integer bitmasks, bit ``j`` of ``rows[i]``
set iff ``i`` and ``j`` are adjacent.  Graphs are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import Graph6Error

GRAPH6_MAX_N = 62


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full or row >> i & 1:
                raise ValueError(f"row {i} has bits outside the vertex set or a loop")
            for j in _bits(row):
                if not self.rows[j] >> i & 1:
                    raise ValueError(f"adjacency is not symmetric at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> Graph:
        n = len(matrix)
        rows = tuple(sum(1 << j for j in range(n) if matrix[i][j]) for i in range(n))
        return cls(n, rows)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, i: int) -> list[int]:
        return list(_bits(self.rows[i]))

    def degree(self, i: int) -> int:
        return bin(self.rows[i]).count("1")

    def degrees(self) -> list[int]:
        return [self.degree(i) for i in range(self.n)]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.rows[i]) if i < j]

    def adjacency_matrix(self) -> list[list[int]]:
        return [[self.rows[i] >> j & 1 for j in range(self.n)] for i in range(self.n)]

    def relabel(self, order: Sequence[int]) -> Graph:
        """Graph whose vertex ``k`` is vertex ``order[k]`` of this one."""
        pos = {v: k for k, v in enumerate(order)}
        rows = [0] * self.n
        for k, v in enumerate(order):
            for j in _bits(self.rows[v]):
                rows[k] |= 1 << pos[j]
        return Graph(self.n, tuple(rows))

    def __str__(self):
        return emit_graph6(self) if self.n <= GRAPH6_MAX_N else f"Graph(n={self.n})"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# named families used throughout tests and examples

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices; vertex 0 is the center."""
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = [(u + g.n, v + g.n) for u, v in h.edges()]
    return Graph.from_edges(g.n + h.n, g.edges() + shifted)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ row ^ (1 << i) for i, row in enumerate(g.rows)))


def delete_vertex(g: Graph, i: int) -> Graph:
    """Remove vertex ``i``; the remaining vertices keep their relative order."""
    if g.n == 1:
        raise ValueError("cannot delete the only vertex of a graph")
    if not 0 <= i < g.n:
        raise IndexError(f"vertex {i} out of range for n={g.n}")
    low = (1 << i) - 1
    rows = []
    for k, row in enumerate(g.rows):
        if k != i:
            rows.append((row & low) | (row >> (i + 1) << i))
    return Graph(g.n - 1, tuple(rows))


def _apply(g: Graph, vec: Sequence[int]) -> list[int]:
    return [sum(vec[j] for j in _bits(row)) for row in g.rows]


def walk_counts(g: Graph, kmax: int) -> list[list[int]]:
    """Columns ``A^k 1`` for ``k = 0..kmax``; entry ``[k][i]`` counts walks of length k from i."""
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    cols = [[1] * g.n]
    for _ in range(kmax):
        cols.append(_apply(g, cols[-1]))
    return cols


def closed_walk_counts(g: Graph, kmax: int) -> tuple[list[list[int]], list[int]]:
    """Closed walk counts ``e_i^T A^k e_i`` (indexed ``[k][i]``) and traces ``tr A^k``."""
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    n = g.n
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    diag = [[1] * n]
    for _ in range(kmax):
        power = [_row_sum(power, g.rows[i], n) for i in range(n)]
        diag.append([power[i][i] for i in range(n)])
    return diag, [sum(d) for d in diag]


def _row_sum(matrix, mask, n):
    out = [0] * n
    for j in _bits(mask):
        row = matrix[j]
        for c in range(n):
            out[c] += row[c]
    return out


def walk_totals(g: Graph, kmax: int) -> list[int]:
    """``1^T A^k 1`` for ``k = 0..kmax``."""
    return [sum(col) for col in walk_counts(g, kmax)]


def count_four_cycles(g: Graph) -> int:
    """Number of 4-cycles, by counting common-neighbour pairs."""
    total = 0
    for i in range(g.n):
        for j in range(i + 1, g.n):
            c = bin(g.rows[i] & g.rows[j]).count("1")
            total += c * (c - 1) // 2
    return total // 2


# graph6 -----------------------------------------------------------------

def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip()
    offset = 0
    if text.startswith(">>graph6<<"):
        offset = len(">>graph6<<")
    if len(text) <= offset:
        raise Graph6Error("empty graph6 string", offset)
    for k, ch in enumerate(text):
        if k >= offset and not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid character {ch!r}", k)
    n = ord(text[offset]) - 63
    if n == 63:
        raise Graph6Error(f"orders above {GRAPH6_MAX_N} are not supported", offset)
    if n == 0:
        raise Graph6Error("graph with no vertices", offset)
    body = text[offset + 1:]
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) < need:
        raise Graph6Error(f"truncated bit field: expected {need} bytes, got {len(body)}",
                          offset + 1 + len(body))
    if len(body) > need:
        raise Graph6Error("trailing bytes after bit field", offset + 1 + need)
    bits = []
    for ch in body:
        v = ord(ch) - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", offset + len(body))
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> str:
    if not 1 <= g.n <= GRAPH6_MAX_N:
        raise ValueError(f"graph6 output supports 1 <= n <= {GRAPH6_MAX_N}, got {g.n}")
    bits = [g.rows[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = v << 1 | b
        out.append(chr(v + 63))
    return "".join(out)


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-based)."""
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty edge list")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("edge list header must be 'n m'")
    n, m = int(header[0]), int(header[1])
    if len(lines) - 1 != m:
        raise ValueError(f"header announces {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph.from_edges(n, edges)


def read_graph(arg: str) -> Graph:
    """A graph6 string, or a path to an edge-list / graph6 file."""
    import os

    if os.path.isfile(arg):
        with open(arg) as fh:
            text = fh.read()
        first = text.strip().split("\n", 1)[0].strip()
        if len(first.split()) == 2:
            return parse_edge_list(text)
        return parse_graph6(first)
    return parse_graph6(arg)
