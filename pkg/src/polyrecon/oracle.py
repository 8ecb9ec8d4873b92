"""Brute-force ground truth: graph enumeration, invariant sweeps and deck-collision search."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Iterator

from .graph import Graph, _bits

MAX_UNLABELED = 8
MAX_LABELED = 10


# canonical form ---------------------------------------------------------

def _refine(rows: tuple[int, ...], cells: list[int]) -> list[int]:
    """Coarsest equitable refinement of an ordered partition (cells as bitmasks)."""
    while True:
        new_cells = []
        changed = False
        for cell in cells:
            if cell & (cell - 1) == 0:
                new_cells.append(cell)
                continue
            groups: dict[tuple, int] = {}
            for v in _bits(cell):
                sig = tuple((rows[v] & c).bit_count() for c in cells)
                groups[sig] = groups.get(sig, 0) | 1 << v
            if len(groups) > 1:
                changed = True
                new_cells.extend(groups[k] for k in sorted(groups))
            else:
                new_cells.append(cell)
        cells = new_cells
        if not changed:
            return cells


def _encode(rows: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = {v: k for k, v in enumerate(order)}
    out = []
    for v in order:
        m = 0
        for u in _bits(rows[v]):
            m |= 1 << pos[u]
        out.append(m)
    return tuple(out)


def canonical_form(g: Graph) -> tuple[tuple[int, ...], list[int]]:
    """Minimum relabeled adjacency encoding over all refinement-consistent orders.

    Returns the encoding and an order achieving it (new vertex ``k`` is old
    ``order[k]``).  Vertices with identical neighbourhoods apart from each
    other are interchangeable, so only one of them is tried per cell.
    """
    rows = g.rows
    n = g.n
    if n == 0:
        return (), []
    by_degree: dict[int, int] = {}
    for v in range(n):
        d = rows[v].bit_count()
        by_degree[d] = by_degree.get(d, 0) | 1 << v
    start = _refine(rows, [by_degree[d] for d in sorted(by_degree)])
    best: list = [None, None]

    def search(cells):
        target = next((i for i, c in enumerate(cells) if c & (c - 1)), None)
        if target is None:
            order = [c.bit_length() - 1 for c in cells]
            code = _encode(rows, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        cell = cells[target]
        tried: list[int] = []
        for v in _bits(cell):
            if any((rows[u] & ~(1 << v)) == (rows[v] & ~(1 << u)) for u in tried):
                continue
            tried.append(v)
            split = cells[:target] + [1 << v, cell & ~(1 << v)] + cells[target + 1:]
            search(_refine(rows, split))

    search(start)
    return best[0], best[1]


def canonical_graph(g: Graph) -> Graph:
    code, _ = canonical_form(g)
    return Graph(g.n, code)


def brute_canonical(g: Graph) -> tuple[int, ...]:
    """Minimum encoding over all ``n!`` orders (reference for small ``n``)."""
    return min(_encode(g.rows, list(p)) for p in permutations(range(g.n)))


# enumeration ------------------------------------------------------------

def _labeled(n: int) -> Iterator[Graph]:
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[k] for k in range(len(pairs)) if mask >> k & 1])


@lru_cache(maxsize=None)
def _unlabeled(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1, (0,)),)
    seen: dict[tuple, Graph] = {}
    for h in _unlabeled(n - 1):
        for nbrs in range(1 << (n - 1)):
            rows = list(h.rows) + [nbrs]
            for u in _bits(nbrs):
                rows[u] |= 1 << (n - 1)
            code, _ = canonical_form(Graph(n, tuple(rows)))
            if code not in seen:
                seen[code] = Graph(n, code)
    return tuple(seen[k] for k in sorted(seen))


@lru_cache(maxsize=None)
def _hereditary(n: int, name: str) -> tuple[Graph, ...]:
    keep = HEREDITARY[name]
    if n == 1:
        return (Graph(1, (0,)),)
    seen: dict[tuple, Graph] = {}
    for h in _hereditary(n - 1, name):
        for nbrs in range(1 << (n - 1)):
            rows = list(h.rows) + [nbrs]
            for u in _bits(nbrs):
                rows[u] |= 1 << (n - 1)
            g = Graph(n, tuple(rows))
            if not keep(g):
                continue
            code, _ = canonical_form(g)
            if code not in seen:
                seen[code] = Graph(n, code)
    return tuple(seen[k] for k in sorted(seen))


def _c4_free(g: Graph) -> bool:
    rows = g.rows
    return all((rows[i] & rows[j]).bit_count() < 2 for i in range(g.n) for j in range(i + 1, g.n))


# classes closed under vertex deletion, so every member extends a smaller one
HEREDITARY = {"c4_free": _c4_free}


def enumerate_hereditary(n: int, name: str) -> Iterator[Graph]:
    """One graph per isomorphism class in a vertex-deletion-closed class.

    Built by single-vertex extension, which reaches every member because
    deleting its last vertex stays inside the class.  Usable beyond the
    exhaustive bound when the class is sparse (C4-free graphs on 9 vertices).
    """
    if name not in HEREDITARY:
        raise ValueError(f"unknown class {name!r}; known: {', '.join(HEREDITARY)}")
    if not 1 <= n <= MAX_UNLABELED + 2:
        raise ValueError(f"hereditary enumeration supports 1 <= n <= {MAX_UNLABELED + 2}")
    return iter(_hereditary(n, name))


def enumerate_graphs(n: int, labeled: bool = False) -> Iterator[Graph]:
    """All graphs on ``n`` vertices, either every labeling or one per isomorphism class."""
    if labeled:
        if not 1 <= n <= MAX_LABELED:
            raise ValueError(f"labeled enumeration supports 1 <= n <= {MAX_LABELED}")
        return _labeled(n)
    if not 1 <= n <= MAX_UNLABELED:
        raise ValueError(f"unlabeled enumeration supports 1 <= n <= {MAX_UNLABELED}")
    return iter(_unlabeled(n))


def random_graph(n: int, p: float, seed: int | None = None) -> Graph:
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


# sweeps -----------------------------------------------------------------

@dataclass
class Counterexample:
    graph6: str
    check: str
    expected: str
    got: str

    def to_json(self) -> dict:
        return {"graph6": self.graph6, "check": self.check, "expected": self.expected, "got": self.got}


@dataclass
class SweepReport:
    n_min: int
    n_max: int
    checks: list[str]
    counterexamples: list[Counterexample] = field(default_factory=list)
    graphs_checked: dict[str, int] = field(default_factory=dict)
    seconds: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "checks": self.checks,
            "passed": self.passed,
            "graphs_checked": self.graphs_checked,
            "seconds": {k: round(v, 3) for k, v in self.seconds.items()},
            "counterexamples": [c.to_json() for c in self.counterexamples],
        }


def _run_check(args) -> tuple[str, int, list[Counterexample], float]:
    from .checks import CHECKS

    name, n_min, n_max = args
    fn = CHECKS[name]
    found = []
    count = 0
    start = time.perf_counter()
    for n in range(n_min, n_max + 1):
        for g in enumerate_graphs(n):
            count += 1
            problem = fn(g)
            if problem is not None:
                expected, got = problem
                found.append(Counterexample(str(g), name, str(expected), str(got)))
    return name, count, found, time.perf_counter() - start


def verify_sweep(n_max: int, checks: list[str] | str = "all", jobs: int = 1, n_min: int = 3) -> SweepReport:
    """Run registered per-graph checks over every graph with ``n_min <= n <= n_max``."""
    from .checks import CHECKS

    names = list(CHECKS) if checks == "all" else list(checks)
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    if not 1 <= n_min <= n_max <= MAX_UNLABELED:
        raise ValueError(f"need 1 <= n_min <= n_max <= {MAX_UNLABELED}")
    tasks = [(name, n_min, n_max) for name in names]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_check, tasks))
    else:
        results = [_run_check(t) for t in tasks]
    report = SweepReport(n_min, n_max, names)
    for name, count, found, seconds in results:
        report.graphs_checked[name] = count
        report.seconds[name] = seconds
        report.counterexamples.extend(found)
    return report


@dataclass
class CollisionReport:
    n: int
    groups: list[list[str]]
    counterexamples: list[tuple[str, str, int]]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "shared_deck_groups": self.groups,
            "counterexamples": [{"g": a, "h": b, "k": k} for a, b, k in self.counterexamples],
        }


def deck_collision_search(n: int) -> CollisionReport:
    """Group graphs on ``n`` vertices by polynomial deck and check every same-deck pair."""
    from .deck_mod import corollary2_check
    from .poly import deck

    if n < 3:
        raise ValueError("needs n >= 3")
    buckets: dict[tuple, list[Graph]] = {}
    for g in enumerate_graphs(n):
        buckets.setdefault(deck(g).fingerprint(), []).append(g)
    groups = []
    bad = []
    for key in sorted(buckets):
        members = buckets[key]
        if len(members) < 2:
            continue
        groups.append([str(g) for g in members])
        for g, h in combinations(members, 2):
            verdict = corollary2_check(g, h)
            if verdict.kind == "counterexample":
                bad.append((str(g), str(h), verdict.k))
    return CollisionReport(n, groups, bad)


def isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and canonical_form(g)[0] == canonical_form(h)[0]


def graphs_up_to(n_max: int, n_min: int = 1) -> Iterator[Graph]:
    for n in range(n_min, n_max + 1):
        yield from enumerate_graphs(n)


CheckFn = Callable[[Graph], "tuple | None"]
