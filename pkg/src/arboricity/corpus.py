"""Test corpora: bundled graph6 files, seeded random graphs and fixed fixtures."""

from __future__ import annotations

import random
from fractions import Fraction
from importlib import resources
from typing import Iterable, Iterator, TextIO

from .arborization import ScheduleEntry, cells, covering_lhs, disjoint_pairs, verify
from .gadgets import gadget_graph
from .graph import Graph, from_graph6, named_graph
from .intervals import IntervalSet

__all__ = [
    "CONNECTED_UPTO8",
    "CONNECTED9_SPARSE",
    "load_corpus",
    "read_graph6_stream",
    "connected_graphs",
    "random_graph",
    "random_graphs",
    "random_sparse_graphs",
    "girth5_fixtures",
    "OffshootInstance",
    "random_offshoot_instance",
]

CONNECTED_UPTO8 = "connected_upto8.g6"
CONNECTED9_SPARSE = "connected9_sparse.g6"


def read_graph6_stream(stream: TextIO | Iterable[str]) -> Iterator[Graph]:
    """One graph per non-blank line; ``>>graph6<<`` headers are accepted."""
    for line in stream:
        line = line.strip()
        if line:
            yield from_graph6(line)


def load_corpus(name: str) -> list[Graph]:
    with resources.files("arboricity.data").joinpath(name).open("r") as fh:
        return list(read_graph6_stream(fh))


def connected_graphs(max_n: int = 8, sparse_only: bool = False) -> list[Graph]:
    """All connected graphs up to ``max_n`` vertices (``max_n ≤ 9``).

    Order 9 is bundled only for average degree below 10/3, so ``max_n = 9``
    requires ``sparse_only``.
    """
    if max_n > 9 or (max_n == 9 and not sparse_only):
        raise ValueError("the bundled corpus covers all connected graphs only up to 8 vertices")
    out = [g for g in load_corpus(CONNECTED_UPTO8) if g.n <= max_n]
    if max_n == 9:
        out += load_corpus(CONNECTED9_SPARSE)
    if sparse_only:
        out = [g for g in out if g.average_degree() < Fraction(10, 3)]
    return out


def random_graph(rng: random.Random, n: int, p: float, connected: bool = True) -> Graph:
    """``G(n, p)``; with ``connected`` a random spanning tree is added first."""
    edges = set()
    if connected:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            edges.add(tuple(sorted((order[i], order[rng.randrange(i)]))))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, sorted(edges))


def random_graphs(seed: int, count: int = 200, max_n: int = 14) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, max_n)
        p = rng.choice((0.1, 0.2, 0.3, 0.45, 0.6))
        out.append(random_graph(rng, n, p))
    return out


def random_sparse_graphs(seed: int, count: int = 500, max_n: int = 40) -> list[Graph]:
    """Connected graphs with average degree strictly below 10/3."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, max_n)
        limit = min((5 * n - 1) // 3, n * (n - 1) // 2)  # largest m with 2m/n < 10/3
        target = rng.randint(n - 1, max(n - 1, limit))
        g = random_graph(rng, n, 0.0)
        edges = set(g.edges())
        while len(edges) < target:
            u, v = rng.sample(range(n), 2)
            edges.add((min(u, v), max(u, v)))
        out.append(Graph(n, sorted(edges)))
    return out


def girth5_fixtures() -> dict[str, Graph]:
    """Girth-five graphs used for the ``fva ≤ 2 - 1/324`` spot check.

    Cycles C5..C16, induced pieces of the dodecahedron, both gadget hosts
    and the Petersen graph.  The Petersen graph is not planar and the
    gadget hosts have more than 16 vertices; both are kept as extra
    girth-five data points.
    """
    out = {f"C{n}": named_graph("cycle", n) for n in range(5, 17)}
    dod = named_graph("dodecahedron")
    face = _a_face(dod)
    v0 = 0
    pieces = {
        "dodecahedron-minus-face": face,
        "dodecahedron-minus-closed-nbhd": [v0, *sorted(dod.adj[v0])],
        "dodecahedron-minus-two-faces": sorted(set(face) | set(_a_face(dod, avoid=face))),
    }
    for name, removed in pieces.items():
        out[name], _ = dod.delete(removed)
    out["dodecahedron"] = dod
    out["gadget-A"] = gadget_graph("A")[0]
    out["gadget-B"] = gadget_graph("B")[0]
    out["petersen"] = named_graph("petersen")
    return out


def _a_face(g: Graph, avoid: Iterable[int] = ()) -> list[int]:
    """Lexicographically first induced 5-cycle disjoint from ``avoid``."""
    bad = set(avoid)
    for a in range(g.n):
        if a in bad:
            continue
        for b in sorted(g.adj[a]):
            for c in sorted(g.adj[b] - {a}):
                for d in sorted(g.adj[c] - {a, b}):
                    for e in sorted(g.adj[d] - {a, b, c}):
                        cyc = [a, b, c, d, e]
                        if a in g.adj[e] and not bad & set(cyc):
                            return cyc
    raise ValueError("no 5-cycle found")


class OffshootInstance:
    """A small graph with an offshoot assignment and a verified schedule."""

    def __init__(self, g, lists, offshoots, schedule):
        self.g = g
        self.lists = lists
        self.offshoots = offshoots
        self.schedule = schedule

    def cell_table(self):
        return cells(self.lists, self.offshoots)

    def covered(self) -> bool:
        table = self.cell_table()
        return all(covering_lhs(v, table, self.schedule) >= 1 for v in self.lists)


def _random_set(rng: random.Random, lo: Fraction, hi: Fraction, pieces: int, den: int) -> IntervalSet:
    pts = sorted({Fraction(rng.randint(int(lo * den), int(hi * den)), den) for _ in range(2 * pieces)})
    if len(pts) % 2:
        pts = pts[:-1]
    return IntervalSet(list(zip(pts[::2], pts[1::2])))


def _random_certificate(rng: random.Random, g: Graph, live: list[int], O: frozenset) -> dict[int, IntervalSet]:
    """A respecting demand certificate on ``live``: random sets, falling back
    to disjoint slices of ``[0, 1)`` if the random draw fails."""
    cert = {v: _random_set(rng, Fraction(0), Fraction(1), rng.randint(0, 2), 12) for v in live}
    if verify(g, cert, demand={}, respects=O).ok:
        return cert
    m = max(len(live), 1)
    return {v: IntervalSet([(Fraction(i, m), Fraction(i + 1, m))]) for i, v in enumerate(live)}


def random_offshoot_instance(rng: random.Random, max_vertices: int = 4, attempts: int = 200) -> OffshootInstance | None:
    """Draw instances until one satisfies the covering condition.

    Returns ``None`` when ``attempts`` draws all fail.
    """
    for _ in range(attempts):
        n = rng.randint(1, max_vertices)
        g = random_graph(rng, n, 0.5, connected=False)
        span = Fraction(rng.choice((2, 3, 4)))
        lists, offs = {}, {}
        for v in range(n):
            L = _random_set(rng, Fraction(0), span, rng.randint(1, 3), 6)
            if L.measure < 1:
                L = L | IntervalSet([(0, 1)])
            lists[v] = L
            offs[v] = L & _random_set(rng, Fraction(0), span, rng.randint(0, 2), 6)
        sched = {}
        for X, O in disjoint_pairs(range(n)):
            live = [v for v in range(n) if v not in X]
            cert = _random_certificate(rng, g, live, O)
            sched[(X, O)] = ScheduleEntry({v: cert[v].measure for v in live}, cert)
        inst = OffshootInstance(g, lists, offs, sched)
        if inst.covered():
            return inst
    return None
