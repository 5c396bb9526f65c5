"""Simple undirected graphs on vertices ``0..n-1``.

Graphs are immutable.  Adjacency is kept both as frozensets (for readable
code) and as integer bitmasks (for the exponential searches elsewhere).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "Graph",
    "GraphParseError",
    "StructuralStats",
    "ConfigurationWitness",
    "WITNESS_KINDS",
    "from_graph6",
    "to_graph6",
    "from_edgelist_text",
    "to_edgelist_text",
    "named_graph",
    "NAMED_GRAPHS",
    "structural_stats",
    "girth",
    "is_induced_forest",
    "is_forest_mask",
    "satisfies_euler_bound",
    "mask_of",
    "members",
]


class GraphParseError(ValueError):
    """Raised for malformed graph6 or edge-list input."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Graph:
    """Immutable simple graph.

    >>> g = Graph(3, [(0, 1), (1, 2)])
    >>> g.m, sorted(g.adj[1])
    (2, [0, 2])
    """

    __slots__ = ("n", "adj", "masks", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))
        object.__setattr__(self, "masks", tuple(mask_of(s) for s in nbrs))
        object.__setattr__(self, "_m", sum(len(s) for s in nbrs) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def effective_degree(self, v: int) -> int:
        return sum(1 for u in self.adj[v] if len(self.adj[u]) >= 3)

    def is_light(self, v: int) -> bool:
        return self.effective_degree(v) <= 3 and self.degree(v) <= 5

    def average_degree(self) -> Fraction:
        return Fraction(2 * self.m, self.n) if self.n else Fraction(0)

    def delete(self, removed: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on the complement of ``removed``, relabelled.

        Returns the new graph and the list mapping new ids to old ids.
        """
        gone = set(removed)
        keep = [v for v in range(self.n) if v not in gone]
        return self.induced(keep), keep

    def induced(self, keep: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph(len(keep), edges)

    def components(self, within: int | None = None) -> list[int]:
        """Connected components of the induced subgraph on the mask ``within``."""
        left = (1 << self.n) - 1 if within is None else within
        comps = []
        while left:
            seed = left & -left
            comp = seed
            frontier = seed
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                new = self.masks[low.bit_length() - 1] & left & ~comp
                comp |= new
                frontier |= new
            comps.append(comp)
            left &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# graph6

def _n_encode(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 68719476736:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    bits = []
    for j in range(1, g.n):
        mj = g.masks[j]
        for i in range(j):
            bits.append((mj >> i) & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6))
    return (">>graph6<<" if header else "") + _n_encode(g.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(">>graph6<<"):
        s = s[10:]
        base = 10
    if not s:
        raise GraphParseError("empty graph6 string", base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"byte {ch!r} outside graph6 range 63..126", base + k)
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] < 63:
        if len(vals) < 4:
            raise GraphParseError("truncated length header", base + len(vals))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    else:
        if len(vals) < 8:
            raise GraphParseError("truncated length header", base + len(vals))
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    body = vals[pos:]
    if len(body) != need:
        raise GraphParseError(f"expected {need} data bytes for n={n}, found {len(body)}", base + pos + min(len(body), need))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte, off = divmod(k, 6)
            if (body[byte] >> (5 - off)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def from_edgelist_text(text: str) -> Graph:
    """Parse ``"n\\nu v\\nu v ..."``; blank lines and ``#`` comments are ignored."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphParseError("empty edge-list input")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            a, b = ln.split()
            edges.append((int(a), int(b)))
        return Graph(n, edges)
    except ValueError as exc:
        raise GraphParseError(f"bad edge-list input: {exc}") from exc


def to_edgelist_text(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges()]) + "\n"


# ---------------------------------------------------------------------------
# named graphs

def _cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _lcf(n: int, shifts: Sequence[int]) -> Graph:
    edges = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    for i in range(n):
        j = (i + shifts[i % len(shifts)]) % n
        edges.add(tuple(sorted((i, j))))
    return Graph(n, sorted(edges))


def _cube() -> Graph:
    return Graph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def _petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


NAMED_GRAPHS = ("k4", "cube", "dodecahedron", "petersen", "cycle", "path", "complete")


def named_graph(name: str, size: int | None = None) -> Graph:
    key = name.lower()
    if key == "k4":
        return named_graph("complete", 4)
    if key == "cube":
        return _cube()
    if key == "dodecahedron":
        return _lcf(20, [10, 7, 4, -4, -7, 10, -4, 7, -7, 4])
    if key == "petersen":
        return _petersen()
    if key in ("cycle", "path", "complete"):
        if size is None:
            raise ValueError(f"{key} needs a size")
        if key == "cycle":
            if size < 3:
                raise ValueError("a cycle needs at least 3 vertices")
            return _cycle(size)
        if size < 1:
            raise ValueError(f"{key} needs at least one vertex")
        if key == "path":
            return Graph(size, [(i, i + 1) for i in range(size - 1)])
        return Graph(size, combinations(range(size), 2))
    raise ValueError(f"unknown graph name {name!r}; expected one of {', '.join(NAMED_GRAPHS)}")


# ---------------------------------------------------------------------------
# structure

def girth(g: Graph, within: int | None = None) -> float | int:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    allowed = (1 << g.n) - 1 if within is None else within
    best = math.inf
    for root in members(allowed):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in members(g.masks[u] & allowed):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def is_forest_mask(g: Graph, mask: int) -> bool:
    """True iff the induced subgraph on ``mask`` has no cycle."""
    edges2 = 0
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        edges2 += (g.masks[low.bit_length() - 1] & mask).bit_count()
    nv = mask.bit_count()
    if edges2 // 2 >= nv:
        return nv == 0
    return edges2 // 2 == nv - len(g.components(mask))


def is_induced_forest(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} not in graph")
    return is_forest_mask(g, mask_of(vs))


@dataclass(frozen=True)
class StructuralStats:
    degrees: tuple[int, ...]
    effective_degrees: tuple[int, ...]
    girth: float | int
    average_degree: Fraction
    light_vertices: tuple[int, ...]


def structural_stats(g: Graph) -> StructuralStats:
    return StructuralStats(
        degrees=tuple(g.degree(v) for v in g.vertices),
        effective_degrees=tuple(g.effective_degree(v) for v in g.vertices),
        girth=girth(g),
        average_degree=g.average_degree(),
        light_vertices=tuple(v for v in g.vertices if g.is_light(v)),
    )


def satisfies_euler_bound(g: Graph, min_girth: int | None = None) -> bool:
    """Necessary condition for planarity: ``|E| <= g/(g-2) (n-2)``.

    ``min_girth`` defaults to the actual girth (3 if that is smaller).
    Graphs with fewer than three vertices or no cycles pass trivially.
    """
    gval = girth(g) if min_girth is None else min_girth
    if gval == math.inf or g.n < 3:
        return True
    gval = max(3, int(gval))
    return g.m <= Fraction(gval, gval - 2) * (g.n - 2)


# ---------------------------------------------------------------------------
# witnesses

WITNESS_KINDS = (
    "degree-at-most-one",
    "adjacent-degree-twos",
    "effective-degree-two",
    "degree-three-two-light",
)


@dataclass(frozen=True)
class ConfigurationWitness:
    """A labelled vertex configuration.

    ``roles`` maps role names (``"v"``, ``"u"``, ``"u_prime"``, ``"x"`` ...)
    to a vertex id, a tuple of vertex ids, or ``None`` for absent roles.
    """

    kind: str
    roles: dict = field(hash=False)

    def __post_init__(self):
        if self.kind not in WITNESS_KINDS:
            raise ValueError(f"unknown witness kind {self.kind!r}")

    @property
    def vertices(self) -> frozenset[int]:
        out = set()
        for val in self.roles.values():
            if val is None:
                continue
            if isinstance(val, int):
                out.add(val)
            else:
                out.update(x for x in val if x is not None)
        return frozenset(out)

    def to_json(self) -> dict:
        return {"kind": self.kind, "roles": {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.roles.items()}}

    def check(self, g: Graph) -> bool:
        """Re-evaluate the degree/adjacency pattern against ``g``."""
        r = self.roles
        v = r["v"]
        if self.kind == "degree-at-most-one":
            return g.degree(v) <= 1
        if self.kind == "adjacent-degree-twos":
            w = r["w"]
            return g.has_edge(v, w) and g.degree(v) == 2 and g.degree(w) == 2
        if self.kind == "effective-degree-two":
            return g.effective_degree(v) <= 2 and 3 <= g.degree(v) <= 9
        light = r["light"]
        return (
            g.degree(v) == 3
            and len(light) >= 2
            and all(g.has_edge(v, u) and g.is_light(u) for u in light)
        )
