"""Graph invariants built on the exact LP and the pricing oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .arborization import Arborization, verify
from .graph import Graph, is_forest_mask, mask_of, members
from .intervals import IntervalSet
from .lp import CoverLp, LpError, LpResult, column_generation, solve_exact
from .oracles import (
    ForestOracle,
    IndependentSetOracle,
    enumerate_induced_forests,
    max_induced_forest_size,
)

__all__ = [
    "InvariantResult",
    "vertex_arboricity",
    "fractional_vertex_arboricity",
    "fractional_chromatic_number",
    "largest_induced_forest",
    "acyclic_coloring",
    "is_acyclic_coloring",
    "arborization_from_acyclic5",
    "arborization_from_cover",
    "ACYCLIC5_SETS",
]


@dataclass
class InvariantResult:
    """An exact invariant value with whatever witnessed it."""

    invariant: str
    value: Fraction
    witness: object = None
    certificate: dict = field(default_factory=dict)
    lp: LpResult | None = None

    def to_json(self) -> dict:
        return {
            "invariant": self.invariant,
            "value": str(self.value),
            "witness": _jsonable(self.witness),
            "certificate": _jsonable(self.certificate),
        }


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, IntervalSet):
        return obj.to_json()
    if isinstance(obj, dict):
        return {(",".join(map(str, sorted(k))) if isinstance(k, frozenset) else str(k)): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(x) for x in items]
    return obj


# ---------------------------------------------------------------------------
# integer invariants

def largest_induced_forest(g: Graph) -> InvariantResult:
    size, forest = max_induced_forest_size(g)
    return InvariantResult("a", Fraction(size), witness=sorted(forest), certificate={"method": "branch-and-bound"})


def vertex_arboricity(g: Graph) -> InvariantResult:
    """Smallest ``k`` admitting a partition into ``k`` induced forests."""
    if g.n == 0:
        return InvariantResult("va", Fraction(0), witness={})
    k = 1
    while True:
        col = _forest_partition(g, k)
        if col is not None:
            for c in range(1, k + 1):
                assert is_forest_mask(g, mask_of(v for v in col if col[v] == c))
            return InvariantResult("va", Fraction(k), witness=col, certificate={"lower_bound": f"no {k - 1}-arborization (exhaustive)"})
        k += 1


def _forest_partition(g: Graph, k: int) -> dict[int, int] | None:
    n = g.n
    classes = [0] * (k + 1)  # masks, 1-based
    color = [0] * n

    def fits(v: int, c: int) -> bool:
        return is_forest_mask(g, classes[c] | (1 << v))

    def pick() -> int:
        # most constrained: fewest admissible classes, then highest degree
        best, best_key = -1, None
        used = max(color) if n else 0
        for v in range(n):
            if color[v]:
                continue
            opts = sum(1 for c in range(1, min(k, used + 1) + 1) if fits(v, c))
            key = (opts, -g.degree(v), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def rec(done: int) -> bool:
        if done == n:
            return True
        v = pick()
        used = max(color)
        for c in range(1, min(k, used + 1) + 1):
            if fits(v, c):
                color[v] = c
                classes[c] |= 1 << v
                if rec(done + 1):
                    return True
                classes[c] &= ~(1 << v)
                color[v] = 0
        return False

    if rec(0):
        return {v: color[v] for v in range(n)}
    return None


# ---------------------------------------------------------------------------
# fractional invariants

def _ordered_cover(res: LpResult) -> dict[frozenset[int], Fraction]:
    return {frozenset(members(c)): res.primal[c] for c in res.columns if c in res.primal}


def fractional_vertex_arboricity(g: Graph, cross_check: bool | None = None) -> InvariantResult:
    """Optimum of the induced-forest covering LP, by column generation.

    For graphs with at most 12 vertices the value is also recomputed from
    the LP over all maximal induced forests and the two must agree.
    """
    if g.n == 0:
        return InvariantResult("fva", Fraction(0), witness={})
    oracle = ForestOracle(g)
    seed = oracle.extend(0)
    res = column_generation(g, oracle, seed_columns=[seed], extend=oracle.extend)
    cert = dict(res.certificate)
    if cross_check is None:
        cross_check = g.n <= 12
    if cross_check:
        cols = [mask_of(f) for f in enumerate_induced_forests(g, maximal_only=True)]
        full = solve_exact(CoverLp(g.n, cols))
        if full.value != res.value:
            raise LpError(f"column generation gave {res.value}, enumeration gave {full.value}")
        cert["enumeration_value"] = full.value
        cert["enumerated_columns"] = len(cols)
    return InvariantResult("fva", res.value, witness=_ordered_cover(res), certificate=cert, lp=res)


def fractional_chromatic_number(g: Graph) -> InvariantResult:
    if g.n == 0:
        return InvariantResult("chi_f", Fraction(0), witness={})
    oracle = IndependentSetOracle(g)
    res = column_generation(g, oracle, seed_columns=[oracle.extend(0)], extend=oracle.extend)
    return InvariantResult("chi_f", res.value, witness=_ordered_cover(res), certificate=dict(res.certificate), lp=res)


# ---------------------------------------------------------------------------
# acyclic colorings

def is_acyclic_coloring(g: Graph, coloring: Mapping[int, int], k: int | None = None) -> bool:
    if set(coloring) != set(range(g.n)):
        return False
    if k is not None and any(not 1 <= c <= k for c in coloring.values()):
        return False
    for u, v in g.edges():
        if coloring[u] == coloring[v]:
            return False
    cols = sorted(set(coloring.values()))
    masks = {c: mask_of(v for v in coloring if coloring[v] == c) for c in cols}
    return all(is_forest_mask(g, masks[a] | masks[b]) for i, a in enumerate(cols) for b in cols[i + 1:])


def acyclic_coloring(g: Graph, k: int) -> dict[int, int] | None:
    """A proper ``k``-colouring with no two-coloured cycle, or ``None`` if none exists."""
    if k < 1:
        raise ValueError("k must be positive")
    n = g.n
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    # reorder so each vertex after the first of its component has an earlier neighbour
    seen, bfs = set(), []
    for root in order:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            u = queue.pop(0)
            bfs.append(u)
            for w in sorted(g.adj[u], key=lambda x: (-g.degree(x), x)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    classes = [0] * (k + 1)
    color = {}

    def ok(v: int, c: int) -> bool:
        if g.masks[v] & classes[c]:
            return False
        bit = 1 << v
        for d in range(1, k + 1):
            if d != c and classes[d] and g.masks[v] & classes[d]:
                if not is_forest_mask(g, classes[c] | classes[d] | bit):
                    return False
        return True

    def rec(i: int, used: int) -> bool:
        if i == n:
            return True
        v = bfs[i]
        for c in range(1, min(k, used + 1) + 1):
            if ok(v, c):
                color[v] = c
                classes[c] |= 1 << v
                if rec(i + 1, max(used, c)):
                    return True
                classes[c] &= ~(1 << v)
                del color[v]
        return False

    if rec(0, 0):
        return dict(sorted(color.items()))
    return None


F = Fraction
ACYCLIC5_SETS = {
    1: IntervalSet([(0, 1)]),
    2: IntervalSet([(1, 2)]),
    3: IntervalSet([(2, F(5, 2)), (0, F(1, 2))]),
    4: IntervalSet([(F(1, 2), F(3, 2))]),
    5: IntervalSet([(F(3, 2), F(5, 2))]),
}


def arborization_from_acyclic5(g: Graph, coloring: Mapping[int, int]) -> Arborization:
    """Fractional 5/2-arborization from an acyclic colouring with colours 1..5."""
    if not is_acyclic_coloring(g, coloring, 5):
        raise ValueError("input is not an acyclic colouring with colours 1..5")
    return {v: ACYCLIC5_SETS[coloring[v]] for v in range(g.n)}


def arborization_from_cover(g: Graph, cover: Mapping) -> tuple[Arborization, Fraction]:
    """Lay the weighted forests end to end on ``[0, k)`` and keep, for each
    vertex, the leftmost measure-one part of the segments it belongs to.

    Returns the arborization and ``k`` (the total weight).
    """
    total = [Fraction(0)] * g.n
    items = []
    for forest, w in cover.items():
        w = Fraction(w)
        fs = frozenset(forest)
        if w < 0:
            raise ValueError("negative cover weight")
        if not is_forest_mask(g, mask_of(fs)):
            raise ValueError(f"cover member {sorted(fs)} is not an induced forest")
        items.append((fs, w))
        for v in fs:
            total[v] += w
    short = [v for v in range(g.n) if total[v] < 1]
    if short:
        raise ValueError(f"not a fractional cover: vertices {short} covered less than once")
    pieces: dict[int, list[tuple[Fraction, Fraction]]] = {v: [] for v in range(g.n)}
    start = Fraction(0)
    for fs, w in items:
        if w == 0:
            continue
        for v in fs:
            pieces[v].append((start, start + w))
        start += w
    phi = {v: IntervalSet(pieces[v]).prefix(1) for v in range(g.n)}
    rep = verify(g, phi, k=start, exact=True)
    if not rep.ok:
        raise AssertionError(f"cover construction failed verification: {rep}")
    return phi, start
