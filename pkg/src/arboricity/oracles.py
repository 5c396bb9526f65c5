"""Exact pricing oracles: maximum-weight induced forest / independent set.

Both are depth-first branch and bound on bitmasks.  Vertices are branched
in order of decreasing weight (ties by id); the bound is the weight already
taken plus the weight of every undecided vertex that could still join.
Zero-weight vertices are never branched on and may be absent from the
returned set.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .graph import Graph, is_forest_mask, mask_of, members

__all__ = [
    "ForestOracle",
    "IndependentSetOracle",
    "max_weight_induced_forest",
    "max_weight_independent_set",
    "max_induced_forest_size",
    "enumerate_induced_forests",
    "enumerate_independent_sets",
    "brute_force_max_induced_forest",
    "GuardError",
]

ZERO = Fraction(0)


class GuardError(ValueError):
    """An enumeration was asked to run beyond its size guard."""


def _check_weights(g: Graph, weights: Sequence) -> list[Fraction]:
    if len(weights) != g.n:
        raise ValueError(f"expected {g.n} weights, got {len(weights)}")
    ws = [Fraction(w) for w in weights]
    for v, w in enumerate(ws):
        if w < 0:
            raise ValueError(f"negative weight {w} at vertex {v}")
    return ws


class ForestOracle:
    """Pricing over induced forests of ``g``."""

    kind = "forest"

    def __init__(self, g: Graph):
        self.g = g

    def feasible(self, mask: int) -> bool:
        return is_forest_mask(self.g, mask)

    def extend(self, mask: int) -> int:
        """Greedily grow ``mask`` to a maximal induced forest (ascending ids)."""
        for v in range(self.g.n):
            bit = 1 << v
            if not mask & bit and is_forest_mask(self.g, mask | bit):
                mask |= bit
        return mask

    def __call__(self, weights: Sequence, floor: Fraction | None = None) -> tuple[int, Fraction]:
        g = self.g
        ws = _check_weights(g, weights)
        order = sorted((v for v in range(g.n) if ws[v] > 0), key=lambda v: (-ws[v], v))
        adjm = g.masks
        n = g.n
        best_w = ZERO if floor is None else Fraction(floor)
        best_mask = 0

        # comp[v] is the component label of v inside the current forest, -1 outside.
        comp = [-1] * n

        def addable(u: int) -> bool:
            seen = set()
            nb = adjm[u]
            while nb:
                low = nb & -nb
                nb ^= low
                c = comp[low.bit_length() - 1]
                if c >= 0:
                    if c in seen:
                        return False
                    seen.add(c)
            return True

        def include(u: int) -> list[tuple[int, int]]:
            # returns undo log of (vertex, old label)
            undo = [(u, comp[u])]
            labels = set()
            nb = adjm[u]
            while nb:
                low = nb & -nb
                nb ^= low
                c = comp[low.bit_length() - 1]
                if c >= 0:
                    labels.add(c)
            comp[u] = u
            if labels:
                for w in range(n):
                    if comp[w] in labels:
                        undo.append((w, comp[w]))
                        comp[w] = u
            return undo

        def rec(cands: list[int], taken: int, taken_w: Fraction) -> None:
            nonlocal best_w, best_mask
            if taken_w > best_w:
                best_w, best_mask = taken_w, taken
            live = [u for u in cands if addable(u)]
            if taken_w + sum((ws[u] for u in live), ZERO) <= best_w:
                return
            # a vertex with at most one neighbour among taken and live vertices can never close a cycle
            pool = taken | mask_of(live)
            for u in live:
                if (adjm[u] & pool).bit_count() <= 1:
                    break
            else:
                u = live[0]
            rest = [w for w in live if w != u]
            undo = include(u)
            rec(rest, taken | (1 << u), taken_w + ws[u])
            for w, old in reversed(undo):
                comp[w] = old
            if (adjm[u] & pool).bit_count() > 1:
                rec(rest, taken, taken_w)

        rec(order, 0, ZERO)
        if floor is not None and best_mask == 0:
            return 0, ZERO
        return best_mask, best_w


class IndependentSetOracle:
    """Pricing over independent sets of ``g``."""

    kind = "independent"

    def __init__(self, g: Graph):
        self.g = g

    def feasible(self, mask: int) -> bool:
        return all(not (self.g.masks[v] & mask) for v in members(mask))

    def extend(self, mask: int) -> int:
        for v in range(self.g.n):
            if not mask >> v & 1 and not self.g.masks[v] & mask:
                mask |= 1 << v
        return mask

    def __call__(self, weights: Sequence, floor: Fraction | None = None) -> tuple[int, Fraction]:
        g = self.g
        ws = _check_weights(g, weights)
        order = sorted((v for v in range(g.n) if ws[v] > 0), key=lambda v: (-ws[v], v))
        best_w = ZERO if floor is None else Fraction(floor)
        best_mask = 0
        adjm = g.masks

        def rec(cands: list[int], taken: int, taken_w: Fraction) -> None:
            nonlocal best_w, best_mask
            if taken_w > best_w:
                best_w, best_mask = taken_w, taken
            if not cands or taken_w + sum((ws[u] for u in cands), ZERO) <= best_w:
                return
            u, rest = cands[0], cands[1:]
            rec([w for w in rest if not adjm[u] >> w & 1], taken | (1 << u), taken_w + ws[u])
            rec(rest, taken, taken_w)

        rec(order, 0, ZERO)
        if floor is not None and best_mask == 0:
            return 0, ZERO
        return best_mask, best_w


def max_weight_induced_forest(g: Graph, weights: Sequence) -> tuple[frozenset[int], Fraction]:
    mask, w = ForestOracle(g)(weights)
    return frozenset(members(mask)), w


def max_weight_independent_set(g: Graph, weights: Sequence) -> tuple[frozenset[int], Fraction]:
    mask, w = IndependentSetOracle(g)(weights)
    return frozenset(members(mask)), w


def max_induced_forest_size(g: Graph) -> tuple[int, frozenset[int]]:
    """``a(G)`` together with a witness forest."""
    s, w = max_weight_induced_forest(g, [1] * g.n)
    return int(w), s


def enumerate_induced_forests(g: Graph, maximal_only: bool = False, limit: int = 20) -> list[frozenset[int]]:
    """All vertex sets inducing a forest (including the empty set).

    With ``maximal_only`` only inclusion-maximal ones are returned.
    """
    if g.n > limit:
        raise GuardError(f"refusing to enumerate forests of a {g.n}-vertex graph (limit {limit})")
    out: list[int] = []
    n = g.n

    def rec(v: int, mask: int) -> None:
        if v == n:
            out.append(mask)
            return
        bit = 1 << v
        if is_forest_mask(g, mask | bit):
            rec(v + 1, mask | bit)
        rec(v + 1, mask)

    rec(0, 0)
    if maximal_only:
        out = [m for m in out if all(m >> v & 1 or not is_forest_mask(g, m | (1 << v)) for v in range(n))]
    return [frozenset(members(m)) for m in out]


def enumerate_independent_sets(g: Graph, maximal_only: bool = False, limit: int = 30) -> list[frozenset[int]]:
    if g.n > limit:
        raise GuardError(f"refusing to enumerate independent sets of a {g.n}-vertex graph (limit {limit})")
    out: list[int] = []

    def rec(v: int, mask: int) -> None:
        if v == g.n:
            out.append(mask)
            return
        if not g.masks[v] & mask:
            rec(v + 1, mask | (1 << v))
        rec(v + 1, mask)

    rec(0, 0)
    if maximal_only:
        out = [m for m in out if all(m >> v & 1 or g.masks[v] & m for v in range(g.n))]
    return [frozenset(members(m)) for m in out]


def brute_force_max_induced_forest(g: Graph, limit: int = 20) -> int:
    """``a(G)`` by scanning vertex subsets from largest to smallest size.

    Every subset of size at least the answer is tested, so the scan touches
    at most ``2**n`` subsets.
    """
    if g.n > limit:
        raise GuardError(f"refusing brute force on {g.n} vertices (limit {limit})")
    for k in range(g.n, 0, -1):
        for combo in combinations(range(g.n), k):
            if is_forest_mask(g, mask_of(combo)):
                return k
    return 0
