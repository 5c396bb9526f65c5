"""Fractional arborizations as interval-set assignments.

A fractional arborization is a plain ``dict`` mapping vertex ids to
:class:`~arboricity.intervals.IntervalSet`; its domain is the vertex set of
the induced subgraph it lives on.  This module verifies the definitional
variants (plain, list, offshoot, demand, respects-O), computes blocked sets
and offshoot cells, and assembles local certificates into a global
assignment.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .graph import Graph, mask_of, members
from .intervals import IntervalSet, atoms, segments, transport

__all__ = [
    "Arborization",
    "Violation",
    "Report",
    "ScheduleEntry",
    "CombineError",
    "verify",
    "verify_arborization",
    "blocked_set",
    "cells",
    "covering_lhs",
    "combine",
    "trim",
    "normalize_degree_two",
    "disjoint_pairs",
    "arborization_to_json",
    "arborization_from_json",
]

Arborization = dict  # vertex -> IntervalSet

ZERO = Fraction(0)
ONE = Fraction(1)
UNIT = IntervalSet([(0, 1)])


@dataclass
class Violation:
    kind: str
    message: str
    vertex: int | None = None
    atom: tuple[Fraction, Fraction] | None = None
    pair: tuple[int, int] | None = None
    path: list[int] | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "message": self.message}
        if self.vertex is not None:
            out["vertex"] = self.vertex
        if self.atom is not None:
            out["atom"] = [str(self.atom[0]), str(self.atom[1])]
        if self.pair is not None:
            out["pair"] = list(self.pair)
        if self.path is not None:
            out["path"] = self.path
        return out


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        return "; ".join(v.message for v in self.violations)


def _path(g: Graph, within: int, a: int, b: int) -> list[int]:
    prev = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in members(g.masks[u] & within):
            if w not in prev:
                prev[w] = u
                queue.append(w)
    out = [b]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def _find_cycle(g: Graph, within: int) -> list[int]:
    """Some cycle inside the induced subgraph on ``within`` (which must have one)."""
    parent: dict[int, int | None] = {}
    for root in members(within):
        if root in parent:
            continue
        parent[root] = None
        stack = [root]
        while stack:
            u = stack.pop()
            for w in members(g.masks[u] & within):
                if w == parent[u]:
                    continue
                if w in parent:
                    # walk both up to the common ancestor
                    pu, pw = [u], [w]
                    seen = {u}
                    x = u
                    while parent[x] is not None:
                        x = parent[x]
                        pu.append(x)
                        seen.add(x)
                    y = w
                    while y not in seen:
                        y = parent[y]
                        pw.append(y)
                    top = pu.index(y)
                    return pu[: top + 1] + pw[-2::-1]
                parent[w] = u
                stack.append(w)
    return []


def _forest_components(g: Graph, mask: int) -> tuple[bool, list[int]]:
    comps = g.components(mask)
    edges2 = sum((g.masks[v] & mask).bit_count() for v in members(mask))
    return edges2 // 2 == mask.bit_count() - len(comps), comps


def verify(
    g: Graph,
    phi: Mapping[int, IntervalSet],
    *,
    k=None,
    lists: Mapping[int, IntervalSet] | None = None,
    offshoots: Mapping[int, IntervalSet] | None = None,
    respects: Iterable[int] | None = None,
    demand: Mapping[int, Fraction] | None = None,
    exact: bool = False,
    max_violations: int = 20,
) -> Report:
    """Check ``phi`` against any combination of the definitional variants.

    Always checked: every level set induces a forest in ``g`` restricted to
    ``phi``'s domain.  Then, depending on keywords:

    * ``k``: ``phi(v) ⊆ [0, k)`` and ``μ(phi(v)) ≥ 1`` (``== 1`` with ``exact``);
    * ``lists``: ``phi(v) ⊆ L(v)`` and ``μ(phi(v)) ≥ 1``;
    * ``offshoots`` (needs ``lists``): no two distinct vertices ``x``, ``y``
      joined in a level forest at a point of ``o(x) ∩ o(y)``;
    * ``demand``: ``phi(v) ⊆ [0, 1)`` and ``μ(phi(v)) ≥ f(v)``;
    * ``respects``: no two distinct vertices of ``O`` joined in a level forest.
    """
    rep = Report()
    add = rep.violations.append
    dom = sorted(phi)
    for v in dom:
        if not 0 <= v < g.n:
            add(Violation("domain", f"vertex {v} not in graph", vertex=v))
    if rep.violations:
        return rep

    if k is not None:
        box = IntervalSet([(0, Fraction(k))])
        for v in dom:
            if not phi[v] <= box:
                add(Violation("containment", f"phi({v}) = {phi[v].to_text()} leaves [0, {k})", vertex=v))
            m = phi[v].measure
            if m < 1 or (exact and m != 1):
                add(Violation("measure", f"phi({v}) has measure {m}", vertex=v))
    if lists is not None:
        for v in lists:
            if v not in phi:
                add(Violation("domain", f"listed vertex {v} has no assignment", vertex=v))
        for v in dom:
            if v not in lists:
                add(Violation("domain", f"vertex {v} has no list", vertex=v))
                continue
            if not phi[v] <= lists[v]:
                add(Violation("containment", f"phi({v}) not inside L({v})", vertex=v))
            if phi[v].measure < 1:
                add(Violation("measure", f"phi({v}) has measure {phi[v].measure} < 1", vertex=v))
        if offshoots is not None:
            for v, ov in offshoots.items():
                if v in lists and not ov <= lists[v]:
                    add(Violation("offshoot", f"o({v}) not inside L({v})", vertex=v))
    if demand is not None:
        for v in dom:
            if not phi[v] <= UNIT:
                add(Violation("containment", f"phi({v}) = {phi[v].to_text()} leaves [0, 1)", vertex=v))
            f = Fraction(demand.get(v, 0))
            if phi[v].measure < f:
                add(Violation("measure", f"phi({v}) has measure {phi[v].measure} < demand {f}", vertex=v))
    if rep.violations:
        return rep

    # level-set checks, piece by piece
    family = [phi[v] for v in dom]
    off_index = {}
    if offshoots is not None:
        for v in dom:
            if v in offshoots and offshoots[v]:
                off_index[len(family)] = v
                family.append(offshoots[v])
    o_set = mask_of(respects) if respects is not None else 0
    nphi = len(dom)
    for lo, hi, memb in segments(family):
        level = [dom[i] for i in memb if i < nphi]
        if len(level) < 2:
            continue
        mask = mask_of(level)
        is_forest, comps = _forest_components(g, mask)
        if not is_forest:
            cyc = _find_cycle(g, mask)
            add(Violation("cycle", f"level set at [{lo}, {hi}) contains cycle {cyc}", atom=(lo, hi), path=cyc))
            if len(rep.violations) >= max_violations:
                return rep
            continue
        marked = 0
        for i in memb:
            if i in off_index:
                marked |= 1 << off_index[i]
        for label, marks in (("offshoot-path", marked & mask), ("respects-path", o_set & mask)):
            if marks.bit_count() < 2:
                continue
            for comp in comps:
                inside = members(comp & marks)
                if len(inside) >= 2:
                    a, b = inside[0], inside[1]
                    path = _path(g, comp, a, b)
                    add(Violation(label, f"{label}: {a} and {b} share level [{lo}, {hi}) along {path}", atom=(lo, hi), pair=(a, b), path=path))
                    if len(rep.violations) >= max_violations:
                        return rep
    return rep


def verify_arborization(g: Graph, phi: Mapping[int, IntervalSet], k, exact: bool = False) -> Report:
    return verify(g, phi, k=k, exact=exact)


def trim(phi: Mapping[int, IntervalSet], amount=ONE) -> Arborization:
    """Keep the leftmost ``amount`` of each set (sets already that small are kept)."""
    out = {}
    for v, s in phi.items():
        out[v] = s.prefix(amount) if s.measure > amount else s
    return out


class CombineError(RuntimeError):
    def __init__(self, message: str, vertex: int | None = None, report: Report | None = None):
        self.vertex = vertex
        self.report = report
        super().__init__(message if report is None else f"{message}: {report}")


def blocked_set(g: Graph, phi: Mapping[int, IntervalSet], v: int, domain: Iterable[int] | None = None) -> IntervalSet:
    """Points at which some cycle through ``v`` in ``g[domain]`` is monochromatic off ``v``.

    ``domain`` defaults to ``phi``'s domain; it must contain ``v``.  At a
    point ``α`` the level set of ``domain - v`` is a forest, so such a cycle
    exists iff two neighbours of ``v`` sit in one component of it.
    """
    dom = set(phi) if domain is None else set(domain)
    if v not in dom:
        raise ValueError(f"vertex {v} is not in the domain")
    rest = sorted(dom - {v})
    sub = {u: phi[u] for u in rest}
    rep = verify(g, sub)
    if not rep.ok:
        raise CombineError("blocked_set needs a valid arborization", report=rep)
    nbrs = g.masks[v]
    out = []
    for lo, hi, memb in segments([sub[u] for u in rest]):
        mask = mask_of(rest[i] for i in memb)
        if (mask & nbrs).bit_count() < 2:
            continue
        for comp in g.components(mask):
            if (comp & nbrs).bit_count() >= 2:
                out.append((lo, hi))
                break
    return IntervalSet(out)


def disjoint_pairs(vertices: Iterable[int]):
    """All pairs ``(X, O)`` of disjoint subsets, as frozensets."""
    vs = sorted(vertices)
    for labels in product((0, 1, 2), repeat=len(vs)):
        yield (
            frozenset(v for v, t in zip(vs, labels) if t == 1),
            frozenset(v for v, t in zip(vs, labels) if t == 2),
        )


def cells(lists: Mapping[int, IntervalSet], offshoots: Mapping[int, IntervalSet]) -> dict[tuple[frozenset, frozenset], IntervalSet]:
    """Split the line by which vertices are outside their list (``X``) and
    which are inside their offshoot set (``O``).

    Only nonempty cells are returned.  Vertices inside ``L`` but outside
    ``o`` belong to neither ``X`` nor ``O``.
    """
    vs = sorted(lists)
    for v in vs:
        if not offshoots.get(v, IntervalSet()) <= lists[v]:
            raise ValueError(f"o({v}) is not contained in L({v})")
    family = [lists[v] for v in vs] + [offshoots.get(v, IntervalSet()) for v in vs]
    nv = len(vs)
    table: dict[tuple[frozenset, frozenset], list] = {}
    for atom, memb in atoms(family):
        X = frozenset(v for i, v in enumerate(vs) if i not in memb)
        O = frozenset(v for i, v in enumerate(vs) if i + nv in memb)
        table.setdefault((X, O), []).append(atom)
    return {key: IntervalSet().union(*parts) for key, parts in table.items()}


@dataclass
class ScheduleEntry:
    """Demand ``f`` on ``H - X`` and an ``f``-arborization certifying it."""

    demand: dict[int, Fraction]
    cert: dict[int, IntervalSet]

    def verify(self, g: Graph, X: frozenset, O: frozenset) -> Report:
        rep = Report()
        for v in self.cert:
            if v in X:
                rep.violations.append(Violation("domain", f"certificate assigns deleted vertex {v}", vertex=v))
        for v, f in self.demand.items():
            if not 0 <= f <= 1:
                rep.violations.append(Violation("demand", f"demand {f} at {v} outside [0, 1]", vertex=v))
        if rep.violations:
            return rep
        return verify(g, self.cert, demand=self.demand, respects=O)


def covering_lhs(v: int, cell_table: Mapping, schedule: Mapping) -> Fraction:
    """``Σ f_{X,O}(v) μ(C_{X,O})`` over the cells with ``v ∉ X``."""
    total = ZERO
    for (X, O), cell in cell_table.items():
        if v in X or not cell:
            continue
        if (X, O) not in schedule:
            raise KeyError(f"no schedule entry for nonempty cell X={sorted(X)}, O={sorted(O)}")
        total += Fraction(schedule[(X, O)].demand.get(v, 0)) * cell.measure
    return total


def combine(
    g: Graph,
    lists: Mapping[int, IntervalSet],
    offshoots: Mapping[int, IntervalSet],
    schedule: Mapping,
) -> Arborization:
    """Assemble cell certificates into an offshoot arborization of ``g[lists]``.

    Every certificate for a nonempty cell is verified, the covering sum is
    checked for every vertex, and the assembled assignment is verified in
    offshoot mode before and after trimming to measure exactly one.
    """
    vs = sorted(lists)
    table = cells(lists, offshoots)
    for (X, O), cell in table.items():
        if (X, O) not in schedule:
            raise CombineError(f"no schedule entry for nonempty cell X={sorted(X)}, O={sorted(O)}")
        entry = schedule[(X, O)]
        rep = entry.verify(g, X, O)
        if not rep.ok:
            raise CombineError(f"certificate for X={sorted(X)}, O={sorted(O)} fails", report=rep)
        missing = [v for v in vs if v not in X and v not in entry.cert and entry.demand.get(v, 0) > 0]
        if missing:
            raise CombineError(f"certificate for X={sorted(X)}, O={sorted(O)} omits {missing}")
    for v in vs:
        lhs = covering_lhs(v, table, schedule)
        if lhs < 1:
            raise CombineError(f"covering sum for vertex {v} is {lhs} < 1", vertex=v)
    pieces: dict[int, list[IntervalSet]] = {v: [] for v in vs}
    for (X, O), cell in table.items():
        entry = schedule[(X, O)]
        for v in vs:
            if v in X:
                continue
            got = transport(entry.cert.get(v, IntervalSet()), cell)
            if pieces[v] and any(not got.isdisjoint(p) for p in pieces[v]):
                raise CombineError(f"cell contributions overlap at vertex {v}", vertex=v)
            pieces[v].append(got)
    phi = {v: IntervalSet().union(*pieces[v]) for v in vs}
    rep = verify(g, phi, lists=lists, offshoots=offshoots)
    if not rep.ok:
        raise CombineError("combined assignment is not an offshoot arborization", report=rep)
    phi = trim(phi)
    rep = verify(g, phi, lists=lists, offshoots=offshoots)
    if not rep.ok:
        raise CombineError("trimmed assignment is not an offshoot arborization", report=rep)
    return phi


def normalize_degree_two(phi: Mapping[int, IntervalSet], u: int, u_prime: int, eps, k=None) -> Arborization:
    """Reassign ``u`` so that it overlaps ``u_prime`` in measure exactly ``eps``.

    The new set is ``([0, k) - phi(u')) ∪ C`` with ``C`` the leftmost part of
    ``phi(u) ∩ phi(u')`` of measure ``eps``; ``k`` defaults to ``2 - eps``.
    """
    eps = Fraction(eps)
    k = 2 - eps if k is None else Fraction(k)
    box = IntervalSet([(0, k)])
    a, b = phi[u], phi[u_prime]
    for name, s in (("u", a), ("u'", b)):
        if s.measure != 1 or not s <= box:
            raise ValueError(f"phi({name}) must have measure 1 inside [0, {k}), got {s.to_text()}")
    common = a & b
    if common.measure < eps:
        raise ValueError(f"overlap {common.measure} is smaller than {eps}")
    out = dict(phi)
    out[u] = (box - b) | common.prefix(eps)
    return out


def arborization_to_json(phi: Mapping[int, IntervalSet]) -> dict[str, list[list[str]]]:
    return {str(v): phi[v].to_json() for v in sorted(phi)}


def arborization_from_json(data: Mapping[str, list]) -> Arborization:
    return {int(v): IntervalSet.from_json(s) for v, s in data.items()}
