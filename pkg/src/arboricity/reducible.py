"""Extension procedures for the two reducible configurations.

Given a fractional ``(2 - ε)``-arborization of the graph with a small
configuration removed, both procedures build the offshoot assignment
``(L, o)`` on the configuration, write down the demand schedule with its
explicit interval certificates, run the cell combiner and glue the result
back onto the rest of the graph.  Every bound the argument relies on is
checked as an exact rational assertion, and the output is verified on the
whole host graph before it is returned.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .arborization import (
    Arborization,
    CombineError,
    ScheduleEntry,
    blocked_set,
    cells,
    combine,
    covering_lhs,
    disjoint_pairs,
    normalize_degree_two,
    trim,
    verify,
)
from .graph import ConfigurationWitness, Graph
from .intervals import IntervalSet, parse_rational
from .solvers import arborization_from_cover, fractional_vertex_arboricity

log = logging.getLogger(__name__)

__all__ = [
    "EPS_A",
    "EPS_B",
    "ExtensionError",
    "ExtensionResult",
    "schedule_config_A",
    "schedule_config_B",
    "extend_config_A",
    "extend_config_B",
    "arborization_of_deletion",
    "threshold_a",
    "threshold_b",
]

F = Fraction
EPS_A = F(5, 49)
EPS_B = F(1, 324)
EMPTY = IntervalSet()
UNIT = IntervalSet([(0, 1)])


def _iv(a, b) -> IntervalSet:
    return IntervalSet([(F(a), F(b))])


class ExtensionError(RuntimeError):
    """An extension step failed a bound, the covering sum or final verification."""


def threshold_a(eps) -> Fraction:
    """Worst-case covering sum for a degree-two neighbour: ``(1-ε) + (1/7)(1 - 14ε/5)``."""
    eps = F(eps)
    return (1 - eps) + F(1, 7) * (1 - F(14, 5) * eps)


def threshold_b(eps) -> Fraction:
    """Worst-case covering sum for the degree-three centre: ``2/5 + (4/5)(1 - 81ε)``."""
    eps = F(eps)
    return F(2, 5) + F(4, 5) * (1 - 81 * eps)


def _check_eps(eps, bound: Fraction) -> Fraction:
    eps = parse_rational(eps) if isinstance(eps, str) else F(eps)
    if not 0 < eps <= bound:
        raise ValueError(f"epsilon must lie in (0, {bound}], got {eps}")
    return eps


# ---------------------------------------------------------------------------
# schedules


def schedule_config_A(
    v: int,
    us: Sequence[int],
    mu_B,
    eps,
) -> dict[tuple[frozenset, frozenset], ScheduleEntry]:
    """Demand functions and certificates on the star with centre ``v`` and leaves ``us``.

    The split is on whether ``μ(B) > 1 - 7ε/5`` while ``v`` is an offshoot
    vertex.  Leaves outside ``X ∪ O`` always demand everything.
    """
    eps = _check_eps(eps, EPS_A)
    mu_B = F(mu_B)
    big = mu_B > 1 - F(7, 5) * eps
    sched = {}
    for X, O in disjoint_pairs([v, *us]):
        demand, cert = {}, {}
        free = [u for u in us if u not in X and u not in O]
        off = [u for u in us if u in O]
        for u in free:
            demand[u], cert[u] = F(1), UNIT
        if v in X:
            for u in off:
                demand[u], cert[u] = F(1), UNIT
        elif v in O and big:
            demand[v], cert[v] = F(1), UNIT
            for u in off:
                demand[u], cert[u] = F(0), EMPTY
        elif v in O:
            demand[v], cert[v] = F(6, 7), _iv(0, F(6, 7))
            for u in off:
                demand[u], cert[u] = F(1, 7), _iv(F(6, 7), 1)
        else:
            demand[v], cert[v] = F(1), UNIT
            for u in off:
                i = us.index(u) + 1
                demand[u], cert[u] = F(1, 7), _iv(F(i - 1, 7), F(i, 7))
        _assert_props_a(v, us, X, O, demand, big)
        sched[(X, O)] = ScheduleEntry(demand, cert)
    return sched


def _assert_props_a(v, us, X, O, f, big) -> None:
    exempt = v in O and big
    for w in [v, *us]:
        if w not in X and w not in O:
            assert f[w] == 1, (X, O, w)
    if v not in X:
        assert f[v] >= F(6, 7)
    if exempt:
        assert f[v] == 1
    for u in us:
        if u not in X and not exempt:
            assert f[u] >= F(1, 7)


def schedule_config_B(
    v: int,
    v1: int,
    v2: int,
    mu_b1,
    mu_b2,
    eps,
) -> dict[tuple[frozenset, frozenset], ScheduleEntry]:
    """Demand functions and certificates on the path ``v1 - v - v2``."""
    eps = _check_eps(eps, EPS_B)
    big = {v1: F(mu_b1) > 1 - 17 * eps, v2: F(mu_b2) > 1 - 17 * eps}
    sched = {}
    for X, O in disjoint_pairs([v, v1, v2]):
        demand, cert = {}, {}
        live = [w for w in (v, v1, v2) if w not in X]
        heavy_side = [w for w in (v1, v2) if w in O and big[w]]
        in_o = [w for w in (v1, v2) if w in O]
        if heavy_side:
            for w in (v1, v2):
                if w not in X:
                    demand[w], cert[w] = F(1), UNIT
            if v not in X:
                demand[v], cert[v] = F(0), EMPTY
        elif in_o and v not in X:
            a = in_o[0]
            b = v2 if a == v1 else v1
            demand[a], cert[a] = F(3, 5), _iv(0, F(3, 5))
            if v in O:
                demand[v], cert[v] = F(2, 5), _iv(F(3, 5), 1)
                other = _iv(0, F(3, 5))
            else:
                demand[v], cert[v] = F(4, 5), _iv(F(3, 5), 1) | _iv(0, F(2, 5))
                other = _iv(F(2, 5), 1)
            if b in O:
                demand[b], cert[b] = F(3, 5), other
            elif b not in X:
                demand[b], cert[b] = F(1), UNIT
        else:
            for w in live:
                demand[w], cert[w] = F(1), UNIT
        _assert_props_b(v, v1, v2, X, O, demand, big)
        sched[(X, O)] = ScheduleEntry(demand, cert)
    return sched


def _assert_props_b(v, v1, v2, X, O, f, big) -> None:
    exempt = any(w in O and big[w] for w in (v1, v2))
    for w in (v1, v2):
        if w not in X and w not in O:
            assert f[w] == 1
        if w not in X:
            assert f[w] >= F(3, 5)
        if w in O and big[w]:
            assert f[w] == 1
    if not exempt:
        if v not in X and v not in O:
            assert f[v] >= F(4, 5)
        if v in O:
            assert f[v] >= F(2, 5)


# ---------------------------------------------------------------------------
# extensions


@dataclass
class ExtensionResult:
    phi: Arborization
    k: Fraction
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "k": str(self.k),
            "phi": {str(v): self.phi[v].to_json() for v in sorted(self.phi)},
            "checks": {key: (str(val) if isinstance(val, Fraction) else val) for key, val in self.checks.items()},
        }


def _prepare(g: Graph, phi: Mapping[int, IntervalSet], domain: set[int], k: Fraction) -> Arborization:
    if set(phi) != domain:
        raise ExtensionError(f"input assignment covers {sorted(phi)}, expected {sorted(domain)}")
    rep = verify(g, phi, k=k)
    if not rep.ok:
        raise ExtensionError(f"input is not a fractional {k}-arborization: {rep}")
    return trim(phi)


def _union(phi: Mapping[int, IntervalSet], *vs) -> IntervalSet:
    return IntervalSet().union(*(phi[w] for w in vs if w is not None))


def _run_combine(g, lists, offs, sched, checks):
    table = cells(lists, offs)
    for w in sorted(lists):
        checks[f"covering_lhs[{w}]"] = covering_lhs(w, table, sched)
    try:
        return combine(g, lists, offs, sched)
    except CombineError as exc:
        raise ExtensionError(str(exc)) from exc


def _finish(g: Graph, phi: Arborization, k: Fraction, checks: dict) -> ExtensionResult:
    rep = verify(g, phi, k=k, exact=True)
    if set(phi) != set(range(g.n)) or not rep.ok:
        raise ExtensionError(f"extended assignment fails verification: {rep}")
    return ExtensionResult(dict(sorted(phi.items())), k, checks)


def extend_config_A(g: Graph, witness: ConfigurationWitness, phi: Mapping[int, IntervalSet], eps=EPS_A) -> ExtensionResult:
    """Extend an arborization of ``g - {u_i}`` across the star at ``v``."""
    eps = _check_eps(eps, EPS_A)
    if not witness.check(g) or "u" not in witness.roles:
        raise ExtensionError("witness does not match the host graph")
    r = witness.roles
    v, us, ups = r["v"], tuple(r["u"]), tuple(r["u_prime"])
    k = 2 - eps
    phi = _prepare(g, phi, set(range(g.n)) - set(us), k)
    box = IntervalSet([(0, k)])
    checks: dict = {}

    B = blocked_set(g, phi, v)
    checks["mu_B"] = B.measure
    if not B.measure <= 1 - eps:
        raise ExtensionError(f"blocked set too large: {B.measure} > 1 - eps")
    lists = {v: box - B}
    offs = {v: lists[v] & _union(phi, r["x"], r["y"])}
    checks["mu_o_v"] = offs[v].measure
    if not offs[v].measure <= 2 - 2 * B.measure:
        raise ExtensionError(f"offshoot of v too large: {offs[v].measure} > 2 - 2 mu(B)")
    for u, up in zip(us, ups):
        lists[u] = box
        offs[u] = phi[up]

    sched = schedule_config_A(v, us, B.measure, eps)
    psi = _run_combine(g, lists, offs, sched, checks)
    out = {w: s for w, s in phi.items() if w != v}
    out.update(psi)
    return _finish(g, out, k, checks)


def extend_config_B(g: Graph, witness: ConfigurationWitness, phi: Mapping[int, IntervalSet], eps=EPS_B) -> ExtensionResult:
    """Extend an arborization of ``g - v`` across the path ``v1 - v - v2``."""
    eps = _check_eps(eps, EPS_B)
    if witness.kind != "degree-three-two-light" or not witness.check(g):
        raise ExtensionError("witness does not match the host graph")
    r = witness.roles
    v, v1, v2, z = r["v"], r["v1"], r["v2"], r["z"]
    k = 2 - eps
    phi = _prepare(g, phi, set(range(g.n)) - {v}, k)
    box = IntervalSet([(0, k)])
    checks: dict = {}

    # make each degree-two neighbour overlap its far end in exactly eps
    for side in (0, 1):
        for near, far in (("u", "u_prime"), ("w", "w_prime")):
            a, b = r[near][side], r[far][side]
            if a is not None:
                phi = normalize_degree_two(phi, a, b, eps, k)
                assert (phi[a] & phi[b]).measure == eps
    rep = verify(g, phi, k=k, exact=True)
    if not rep.ok:
        raise ExtensionError(f"normalization broke the input: {rep}")

    lists, offs, mu_b = {}, {}, {}
    rest = set(phi)
    for side, (vi, vo) in enumerate(((v1, v2), (v2, v1))):
        b = blocked_set(g, phi, vi, domain=rest - {vo})
        mu_b[vi] = b.measure
        checks[f"mu_b[{vi}]"] = b.measure
        if not b.measure <= 1 - eps:
            raise ExtensionError(f"b({vi}) too large: {b.measure} > 1 - eps")
        lists[vi] = box - b
        reach = _union(phi, r["x"][side], r["y"][side])
        for near, far in (("u", "u_prime"), ("w", "w_prime")):
            a = r[near][side]
            if a is not None:
                reach = reach | (phi[a] & phi[r[far][side]])
        offs[vi] = lists[vi] & reach
        checks[f"mu_o[{vi}]"] = offs[vi].measure
        if not offs[vi].measure <= 2 + 6 * eps - 2 * b.measure:
            raise ExtensionError(f"offshoot of {vi} too large: {offs[vi].measure}")
    lists[v] = box
    offs[v] = phi[z]

    sched = schedule_config_B(v, v1, v2, mu_b[v1], mu_b[v2], eps)
    psi = _run_combine(g, lists, offs, sched, checks)
    out = {w: s for w, s in phi.items() if w not in (v1, v2)}
    out.update(psi)
    return _finish(g, out, k, checks)


def arborization_of_deletion(g: Graph, removed, eps) -> tuple[Arborization, Fraction]:
    """A fractional arborization of ``g - removed`` from its optimal forest cover.

    Returns the assignment (in ``g``'s vertex ids) and the cover value.
    Raises :class:`ExtensionError` if the value exceeds ``2 - eps``.
    """
    eps = F(eps)
    sub, keep = g.delete(removed)
    res = fractional_vertex_arboricity(sub, cross_check=False)
    if res.value > 2 - eps:
        raise ExtensionError(f"fva of the deleted graph is {res.value} > 2 - {eps}")
    phi, k = arborization_from_cover(sub, res.witness)
    return {keep[i]: s for i, s in phi.items()}, k
