import json
from fractions import Fraction as F

import pytest

from arboricity.arborization import (
    CombineError,
    ScheduleEntry,
    arborization_from_json,
    arborization_to_json,
    blocked_set,
    cells,
    combine,
    covering_lhs,
    disjoint_pairs,
    normalize_degree_two,
    trim,
    verify,
)
from arboricity.graph import Graph, named_graph
from arboricity.intervals import IntervalSet


def iv(*pairs):
    return IntervalSet(pairs)


UNIT = iv((0, 1))


# -- verify ------------------------------------------------------------------------

def test_triangle_with_common_point_is_a_cycle():
    k3 = named_graph("complete", 3)
    rep = verify(k3, {v: UNIT for v in range(3)}, k=1)
    assert not rep.ok
    assert rep.violations[0].kind == "cycle"
    assert sorted(rep.violations[0].path) == [0, 1, 2]


def test_triangle_three_halves():
    k3 = named_graph("complete", 3)
    phi = {0: iv((0, 1)), 1: iv((F(1, 2), F(3, 2))), 2: iv((1, F(3, 2)), (0, F(1, 2)))}
    assert verify(k3, phi, k=F(3, 2), exact=True).ok
    assert not verify(k3, phi, k=F(5, 4)).ok


def test_measure_modes():
    g = named_graph("path", 2)
    big = {0: iv((0, 2)), 1: iv((0, 1))}
    assert verify(g, big, k=2).ok
    rep = verify(g, big, k=2, exact=True)
    assert [v.kind for v in rep.violations] == ["measure"]
    short = {0: iv((0, F(1, 2))), 1: UNIT}
    assert not verify(g, short, k=2).ok


def test_unknown_vertex():
    assert verify(Graph(2), {5: UNIT}).violations[0].kind == "domain"


def test_list_mode():
    g = named_graph("path", 2)
    lists = {0: iv((0, 1)), 1: iv((1, 2))}
    assert verify(g, {0: UNIT, 1: iv((1, 2))}, lists=lists).ok
    assert not verify(g, {0: UNIT, 1: UNIT}, lists=lists).ok
    assert not verify(g, {0: UNIT}, lists=lists).ok


def test_offshoot_mode_rejects_shared_offshoot_point():
    p3 = named_graph("path", 3)
    lists = {v: iv((0, 2)) for v in range(3)}
    offs = {0: iv((0, 1)), 2: iv((0, 1))}
    phi = {v: UNIT for v in range(3)}
    rep = verify(p3, phi, lists=lists, offshoots=offs)
    assert [v.kind for v in rep.violations] == ["offshoot-path"]
    assert rep.violations[0].pair == (0, 2)
    assert rep.violations[0].path == [0, 1, 2]
    # breaking the middle vertex off at the offshoot points fixes it
    phi[1] = iv((1, 2))
    assert verify(p3, phi, lists=lists, offshoots=offs).ok


def test_offshoot_must_sit_in_list():
    g = Graph(1)
    rep = verify(g, {0: UNIT}, lists={0: UNIT}, offshoots={0: iv((1, 2))})
    assert rep.violations[0].kind == "offshoot"


def test_demand_and_respects_modes():
    p3 = named_graph("path", 3)
    phi = {0: iv((0, F(1, 2))), 1: UNIT, 2: iv((F(1, 2), 1))}
    assert verify(p3, phi, demand={0: F(1, 2), 1: 1, 2: F(1, 2)}, respects={0, 2}).ok
    assert not verify(p3, phi, demand={0: 1}).ok
    clash = {0: UNIT, 1: UNIT, 2: UNIT}
    assert verify(p3, clash, demand={}).ok
    assert not verify(p3, clash, respects={0, 2}).ok
    assert not verify(p3, {0: iv((0, 2))}, demand={}).ok


def test_report_json():
    rep = verify(named_graph("complete", 3), {v: UNIT for v in range(3)})
    data = json.loads(json.dumps(rep.to_json()))
    assert data["ok"] is False
    assert data["violations"][0]["atom"] == ["0", "1"]


# -- blocked set ---------------------------------------------------------------------

def test_blocked_set_on_cycle():
    c4 = named_graph("cycle", 4)
    phi = {1: iv((0, 2)), 2: iv((0, 1)), 3: iv((0, 2))}
    assert blocked_set(c4, phi, 0, domain=[0, 1, 2, 3]) == iv((0, 1))


def test_blocked_set_empty_without_cycle():
    p = named_graph("path", 4)
    phi = {v: UNIT for v in range(4)}
    assert blocked_set(p, phi, 0) == IntervalSet()


def test_blocked_set_needs_vertex_in_domain():
    with pytest.raises(ValueError):
        blocked_set(named_graph("path", 2), {1: UNIT}, 0)


# -- cells and combining -------------------------------------------------------------

def test_disjoint_pairs_count():
    pairs = list(disjoint_pairs([1, 2, 3]))
    assert len(pairs) == 27 and len(set(pairs)) == 27
    assert all(not (x & o) for x, o in pairs)


def test_cells_single_vertex():
    table = cells({0: UNIT}, {0: iv((0, F(1, 2)))})
    assert table == {
        (frozenset(), frozenset({0})): iv((0, F(1, 2))),
        (frozenset(), frozenset()): iv((F(1, 2), 1)),
    }


def test_cells_partition_the_union_of_lists():
    lists = {0: iv((0, 2)), 1: iv((1, 3))}
    offs = {0: iv((0, 1)), 1: iv((2, 3))}
    table = cells(lists, offs)
    assert sum((c.measure for c in table.values()), F(0)) == 3
    assert table[(frozenset({1}), frozenset({0}))] == iv((0, 1))
    assert table[(frozenset({0}), frozenset({1}))] == iv((2, 3))


def test_cells_reject_offshoot_outside_list():
    with pytest.raises(ValueError):
        cells({0: UNIT}, {0: iv((1, 2))})


def full_schedule(vs, g):
    return {(X, O): ScheduleEntry({v: F(1) for v in vs if v not in X}, {v: UNIT for v in vs if v not in X}) for X, O in disjoint_pairs(vs)}


def test_combine_on_edge():
    g = named_graph("path", 2)
    lists = {0: iv((0, 2)), 1: iv((0, 2))}
    offs = {0: iv((0, 1)), 1: iv((1, 2))}
    sched = full_schedule([0, 1], g)
    table = cells(lists, offs)
    assert covering_lhs(0, table, sched) == 2
    phi = combine(g, lists, offs, sched)
    assert all(phi[v].measure == 1 for v in phi)
    assert verify(g, phi, lists=lists, offshoots=offs).ok


def test_combine_rejects_short_covering_sum():
    g = Graph(1)
    lists = {0: UNIT}
    offs = {0: iv((0, F(1, 2)))}
    sched = {
        (frozenset(), frozenset({0})): ScheduleEntry({0: F(1, 2)}, {0: iv((0, F(1, 2)))}),
        (frozenset(), frozenset()): ScheduleEntry({0: F(1)}, {0: UNIT}),
    }
    with pytest.raises(CombineError) as info:
        combine(g, lists, offs, sched)
    assert info.value.vertex == 0


def test_combine_rejects_bad_certificate():
    g = named_graph("path", 2)
    lists = {0: UNIT, 1: UNIT}
    offs = {0: UNIT, 1: UNIT}
    sched = full_schedule([0, 1], g)
    with pytest.raises(CombineError):
        combine(g, lists, offs, sched)


def test_missing_schedule_entry():
    with pytest.raises(CombineError):
        combine(Graph(1), {0: UNIT}, {}, {})
    with pytest.raises(KeyError):
        covering_lhs(0, cells({0: UNIT}, {}), {})


def test_schedule_entry_rejects_deleted_vertex():
    entry = ScheduleEntry({}, {0: UNIT})
    assert not entry.verify(Graph(1), frozenset({0}), frozenset()).ok
    assert not ScheduleEntry({0: F(2)}, {0: UNIT}).verify(Graph(1), frozenset(), frozenset()).ok


# -- normalization, trimming, json ---------------------------------------------------------

def test_normalize_degree_two():
    phi = {0: iv((0, 1)), 1: iv((F(1, 2), F(3, 2)))}
    out = normalize_degree_two(phi, 0, 1, F(1, 4))
    assert out[0] == iv((0, F(3, 4)), (F(3, 2), F(7, 4)))
    assert out[0].measure == 1
    assert (out[0] & out[1]).measure == F(1, 4)


def test_normalize_needs_enough_overlap():
    phi = {0: iv((0, 1)), 1: iv((1, 2))}
    with pytest.raises(ValueError):
        normalize_degree_two(phi, 0, 1, F(1, 4), k=2)


def test_trim_keeps_leftmost_unit():
    out = trim({0: iv((0, F(1, 2)), (1, 2)), 1: iv((0, F(1, 2)))})
    assert out[0] == iv((0, F(1, 2)), (1, F(3, 2)))
    assert out[1] == iv((0, F(1, 2)))


def test_json_round_trip():
    phi = {3: iv((0, F(2, 3))), 0: UNIT}
    data = arborization_to_json(phi)
    assert list(data) == ["0", "3"]
    assert arborization_from_json(json.loads(json.dumps(data))) == phi
