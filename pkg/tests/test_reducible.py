from fractions import Fraction as F

import pytest

from arboricity.arborization import ScheduleEntry, cells, covering_lhs, verify
from arboricity.gadgets import gadget_graph
from arboricity.graph import Graph
from arboricity.intervals import IntervalSet
from arboricity.reducible import (
    EPS_A,
    EPS_B,
    ExtensionError,
    arborization_of_deletion,
    extend_config_A,
    extend_config_B,
    schedule_config_A,
    schedule_config_B,
    threshold_a,
    threshold_b,
)


def iv(*pairs):
    return IntervalSet(pairs)


def star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def key(X=(), O=()):
    return frozenset(X), frozenset(O)


US = tuple(range(1, 8))


# -- thresholds -------------------------------------------------------------------------

def test_thresholds_are_tight_at_the_constants():
    assert threshold_a(EPS_A) == 1
    assert threshold_b(EPS_B) == 1
    assert threshold_a(EPS_A - F(1, 1000)) > 1 > threshold_a(EPS_A + F(1, 1000))
    assert threshold_b(EPS_B - F(1, 10**5)) > 1 > threshold_b(EPS_B + F(1, 10**5))


def test_eps_range_enforced():
    with pytest.raises(ValueError):
        schedule_config_A(0, US, 0, EPS_A + F(1, 1000))
    with pytest.raises(ValueError):
        schedule_config_A(0, US, 0, 0)
    with pytest.raises(ValueError):
        schedule_config_B(0, 1, 2, 0, 0, F(1, 100))


# -- degree-two star schedule -------------------------------------------------------------

def test_star_schedule_not_big():
    sched = schedule_config_A(0, US, 0, EPS_A)
    entry = sched[key(O=(0, 1))]
    assert entry.demand[0] == F(6, 7) and entry.demand[1] == F(1, 7)
    assert entry.demand[2] == 1
    free = sched[key(O=(3, 5))]
    assert free.cert[3] == iv((F(2, 7), F(3, 7)))
    assert free.cert[5] == iv((F(4, 7), F(5, 7)))


def test_star_schedule_big():
    sched = schedule_config_A(0, US, 1 - EPS_A, EPS_A)
    entry = sched[key(O=(0, 1, 2))]
    assert entry.demand[0] == 1
    assert entry.demand[1] == 0 and entry.demand[2] == 0
    assert entry.cert[1] == IntervalSet()


def test_star_big_boundary_is_strict():
    at = schedule_config_A(0, US, 1 - F(7, 5) * EPS_A, EPS_A)
    assert at[key(O=(0,))].demand[0] == F(6, 7)


@pytest.mark.parametrize("mu_B", [F(0), 1 - EPS_A])
def test_star_certificates_verify(mu_B):
    g = star(7)
    sched = schedule_config_A(0, US, mu_B, EPS_A)
    assert len(sched) == 3 ** 8
    for (X, O), entry in sched.items():
        assert entry.verify(g, X, O).ok


def test_star_centre_covering_sum_hits_one():
    # blocked set at the largest non-big measure and the largest offshoot set
    eps = EPS_A
    box = iv((0, 2 - eps))
    B = iv((0, 1 - F(7, 5) * eps))
    lists = {0: box - B, 1: box}
    o_v = iv((B.measure, B.measure + 2 - 2 * B.measure))
    offs = {0: o_v, 1: iv((0, 1))}
    assert lists[0].measure == 1 + F(2, 5) * eps
    sched = schedule_config_A(0, (1,), B.measure, eps)
    table = cells(lists, offs)
    assert covering_lhs(0, table, sched) == 1
    assert covering_lhs(1, table, sched) >= 1


# -- degree-three path schedule --------------------------------------------------------------

def test_path_schedule_big_side():
    sched = schedule_config_B(0, 1, 2, 1 - EPS_B, 0, EPS_B)
    entry = sched[key(O=(1,))]
    assert entry.demand == {1: 1, 2: 1, 0: 0}


def test_path_schedule_centre_free():
    sched = schedule_config_B(0, 1, 2, 0, 0, EPS_B)
    entry = sched[key(O=(1, 2))]
    assert entry.demand == {1: F(3, 5), 0: F(4, 5), 2: F(3, 5)}
    assert entry.cert[0] == iv((0, F(2, 5)), (F(3, 5), 1))
    assert entry.cert[2] == iv((F(2, 5), 1))


def test_path_schedule_centre_in_o():
    entry = schedule_config_B(0, 1, 2, 0, 0, EPS_B)[key(O=(0, 2))]
    assert entry.demand == {2: F(3, 5), 0: F(2, 5), 1: 1}


def test_path_schedule_centre_deleted():
    entry = schedule_config_B(0, 1, 2, 0, 0, EPS_B)[key(X=(0,), O=(1,))]
    assert entry.demand == {1: 1, 2: 1}


@pytest.mark.parametrize("mus", [(0, 0), (1 - EPS_B, 0), (1 - EPS_B, 1 - EPS_B)])
def test_path_certificates_verify(mus):
    g = Graph(3, [(0, 1), (0, 2)])
    sched = schedule_config_B(0, 1, 2, *mus, EPS_B)
    assert len(sched) == 27
    for (X, O), entry in sched.items():
        assert entry.verify(g, X, O).ok


def test_path_centre_covering_when_both_sides_offshoot():
    eps = EPS_B
    box = iv((0, 2 - eps))
    lists = {0: box, 1: box, 2: box}
    offs = {0: iv((0, 1)), 1: box, 2: box}
    sched = schedule_config_B(0, 1, 2, 0, 0, eps)
    lhs = covering_lhs(0, cells(lists, offs), sched)
    assert lhs == F(2, 5) + F(4, 5) * (1 - eps)
    assert lhs >= threshold_b(eps)


# -- end to end on the gadgets ----------------------------------------------------------------

def test_extend_gadget_a():
    g, wit = gadget_graph("A")
    phi, k = arborization_of_deletion(g, wit.roles["u"], EPS_A)
    assert k <= 2 - EPS_A
    res = extend_config_A(g, wit, phi)
    assert res.k == 2 - EPS_A
    assert verify(g, res.phi, k=res.k, exact=True).ok
    assert res.checks["mu_B"] <= 1 - EPS_A
    assert all(res.checks[f"covering_lhs[{w}]"] >= 1 for w in [wit.roles["v"], *wit.roles["u"]])


def test_extend_gadget_b():
    g, wit = gadget_graph("B")
    phi, k = arborization_of_deletion(g, [wit.roles["v"]], EPS_B)
    res = extend_config_B(g, wit, phi)
    assert verify(g, res.phi, k=2 - EPS_B, exact=True).ok
    assert set(res.phi) == set(range(g.n))
    assert res.to_json()["k"] == str(2 - EPS_B)


def test_extension_rejects_wrong_domain():
    g, wit = gadget_graph("A")
    phi, _ = arborization_of_deletion(g, wit.roles["u"], EPS_A)
    phi[wit.roles["u"][0]] = iv((0, 1))
    with pytest.raises(ExtensionError):
        extend_config_A(g, wit, phi)


def test_extension_rejects_invalid_input():
    g, wit = gadget_graph("B")
    phi, _ = arborization_of_deletion(g, [wit.roles["v"]], EPS_B)
    bad = {w: iv((0, 1)) for w in phi}
    with pytest.raises(ExtensionError):
        extend_config_B(g, wit, bad)


def test_extension_rejects_foreign_witness():
    ga, wa = gadget_graph("A")
    gb, wb = gadget_graph("B")
    phi, _ = arborization_of_deletion(gb, [wb.roles["v"]], EPS_B)
    with pytest.raises(ExtensionError):
        extend_config_B(gb, wa, phi)


def test_deletion_too_dense():
    k5 = Graph(5, [(a, b) for a in range(5) for b in range(a + 1, 5)])
    with pytest.raises(ExtensionError):
        arborization_of_deletion(k5, [0], EPS_A)
