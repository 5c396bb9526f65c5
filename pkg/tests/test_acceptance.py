"""Acceptance suite: ten exact checks, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.  Every comparison is between
``Fraction`` values or integers; nothing is rounded.
"""

import random
import sys
import time
from fractions import Fraction as F

import pytest

from arboricity.arborization import cells, combine, covering_lhs, verify
from arboricity.corpus import (
    connected_graphs,
    random_graphs,
    random_offshoot_instance,
    random_sparse_graphs,
    girth5_fixtures,
)
from arboricity.discharging import THRESHOLD, detect_configurations, discharge
from arboricity.gadgets import gadget_graph
from arboricity.graph import girth, named_graph, to_graph6
from arboricity.intervals import segments
from arboricity.oracles import brute_force_max_induced_forest
from arboricity.reducible import EPS_A, EPS_B, arborization_of_deletion, extend_config_A, extend_config_B
from arboricity.solvers import (
    ACYCLIC5_SETS,
    acyclic_coloring,
    arborization_from_acyclic5,
    fractional_chromatic_number,
    fractional_vertex_arboricity,
    largest_induced_forest,
    vertex_arboricity,
)

_capture = None


@pytest.fixture(autouse=True)
def _terminal(capsys):
    global _capture
    _capture = capsys
    yield
    _capture = None


def report(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    if _capture is not None:
        with _capture.disabled():
            print("\n" + line, flush=True)
    else:
        print(line, flush=True)
    assert ok, line


# fva values shared between the chain and the chromatic check
_fva_cache = {}


def fva_of(g):
    key = to_graph6(g)
    if key not in _fva_cache:
        _fva_cache[key] = fractional_vertex_arboricity(g, cross_check=False).value
    return _fva_cache[key]


def chain_graphs():
    return connected_graphs(8) + random_graphs(seed=2024, count=200, max_n=14)


def test_criterion_1_tight_examples():
    expected = {"k4": (F(2), 5), "cube": (F(8, 5), 5), "dodecahedron": (F(10, 7), 300)}
    notes, ok = [], True
    for name, (value, budget) in expected.items():
        g = named_graph(name)
        t = time.perf_counter()
        res = fractional_vertex_arboricity(g)
        elapsed = time.perf_counter() - t
        good = res.value == value and res.lp.check_duality(g.n) and elapsed < budget
        ok &= good
        notes.append(f"{name}={res.value} ({elapsed:.2f}s)")
    report(1, ok, "fva with duality certificates: " + ", ".join(notes))


def test_criterion_2_induced_forest_sizes():
    expected = {"k4": 2, "cube": 5, "dodecahedron": 14}
    notes, ok = [], True
    for name, a in expected.items():
        g = named_graph(name)
        solved = largest_induced_forest(g).value
        brute = brute_force_max_induced_forest(g)
        ok &= solved == brute == a
        notes.append(f"a({name})={solved}/{brute}")
    report(2, ok, "solver/exhaustive " + ", ".join(notes))


def test_criterion_3_inequality_chain():
    t = time.perf_counter()
    graphs = chain_graphs()
    bad = []
    for g in graphs:
        a = largest_induced_forest(g).value
        f = fva_of(g)
        va = vertex_arboricity(g).value
        if not F(g.n) / a <= f <= va:
            bad.append(to_graph6(g))
    elapsed = time.perf_counter() - t
    report(3, not bad and elapsed < 1800, f"n/a <= fva <= va on {len(graphs) - len(bad)}/{len(graphs)} graphs ({elapsed:.0f}s)")


def test_criterion_4_fractional_chromatic_bound():
    graphs = chain_graphs()
    bad = [to_graph6(g) for g in graphs if fractional_chromatic_number(g).value > 2 * fva_of(g)]
    report(4, not bad, f"chi_f <= 2 fva on {len(graphs) - len(bad)}/{len(graphs)} graphs")


def test_criterion_5_acyclic_conversion():
    rng = random.Random(5)
    pool = connected_graphs(8)
    rng.shuffle(pool)
    checked, ok = 0, True
    for g in pool:
        col = acyclic_coloring(g, 5)
        if col is None:
            continue
        phi = arborization_from_acyclic5(g, col)
        ok &= verify(g, phi, k=F(5, 2), exact=True).ok
        used = sorted(set(col.values()))
        for lo, hi, memb in segments([ACYCLIC5_SETS[c] for c in used]):
            ok &= len(memb) <= 2
        checked += 1
        if checked == 25:
            break
    report(5, ok and checked == 25, f"{checked} acyclic 5-colourings converted and verified in [0, 5/2)")


def test_criterion_6_combiner():
    rng = random.Random(6)
    done, draws, ok = 0, 0, True
    while done < 100:
        draws += 1
        inst = random_offshoot_instance(rng)
        if inst is None:
            continue
        for (X, O), entry in inst.schedule.items():
            assert entry.verify(inst.g, X, O).ok
        table = cells(inst.lists, inst.offshoots)
        assert all(covering_lhs(v, table, inst.schedule) >= 1 for v in inst.lists)
        phi = combine(inst.g, inst.lists, inst.offshoots, inst.schedule)
        ok &= verify(inst.g, phi, lists=inst.lists, offshoots=inst.offshoots).ok
        done += 1
    report(6, ok, f"{done} random offshoot instances combined and verified ({draws} draws)")


def test_criterion_7_thresholds():
    a = (1 - F(5, 49)) + F(1, 7) * (1 - F(14, 5) * F(5, 49))
    b = F(2, 5) + F(4, 5) * (1 - F(81, 324))
    report(7, a == 1 and b == 1, f"degree-two star bound = {a}, degree-three path bound = {b}")


def test_criterion_8_extensions():
    notes, ok = [], True
    for kind, eps, removed_role, extend in (("A", EPS_A, "u", extend_config_A), ("B", EPS_B, "v", extend_config_B)):
        g, wit = gadget_graph(kind)
        removed = wit.roles[removed_role]
        removed = list(removed) if isinstance(removed, tuple) else [removed]
        t = time.perf_counter()
        phi, k0 = arborization_of_deletion(g, removed, eps)
        res = extend(g, wit, phi, eps)
        elapsed = time.perf_counter() - t
        good = verify(g, res.phi, k=2 - eps, exact=True).ok and set(res.phi) == set(range(g.n)) and elapsed < 60
        ok &= good
        notes.append(f"gadget {kind}: input {k0}, output {res.k} ({elapsed:.1f}s)")
    report(8, ok, "; ".join(notes))


def test_criterion_9_unavoidable_configurations():
    graphs = connected_graphs(9, sparse_only=True) + random_sparse_graphs(seed=9, count=500, max_n=40)
    ok = True
    for g in graphs:
        assert g.average_degree() < THRESHOLD
        led = discharge(g)
        ok &= bool(detect_configurations(g)) and led.conserved()
        ok &= sum(led.final.values(), F(0)) == sum(led.initial.values(), F(0))
    report(9, ok, f"configuration found and charge conserved on {len(graphs)} sparse graphs")


def test_criterion_10_girth_five_spot_check():
    bound = 2 - F(1, 324)
    notes, ok = [], True
    for name, g in girth5_fixtures().items():
        assert girth(g) >= 5
        f = fva_of(g)
        ok &= f <= bound
        notes.append(f"{name}={f}")
    report(10, ok, "fva <= 647/324 on " + ", ".join(notes))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
