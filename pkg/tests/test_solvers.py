import json
import random
from fractions import Fraction as F

import networkx as nx
import pytest

from arboricity.arborization import verify
from arboricity.corpus import CONNECTED_UPTO8, load_corpus, random_graph
from arboricity.graph import Graph, is_forest_mask, mask_of, named_graph
from arboricity.intervals import IntervalSet, segments
from arboricity.solvers import (
    ACYCLIC5_SETS,
    acyclic_coloring,
    arborization_from_acyclic5,
    arborization_from_cover,
    fractional_chromatic_number,
    fractional_vertex_arboricity,
    is_acyclic_coloring,
    largest_induced_forest,
    vertex_arboricity,
)


def test_va_examples():
    assert vertex_arboricity(named_graph("k4")).value == 2
    assert vertex_arboricity(named_graph("path", 5)).value == 1
    assert vertex_arboricity(named_graph("dodecahedron")).value == 2
    assert vertex_arboricity(named_graph("complete", 5)).value == 3


def test_va_witness_classes_are_forests():
    g = named_graph("complete", 6)
    res = vertex_arboricity(g)
    assert res.value == 3
    for c in set(res.witness.values()):
        assert is_forest_mask(g, mask_of(v for v, x in res.witness.items() if x == c))


def test_fva_tight_examples():
    assert fractional_vertex_arboricity(named_graph("k4")).value == 2
    assert fractional_vertex_arboricity(named_graph("cube")).value == F(8, 5)


def test_fva_cover_is_optimal_cover():
    g = named_graph("cube")
    res = fractional_vertex_arboricity(g)
    assert sum(res.witness.values()) == res.value
    for v in range(g.n):
        assert sum(w for f, w in res.witness.items() if v in f) >= 1
    assert res.certificate["enumeration_value"] == res.value
    assert res.lp.check_duality(g.n)


def test_chi_f_examples():
    assert fractional_chromatic_number(named_graph("k4")).value == 4
    assert fractional_chromatic_number(named_graph("cycle", 5)).value == F(5, 2)
    assert fractional_chromatic_number(named_graph("petersen")).value == F(5, 2)


def test_vertex_transitive_equality():
    for g in [named_graph("k4"), named_graph("cube"), named_graph("petersen")] + [named_graph("cycle", n) for n in range(3, 10)]:
        a = largest_induced_forest(g).value
        assert fractional_vertex_arboricity(g).value == F(g.n) / a


def test_chain_and_chi_relation_on_small_corpus():
    for g in load_corpus(CONNECTED_UPTO8):
        if g.n > 6:
            break
        a = largest_induced_forest(g).value
        f = fractional_vertex_arboricity(g).value
        assert F(g.n) / a <= f <= vertex_arboricity(g).value
        assert fractional_chromatic_number(g).value <= 2 * f


def test_result_json():
    data = fractional_vertex_arboricity(named_graph("cycle", 5)).to_json()
    assert data["invariant"] == "fva" and data["value"] == "5/4"
    json.dumps(data)


def test_empty_graph():
    assert fractional_vertex_arboricity(Graph(0)).value == 0
    assert vertex_arboricity(Graph(0)).value == 0


# -- acyclic colourings -----------------------------------------------------------

def test_acyclic_examples():
    k4 = named_graph("k4")
    assert is_acyclic_coloring(k4, acyclic_coloring(k4, 4), 4)
    assert acyclic_coloring(k4, 3) is None
    c5 = named_graph("cycle", 5)
    col = acyclic_coloring(c5, 3)
    assert col is not None and is_acyclic_coloring(c5, col, 3)


def test_acyclic_rejects_bichromatic_cycle():
    c4 = named_graph("cycle", 4)
    assert not is_acyclic_coloring(c4, {0: 1, 1: 2, 2: 1, 3: 2})
    assert acyclic_coloring(c4, 2) is None
    assert acyclic_coloring(c4, 3) is not None


def test_acyclic_none_is_exhaustive_on_small_graphs():
    from itertools import product

    for g in load_corpus(CONNECTED_UPTO8):
        if g.n > 5:
            break
        for k in (2, 3):
            found = acyclic_coloring(g, k)
            brute = any(is_acyclic_coloring(g, dict(enumerate(c)), k) for c in product(range(1, k + 1), repeat=g.n))
            assert (found is not None) == brute


def test_acyclic5_sets_cover_twice():
    for lo, hi, memb in segments(list(ACYCLIC5_SETS.values())):
        assert len(memb) == 2
    assert IntervalSet().union(*ACYCLIC5_SETS.values()) == IntervalSet([(0, F(5, 2))])
    assert all(s.measure == 1 for s in ACYCLIC5_SETS.values())


def test_acyclic5_conversion_on_c5():
    c5 = named_graph("cycle", 5)
    phi = arborization_from_acyclic5(c5, {v: v + 1 for v in range(5)})
    assert verify(c5, phi, k=F(5, 2), exact=True).ok


def test_acyclic5_conversion_rejects_bad_colouring():
    with pytest.raises(ValueError):
        arborization_from_acyclic5(named_graph("cycle", 4), {0: 1, 1: 2, 2: 1, 3: 2})


# -- cover conversion ----------------------------------------------------------------

def test_cover_on_tree():
    t = named_graph("path", 5)
    phi, k = arborization_from_cover(t, {frozenset(range(5)): 1})
    assert k == 1
    assert all(phi[v] == IntervalSet([(0, 1)]) for v in range(5))


@pytest.mark.parametrize("name,value", [("cube", F(8, 5)), ("dodecahedron", F(10, 7))])
def test_cover_from_optimum_verifies(name, value):
    g = named_graph(name)
    res = fractional_vertex_arboricity(g)
    phi, k = arborization_from_cover(g, res.witness)
    assert k == value
    assert verify(g, phi, k=k, exact=True).ok


def test_cover_errors():
    g = named_graph("cycle", 3)
    with pytest.raises(ValueError):
        arborization_from_cover(g, {frozenset({0, 1, 2}): 1})
    with pytest.raises(ValueError):
        arborization_from_cover(g, {frozenset({0, 1}): 1})


def test_random_graph_covers_verify():
    rng = random.Random(2)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 10), 0.4)
        res = fractional_vertex_arboricity(g)
        phi, k = arborization_from_cover(g, res.witness)
        assert k == res.value
        h = nx.Graph(g.edges())
        h.add_nodes_from(range(g.n))
        for lo, hi, memb in segments([phi[v] for v in range(g.n)]):
            assert nx.is_forest(h.subgraph(memb))
