import pytest
from hypothesis import given, strategies as st

from homlab.core import Structure, complete_graph, undirected_cycle, undirected_path
from homlab.errors import InputError, InvalidHomomorphism, NotAClique
from homlab.filters import all_filters, contains_filter, extend_to_ultrafilter, principal, trivial_filter
from homlab.gadgets import (
    Gadget,
    defines_clique,
    extract_ultrafilter,
    inequality,
    lift_hom,
    pp_relation,
    pp_relation_pinned,
)
from homlab.power import tolerant_power, ultrafilter_hom
from homlab.solver import hom_enumerate
from oracles import brute_homs

PATH3 = Gadget(undirected_path(3), "0", "3")
EDGE = Gadget(undirected_path(1), "0", "1")


def test_path_gadget_over_five_cycle_is_inequality():
    c5 = undirected_cycle(5)
    assert pp_relation(PATH3, c5) == inequality(c5)
    assert pp_relation_pinned(PATH3, c5) == inequality(c5)
    assert len(inequality(c5)) == 20


def test_edge_gadget_examples():
    assert pp_relation(EDGE, complete_graph(3)) == inequality(complete_graph(3))
    assert defines_clique(EDGE, complete_graph(3))
    assert not defines_clique(EDGE, undirected_cycle(5))
    assert defines_clique(PATH3, undirected_cycle(5))


def test_same_endpoint_gives_diagonal():
    g = Gadget(Structure.build(["x", "a"], {"E": [("x", "a"), ("a", "x")]}), "x", "x")
    assert pp_relation(g, complete_graph(2)) == {("0", "0"), ("1", "1")}
    assert pp_relation_pinned(g, complete_graph(2)) == {("0", "0"), ("1", "1")}


@given(st.integers(0, 3), st.integers(0, 3), st.sampled_from([undirected_cycle(5), complete_graph(3),
                                                              undirected_path(2)]))
def test_pp_relation_matches_brute_force(i, j, a):
    g = Gadget(undirected_path(3), str(i), str(j))
    expected = {(mp[g.x], mp[g.y]) for mp in brute_homs(g.structure, a)}
    assert pp_relation(g, a) == expected == pp_relation_pinned(g, a)


def test_lift_ultrafilter_coloring():
    c5 = undirected_cycle(5)
    p = tolerant_power(c5, principal(2, [0]))
    phi = ultrafilter_hom(p, principal(2, [0]))
    result = lift_hom(PATH3, p, phi)
    assert result.verdict and not result.violations
    # pairs adjacent in the K_5 power differ at coordinate 0: 25 * 20
    assert result.checked_pairs == 500
    assert all(h.is_valid() for h in result.pair_maps.values())


def test_lift_detects_corrupted_coloring():
    c5 = undirected_cycle(5)
    p = tolerant_power(c5, principal(2, [0]))
    phi = dict(ultrafilter_hom(p, principal(2, [0])).assignment)
    phi["0,0"] = phi["1,0"]
    result = lift_hom(PATH3, p, phi)
    assert not result.verdict
    assert ("0,0", "1,0") in result.violations


def test_lift_single_index():
    c5 = undirected_cycle(5)
    p = tolerant_power(c5, trivial_filter(1))
    for h in hom_enumerate(p.carrier, c5):
        assert lift_hom(PATH3, p, h).verdict


def test_lift_rejects_non_clique_gadget_and_partial_maps():
    c5 = undirected_cycle(5)
    p = tolerant_power(c5, trivial_filter(1))
    with pytest.raises(NotAClique):
        lift_hom(EDGE, p, {x: x for x in p.carrier.universe})
    with pytest.raises(InvalidHomomorphism):
        lift_hom(PATH3, p, {"0": "0"})


def test_extract_from_projections():
    k3 = complete_graph(3)
    p = tolerant_power(k3, trivial_filter(2))
    for i in (0, 1):
        w = extract_ultrafilter(p, ultrafilter_hom(p, principal(2, [i])))
        assert w.extracted == principal(2, [i])
        assert all(w.checks.values())
        assert set(w.members) == {x for x in map(frozenset, [[0], [1], [0, 1]]) if i in x}


def test_extract_rejects_constants_and_small_cliques():
    k3 = complete_graph(3)
    p = tolerant_power(k3, trivial_filter(2))
    with pytest.raises(InvalidHomomorphism):
        extract_ultrafilter(p, {f: "0" for f in p.carrier.universe})
    with pytest.raises(InputError):
        extract_ultrafilter(tolerant_power(complete_graph(2), trivial_filter(2)), {})


def test_extract_every_coloring_three_indices():
    k3 = complete_graph(3)
    for f in all_filters(3):
        p = tolerant_power(k3, f)
        for h in hom_enumerate(p.carrier, k3):
            u = extract_ultrafilter(p, h).extracted
            assert contains_filter(u, f)


def test_extract_on_k4_power_runs_restriction_check():
    k4 = complete_graph(4)
    f = trivial_filter(2)
    p = tolerant_power(k4, f)
    for h in hom_enumerate(p.carrier, k4, 40):
        w = extract_ultrafilter(p, h)
        assert w.checks["restriction_to_three"]
    for u in extend_to_ultrafilter(f):
        assert extract_ultrafilter(p, ultrafilter_hom(p, u)).extracted == u
