import pytest
from hypothesis import given, strategies as st

from conftest import digraphs
from homlab.core import (
    Homomorphism,
    Signature,
    Structure,
    complete_graph,
    connected_components,
    disjoint_union,
    find_isomorphism,
    identity,
    induced_substructure,
    inverse,
    isolated_points,
    product,
    product_projections,
    reachability_power,
    undirected_cycle,
    validate_structure,
)
from homlab.cycles import directed_cycle
from homlab.errors import EmptySubset, NotBinary, StructureError, UnknownElement


def test_signature_invariants():
    with pytest.raises(ValueError):
        Signature(())
    with pytest.raises(ValueError):
        Signature((("E", 2), ("E", 1)))
    with pytest.raises(ValueError):
        Signature((("E", 0),))
    assert Signature((("E", 2), ("U", 1))).arity("U") == 1


def test_validate_clique_ok():
    assert validate_structure(complete_graph(3)) == []


def test_validate_unknown_element():
    sig = Signature((("E", 2),))
    s = Structure(sig, ("0", "1"), {"E": frozenset({("0", "z")})})
    problems = validate_structure(s)
    assert any("unknown element" in p and "'z'" in p for p in problems)


def test_validate_arity_mismatch():
    sig = Signature((("E", 2),))
    s = Structure(sig, ("0", "1", "2"), {"E": frozenset({("0", "1", "2")})})
    assert any("arity mismatch" in p for p in validate_structure(s))


def test_validate_empty_and_duplicates():
    sig = Signature((("E", 2),))
    assert "empty universe" in validate_structure(Structure(sig, (), {"E": frozenset()}))
    dup = Structure(sig, ("0", "0"), {"E": frozenset()})
    assert any("duplicate" in p for p in validate_structure(dup))


def test_build_rejects_bad_structure():
    with pytest.raises(StructureError):
        Structure.build(["0"], {"E": [("0", "1")]})


def test_induced_substructure_examples():
    k3 = complete_graph(3)
    assert induced_substructure(k3, ["0", "1"]) == complete_graph(2)
    path = induced_substructure(directed_cycle(6), ["0", "1", "2"])
    assert path.relations["E"] == {("0", "1"), ("1", "2")}
    assert induced_substructure(k3, k3.universe) == k3
    with pytest.raises(EmptySubset):
        induced_substructure(k3, [])
    with pytest.raises(UnknownElement):
        induced_substructure(k3, ["9"])


def test_product_and_projections():
    p = product(complete_graph(2), complete_graph(3))
    assert p.size == 6
    # K_2 x K_3 has 2 * 6 directed edges
    assert len(p.relations["E"]) == 12
    for pr in product_projections(complete_graph(2), complete_graph(3)):
        assert pr.is_valid()


def test_reachability_power_examples():
    two = reachability_power(directed_cycle(6), "E", 2)
    assert two.relations["E"] == {(str(i), str((i + 2) % 6)) for i in range(6)}
    blocks = connected_components(two)
    assert sorted(len(b) for b in blocks) == [3, 3]
    four = reachability_power(directed_cycle(4), "E", 4)
    assert four.relations["E"] == {(x, x) for x in four.universe}
    ternary = Structure.build(["0"], {"R": [("0", "0", "0")]})
    with pytest.raises(NotBinary):
        reachability_power(ternary, "R", 2)


@given(digraphs(4), st.integers(1, 4))
def test_reachability_matches_walks(s, k):
    edges = s.relations["E"]
    walks = {(x, x) for x in s.universe}
    for _ in range(k):
        walks = {(x, z) for x, y in walks for y2, z in edges if y == y2}
    assert reachability_power(s, "E", k).relations["E"] == walks


def test_components_examples():
    two = disjoint_union(directed_cycle(3), directed_cycle(3))
    assert sorted(len(b) for b in connected_components(two)) == [3, 3]
    assert len(connected_components(directed_cycle(6))) == 1
    assert len(connected_components(isolated_points(4))) == 4


def test_isomorphism_examples():
    h = find_isomorphism(directed_cycle(6), product(directed_cycle(2), directed_cycle(3)))
    assert h is not None and h.is_valid() and inverse(h).is_valid()
    assert find_isomorphism(complete_graph(3), complete_graph(3)) is not None
    assert find_isomorphism(directed_cycle(3), directed_cycle(4)) is None
    assert find_isomorphism(undirected_cycle(5), complete_graph(5)) is None


@given(digraphs(4), digraphs(4))
def test_isomorphism_symmetric(s1, s2):
    assert (find_isomorphism(s1, s2) is None) == (find_isomorphism(s2, s1) is None)


@given(digraphs(4), st.randoms(use_true_random=False))
def test_isomorphic_copy_is_found(s, rnd):
    perm = list(s.universe)
    rnd.shuffle(perm)
    ren = dict(zip(s.universe, perm))
    copy = Structure.build(s.universe, {"E": [(ren[a], ren[b]) for a, b in s.relations["E"]]},
                           arities={"E": 2})
    h = find_isomorphism(s, copy)
    assert h is not None and h.is_valid() and inverse(h).is_valid()


def test_homomorphism_violations_and_composition():
    k2, k3 = complete_graph(2), complete_graph(3)
    bad = Homomorphism(k3, k2, {"0": "0", "1": "1", "2": "0"})
    assert not bad.is_valid() and bad.violations()
    inc = Homomorphism(k2, k3, {"0": "0", "1": "1"})
    assert inc.is_valid()
    assert inc.then(identity(k3)).assignment == inc.assignment
