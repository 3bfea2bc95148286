import json

import pytest

from homlab.core import complete_graph, identity
from homlab.errors import InputError, StructureError
from homlab.io import (
    assignment_from_json,
    dump_homomorphism,
    dump_structure,
    load_assignment,
    load_structure,
    structure_from_json,
    structure_to_json,
)


def test_structure_round_trip(tmp_path):
    k3 = complete_graph(3)
    path = tmp_path / "k3.json"
    dump_structure(k3, path)
    assert load_structure(path) == k3
    assert structure_from_json(structure_to_json(k3)) == k3


def test_dump_is_canonical():
    assert dump_structure(complete_graph(3)) == dump_structure(complete_graph(3))
    doc = json.loads(dump_structure(complete_graph(2)))
    assert doc["relations"]["E"]["tuples"] == [["0", "1"], ["1", "0"]]


def test_empty_relation_needs_declared_arity():
    s = structure_from_json({"universe": ["a"], "relations": {"E": {"arity": 2, "tuples": []}}})
    assert s.signature.arity("E") == 2


@pytest.mark.parametrize("doc", [
    [],
    {"universe": ["a"]},
    {"universe": ["a"], "relations": {}, "extra": 1},
    {"universe": ["a"], "relations": {"E": {"arity": 2, "tuples": [["a", "b"]]}}},
    {"universe": ["a"], "relations": {"E": {"arity": 2, "tuples": [["a"]]}}},
    {"universe": ["a"], "relations": {"E": {"arity": 1, "tuples": [["a"]], "x": 0}}},
    {"universe": [1], "relations": {"E": {"arity": 1, "tuples": []}}},
])
def test_malformed_structures_rejected(doc):
    with pytest.raises(StructureError):
        structure_from_json(doc)


def test_bad_files(tmp_path):
    with pytest.raises(InputError):
        load_structure(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(InputError):
        load_structure(broken)


def test_assignment_format(tmp_path):
    path = tmp_path / "h.json"
    dump_homomorphism(identity(complete_graph(2)), path)
    assert load_assignment(path) == {"0": "0", "1": "1"}
    with pytest.raises(InputError):
        assignment_from_json({"assignment": {"0": 1}})
    with pytest.raises(InputError):
        assignment_from_json({"map": {}})
