"""JSON file formats for structures and homomorphisms."""

from __future__ import annotations

import json
from pathlib import Path

from .core import Homomorphism, Structure
from .errors import InputError, StructureError


def structure_from_json(data) -> Structure:
    if not isinstance(data, dict):
        raise StructureError("structure document must be a JSON object")
    extra = set(data) - {"universe", "relations"}
    if extra:
        raise StructureError(f"unknown fields: {sorted(extra)}")
    if "universe" not in data or "relations" not in data:
        raise StructureError("structure needs 'universe' and 'relations'")
    universe = data["universe"]
    if not isinstance(universe, list) or not all(isinstance(x, str) for x in universe):
        raise StructureError("'universe' must be a list of strings")
    relations, arities = {}, {}
    if not isinstance(data["relations"], dict):
        raise StructureError("'relations' must be an object")
    for name, block in data["relations"].items():
        if not isinstance(block, dict):
            raise StructureError(f"relation {name!r} must be an object")
        extra = set(block) - {"arity", "tuples"}
        if extra:
            raise StructureError(f"unknown fields in relation {name!r}: {sorted(extra)}")
        arity, tuples = block.get("arity"), block.get("tuples")
        if not isinstance(arity, int) or isinstance(arity, bool):
            raise StructureError(f"relation {name!r} needs an integer 'arity'")
        if not isinstance(tuples, list) or not all(isinstance(t, list) for t in tuples):
            raise StructureError(f"relation {name!r} needs a list of tuples")
        if not all(isinstance(x, str) for t in tuples for x in t):
            raise StructureError(f"relation {name!r}: tuple entries must be strings")
        relations[name] = [tuple(t) for t in tuples]
        arities[name] = arity
    return Structure.build(universe, relations, arities)


def structure_to_json(s: Structure) -> dict:
    return {
        "universe": list(s.universe),
        "relations": {
            name: {"arity": arity, "tuples": [list(t) for t in s.sorted_tuples(name)]}
            for name, arity in s.signature.symbols
        },
    }


def load_structure(path) -> Structure:
    return structure_from_json(_read_json(path))


def dump_structure(s: Structure, path=None) -> str:
    text = json.dumps(structure_to_json(s), sort_keys=True, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text


def assignment_from_json(data) -> dict[str, str]:
    if not isinstance(data, dict) or set(data) != {"assignment"}:
        raise InputError("homomorphism document must be {\"assignment\": {...}}")
    assignment = data["assignment"]
    if not isinstance(assignment, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in assignment.items()):
        raise InputError("'assignment' must map element ids to element ids")
    return dict(assignment)


def load_assignment(path) -> dict[str, str]:
    return assignment_from_json(_read_json(path))


def dump_homomorphism(h: Homomorphism, path=None) -> str:
    text = json.dumps(h.to_json(), sort_keys=True, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text


def _read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
