"""Finite relational structures and the constructions shared by every module."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    BudgetExceeded,
    EmptySubset,
    NotBinary,
    SignatureMismatch,
    StructureError,
    UnknownElement,
)

DEFAULT_ISO_BUDGET = 30


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.symbols:
            raise StructureError("signature must contain at least one symbol")
        names = [name for name, _ in self.symbols]
        if len(set(names)) != len(names):
            raise StructureError(f"duplicate relation symbols in {names}")
        for name, arity in self.symbols:
            if not isinstance(arity, int) or arity < 1:
                raise StructureError(f"symbol {name!r} has invalid arity {arity!r}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def arity(self, name: str) -> int:
        for sym, arity in self.symbols:
            if sym == name:
                return arity
        raise KeyError(name)


@dataclass(frozen=True)
class Structure:
    """A finite relational structure.

    ``universe`` fixes the canonical element order used for every
    tie-breaking rule downstream. Relations are frozensets of id tuples.
    Construct through :meth:`build` unless the input is already normalized;
    the raw constructor does not validate, so :func:`validate_structure`
    can report on malformed values.
    """

    signature: Signature
    universe: tuple[str, ...]
    relations: Mapping[str, frozenset] = field(compare=True)

    def __hash__(self):
        return hash((self.signature, self.universe,
                     frozenset((k, v) for k, v in self.relations.items())))

    @classmethod
    def build(cls, universe: Iterable, relations: Mapping[str, Iterable],
              arities: Mapping[str, int] | None = None) -> "Structure":
        """Normalize ids to strings, infer arities from tuples, and validate.

        ``arities`` is required for relations given without any tuple.
        """
        universe = tuple(str(x) for x in universe)
        arities = dict(arities or {})
        rels = {}
        symbols = []
        for name, tuples in relations.items():
            tuples = frozenset(tuple(str(x) for x in t) for t in tuples)
            if name not in arities:
                lengths = {len(t) for t in tuples}
                if len(lengths) != 1:
                    raise StructureError(
                        f"cannot infer arity of {name!r}; pass it explicitly")
                arities[name] = lengths.pop()
            symbols.append((name, arities[name]))
            rels[name] = tuples
        s = cls(Signature(tuple(symbols)), universe, rels)
        problems = validate_structure(s)
        if problems:
            raise StructureError("; ".join(problems))
        return s

    @property
    def size(self) -> int:
        return len(self.universe)

    @cached_property
    def pos(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.universe)}

    @cached_property
    def int_relations(self) -> dict[str, tuple[tuple[int, ...], ...]]:
        """Relations as sorted tuples of universe positions."""
        pos = self.pos
        return {name: tuple(sorted(tuple(pos[x] for x in t) for t in ts))
                for name, ts in self.relations.items()}

    def sorted_tuples(self, name: str) -> list[tuple[str, ...]]:
        u = self.universe
        return [tuple(u[i] for i in t) for t in self.int_relations[name]]

    def has(self, name: str, tup) -> bool:
        return tuple(tup) in self.relations[name]


def validate_structure(s: Structure) -> list[str]:
    """Return the list of invariant violations (empty when well formed)."""
    problems = []
    if not s.universe:
        problems.append("empty universe")
    seen = set()
    for x in s.universe:
        if x in seen:
            problems.append(f"duplicate element {x!r}")
        seen.add(x)
    declared = dict(s.signature.symbols)
    for name in declared:
        if name not in s.relations:
            problems.append(f"missing relation for symbol {name!r}")
    for name, tuples in s.relations.items():
        if name not in declared:
            problems.append(f"relation {name!r} not in signature")
            continue
        for t in sorted(tuples):
            if len(t) != declared[name]:
                problems.append(
                    f"arity mismatch: {name} tuple {list(t)} has length "
                    f"{len(t)}, expected {declared[name]}")
            for x in t:
                if x not in seen:
                    problems.append(f"unknown element {x!r} in {name} tuple {list(t)}")
    return problems


def check_same_signature(s1: Structure, s2: Structure):
    if s1.signature != s2.signature:
        raise SignatureMismatch(
            f"signatures differ: {s1.signature.symbols} vs {s2.signature.symbols}")


@dataclass(frozen=True)
class Homomorphism:
    source: Structure
    target: Structure
    assignment: Mapping[str, str]

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.assignment.items())))

    def __call__(self, x: str) -> str:
        return self.assignment[x]

    def violations(self, limit: int = 20) -> list[str]:
        return homomorphism_violations(self.source, self.target, self.assignment, limit)

    def is_valid(self) -> bool:
        return not self.violations(limit=1)

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """Composite map: apply ``self`` first, then ``other``."""
        return Homomorphism(self.source, other.target,
                            {x: other.assignment[y] for x, y in self.assignment.items()})

    def to_json(self) -> dict:
        return {"assignment": {x: self.assignment[x] for x in self.source.universe}}


def homomorphism_violations(source: Structure, target: Structure,
                            assignment: Mapping[str, str], limit: int = 20) -> list[str]:
    problems = []
    if source.signature != target.signature:
        return ["signature mismatch"]
    tpos = target.pos
    for x in source.universe:
        if x not in assignment:
            problems.append(f"element {x!r} unassigned")
        elif assignment[x] not in tpos:
            problems.append(f"image {assignment[x]!r} of {x!r} not in target")
    if problems:
        return problems[:limit]
    for name in source.signature.names:
        rel = target.relations[name]
        for t in source.sorted_tuples(name):
            image = tuple(assignment[x] for x in t)
            if image not in rel:
                problems.append(f"{name}{list(t)} maps to {list(image)} not in target")
                if len(problems) >= limit:
                    return problems
    return problems


def require_valid(h: Homomorphism, error, what: str = "map"):
    problems = h.violations()
    if problems:
        raise error(f"{what} is not a homomorphism: " + "; ".join(problems[:3]))
    return h


def identity(s: Structure) -> Homomorphism:
    return Homomorphism(s, s, {x: x for x in s.universe})


def induced_substructure(s: Structure, subset: Iterable[str]) -> Structure:
    subset = set(subset)
    if not subset:
        raise EmptySubset("subset must be nonempty")
    unknown = subset - set(s.universe)
    if unknown:
        raise UnknownElement(f"elements not in universe: {sorted(unknown)}")
    rels = {name: frozenset(t for t in ts if all(x in subset for x in t))
            for name, ts in s.relations.items()}
    return Structure(s.signature, tuple(x for x in s.universe if x in subset), rels)


def inclusion(sub: Structure, s: Structure) -> Homomorphism:
    return Homomorphism(sub, s, {x: x for x in sub.universe})


def pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


def product(s1: Structure, s2: Structure) -> Structure:
    """Categorical product: a tuple of pairs is related iff both coordinate tuples are."""
    check_same_signature(s1, s2)
    universe = tuple(pair_id(a, b) for a in s1.universe for b in s2.universe)
    rels = {}
    for name in s1.signature.names:
        rels[name] = frozenset(
            tuple(pair_id(a, b) for a, b in zip(t1, t2))
            for t1 in s1.relations[name] for t2 in s2.relations[name])
    return Structure(s1.signature, universe, rels)


def product_projections(s1: Structure, s2: Structure):
    p = product(s1, s2)
    left = {pair_id(a, b): a for a in s1.universe for b in s2.universe}
    right = {pair_id(a, b): b for a in s1.universe for b in s2.universe}
    return Homomorphism(p, s1, left), Homomorphism(p, s2, right)


def reachability_power(s: Structure, symbol: str, length: int) -> Structure:
    """Binary structure of pairs joined by a directed walk of exactly ``length`` steps."""
    if symbol not in s.relations or s.signature.arity(symbol) != 2:
        raise NotBinary(f"{symbol!r} is not a binary symbol of the structure")
    if length < 1:
        raise ValueError("walk length must be positive")
    succ = defaultdict(set)
    for u, v in s.relations[symbol]:
        succ[u].add(v)
    pairs = set()
    for u in s.universe:
        frontier = {u}
        for _ in range(length):
            frontier = set().union(*(succ[w] for w in frontier)) if frontier else set()
        pairs.update((u, v) for v in frontier)
    return Structure(Signature(((symbol, 2),)), s.universe, {symbol: frozenset(pairs)})


def connected_components(s: Structure) -> list[list[str]]:
    """Blocks of the symmetrized union of all relations, each in universe order."""
    adj = defaultdict(set)
    for ts in s.relations.values():
        for t in ts:
            for x in t:
                adj[x].update(t)
    seen = set()
    blocks = []
    for x in s.universe:
        if x in seen:
            continue
        block = {x}
        queue = deque([x])
        seen.add(x)
        while queue:
            y = queue.popleft()
            for z in adj[y]:
                if z not in seen:
                    seen.add(z)
                    block.add(z)
                    queue.append(z)
        blocks.append([y for y in s.universe if y in block])
    return blocks


def _profiles(s: Structure) -> dict[str, tuple]:
    counts = {x: defaultdict(int) for x in s.universe}
    for name, ts in s.relations.items():
        for t in ts:
            for i, x in enumerate(t):
                counts[x][(name, i)] += 1
            if len(set(t)) < len(t):
                for x in set(t):
                    counts[x][(name, "repeat")] += 1
    return {x: tuple(sorted(c.items(), key=repr)) for x, c in counts.items()}


def find_isomorphism(s1: Structure, s2: Structure,
                     budget: int = DEFAULT_ISO_BUDGET) -> Homomorphism | None:
    """Search for a bijective homomorphism whose inverse is also a homomorphism."""
    check_same_signature(s1, s2)
    if max(s1.size, s2.size) > budget:
        raise BudgetExceeded("isomorphism search", max(s1.size, s2.size), budget)
    if s1.size != s2.size:
        return None
    if any(len(s1.relations[n]) != len(s2.relations[n]) for n in s1.signature.names):
        return None
    p1, p2 = _profiles(s1), _profiles(s2)
    if sorted(p1.values(), key=repr) != sorted(p2.values(), key=repr):
        return None
    candidates = {x: [y for y in s2.universe if p2[y] == p1[x]] for x in s1.universe}

    # Visit elements in BFS order so that tuples close early.
    order = [x for block in connected_components(s1) for x in _bfs(s1, block)]
    incident = defaultdict(list)
    for name, ts in s1.relations.items():
        for t in ts:
            for x in set(t):
                incident[x].append((name, t))

    assignment: dict[str, str] = {}
    used: set[str] = set()

    def consistent(x):
        for name, t in incident[x]:
            if all(z in assignment for z in t):
                if tuple(assignment[z] for z in t) not in s2.relations[name]:
                    return False
        return True

    def search(k):
        if k == len(order):
            return True
        x = order[k]
        for y in candidates[x]:
            if y in used:
                continue
            assignment[x] = y
            used.add(y)
            if consistent(x) and search(k + 1):
                return True
            del assignment[x]
            used.discard(y)
        return False

    if not search(0):
        return None
    # Injective and relation sizes equal, so the image of each relation is all of it.
    return Homomorphism(s1, s2, dict(assignment))


def _bfs(s: Structure, block: list[str]) -> list[str]:
    adj = defaultdict(set)
    for ts in s.relations.values():
        for t in ts:
            for x in t:
                adj[x].update(t)
    order, seen = [], {block[0]}
    queue = deque([block[0]])
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in sorted(adj[x], key=s.pos.__getitem__):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return order


def inverse(h: Homomorphism) -> Homomorphism:
    return Homomorphism(h.target, h.source, {y: x for x, y in h.assignment.items()})


# Named families.

def complete_graph(n: int) -> Structure:
    u = [str(i) for i in range(n)]
    return Structure.build(u, {"E": [(a, b) for a in u for b in u if a != b]},
                           arities={"E": 2})


def undirected_cycle(n: int) -> Structure:
    u = [str(i) for i in range(n)]
    edges = set()
    for i in range(n):
        j = (i + 1) % n
        edges.add((u[i], u[j]))
        edges.add((u[j], u[i]))
    return Structure.build(u, {"E": edges})


def undirected_path(edges: int) -> Structure:
    """Path with ``edges`` edges on elements "0".."edges"."""
    u = [str(i) for i in range(edges + 1)]
    es = set()
    for i in range(edges):
        es.add((u[i], u[i + 1]))
        es.add((u[i + 1], u[i]))
    return Structure.build(u, {"E": es}, arities={"E": 2})


def looped_point() -> Structure:
    return Structure.build(["0"], {"E": [("0", "0")]})


def isolated_points(n: int) -> Structure:
    return Structure.build([str(i) for i in range(n)], {"E": []}, arities={"E": 2})


def disjoint_union(s1: Structure, s2: Structure, tags=("a", "b")) -> Structure:
    check_same_signature(s1, s2)
    left = {x: f"{tags[0]}{x}" for x in s1.universe}
    right = {x: f"{tags[1]}{x}" for x in s2.universe}
    rels = {name: frozenset(tuple(left[x] for x in t) for t in s1.relations[name])
            | frozenset(tuple(right[x] for x in t) for t in s2.relations[name])
            for name in s1.signature.names}
    return Structure(s1.signature,
                     tuple(left.values()) + tuple(right.values()), rels)
