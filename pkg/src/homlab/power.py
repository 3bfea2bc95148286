"""Filter-tolerant powers and the maps built on them.

A carrier element is a function from the index set to the base universe,
identified by its values joined with commas in index order ("0,1,0").
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Mapping

from .core import (
    Homomorphism,
    Structure,
    check_same_signature,
    require_valid,
)
from .errors import (
    BudgetExceeded,
    InputError,
    InvalidHomomorphism,
    NotContaining,
    NotUltrafilter,
    ValidationFailure,
)
from .filters import (
    FiniteFilter,
    contains_filter,
    filter_from_generators,
    is_ultrafilter,
    trivial_filter,
)

DEFAULT_POWER_BUDGET = 100_000
DEFAULT_TUPLE_BUDGET = 5_000_000


def function_id(values: Iterable[str]) -> str:
    return ",".join(values)


def decode(elem: str) -> tuple[str, ...]:
    return tuple(elem.split(","))


def _check_encodable(a: Structure):
    bad = [x for x in a.universe if "," in x]
    if bad:
        raise InputError(f"element ids used in powers cannot contain ',': {bad[:3]}")


@dataclass(frozen=True)
class TolerantPower:
    base_structure: Structure
    filter: FiniteFilter
    carrier: Structure

    def __hash__(self):
        return hash((self.base_structure, self.filter))

    @property
    def index_size(self) -> int:
        return self.filter.size

    def element(self, values: Iterable) -> str:
        return function_id(str(v) for v in values)

    def values(self, elem: str) -> tuple[str, ...]:
        return decode(elem)

    def constant(self, a: str) -> str:
        return function_id([a] * self.index_size)

    def agreement_set(self, name: str, tup: Iterable[str]) -> frozenset:
        """Indices where the coordinate tuple lies in the base relation."""
        rel = self.base_structure.relations[name]
        cols = [decode(f) for f in tup]
        return frozenset(i for i in range(self.index_size)
                         if tuple(c[i] for c in cols) in rel)

    @cached_property
    def class_key(self) -> dict[str, tuple]:
        """Restriction of each function to the filter base."""
        base = sorted(self.filter.base)
        return {f: tuple(decode(f)[i] for i in base) for f in self.carrier.universe}


def power_size(a: Structure, index_size: int) -> int:
    return a.size ** index_size


def tolerant_power(a: Structure, f: FiniteFilter, budget: int = DEFAULT_POWER_BUDGET,
                   tuple_budget: int = DEFAULT_TUPLE_BUDGET) -> TolerantPower:
    """Build A^I_F with the carrier relations enumerated explicitly.

    A tuple of functions is related iff its agreement set contains the filter
    base, so each relation is a product of per-coordinate choices: base
    relation tuples on base coordinates, arbitrary tuples elsewhere.
    """
    _check_encodable(a)
    n, m = a.size, f.size
    size = n ** m
    if size > budget:
        raise BudgetExceeded("tolerant power elements", size, budget)
    universe = tuple(function_id(vals) for vals in cartesian(a.universe, repeat=m))
    weights = [n ** (m - 1 - i) for i in range(m)]
    rels = {}
    for name, k in a.signature.symbols:
        rel = a.int_relations[name]
        anything = list(cartesian(range(n), repeat=k))
        choices = [rel if i in f.base else anything for i in range(m)]
        count = 1
        for c in choices:
            count *= len(c)
        if count > tuple_budget:
            raise BudgetExceeded(f"tolerant power tuples of {name}", count, tuple_budget)
        tuples = set()
        for combo in cartesian(*choices):
            tuples.add(tuple(
                universe[sum(combo[i][j] * weights[i] for i in range(m))]
                for j in range(k)))
        rels[name] = frozenset(tuples)
    return TolerantPower(a, f, Structure(a.signature, universe, rels))


def ordinary_power(a: Structure, exponent: int, **kw) -> TolerantPower:
    return tolerant_power(a, trivial_filter(exponent), **kw)


@dataclass(frozen=True)
class AgreementQuotient:
    power: TolerantPower
    classes: tuple[tuple[str, ...], ...]
    quotient: Structure
    projection: Homomorphism

    def __hash__(self):
        return hash((self.power, self.classes))

    def class_of(self, elem: str) -> str:
        """Representative of the class containing ``elem``."""
        return self.projection.assignment[elem]

    @cached_property
    def members(self) -> dict[str, tuple[str, ...]]:
        return {c[0]: c for c in self.classes}


def quotient_by_agreement(p: TolerantPower) -> AgreementQuotient:
    """Collapse functions that agree on the filter base.

    The representative of a class is its least member in carrier order.
    """
    groups: dict[tuple, list[str]] = {}
    for f in p.carrier.universe:
        groups.setdefault(p.class_key[f], []).append(f)
    classes = tuple(sorted((tuple(g) for g in groups.values()),
                           key=lambda c: p.carrier.pos[c[0]]))
    rep = {f: c[0] for c in classes for f in c}
    reps = tuple(c[0] for c in classes)
    rels = {name: frozenset(tuple(rep[x] for x in t) for t in ts)
            for name, ts in p.carrier.relations.items()}
    quotient = Structure(p.carrier.signature, reps, rels)
    return AgreementQuotient(p, classes, quotient, Homomorphism(p.carrier, quotient, rep))


def _ultrafilter_index(u: FiniteFilter, f: FiniteFilter) -> int:
    if not is_ultrafilter(u):
        raise NotUltrafilter(f"{u} is not an ultrafilter")
    if not contains_filter(u, f):
        raise NotContaining(f"{u} does not contain {f}")
    (i0,) = u.base
    return i0


def ultrafilter_hom(p: TolerantPower, u: FiniteFilter) -> Homomorphism:
    """Send each function to its value on the ultrafilter's generating index."""
    i0 = _ultrafilter_index(u, p.filter)
    h = Homomorphism(p.carrier, p.base_structure,
                     {f: decode(f)[i0] for f in p.carrier.universe})
    return require_valid(h, ValidationFailure, "ultrafilter map")


@dataclass(frozen=True)
class CanonicalEmbedding:
    """Index set of all maps B -> A, the filter their relation sets generate,
    and the map sending x to the function (map |-> map(x)).

    The tolerant power itself is not materialized; membership of psi-images
    in its relations is decided through the filter base.
    """

    source: Structure
    target: Structure
    maps: tuple[Mapping[str, str], ...]
    filter: FiniteFilter
    psi: Mapping[str, str]

    def __hash__(self):
        return hash((self.source, self.target, self.filter))

    def violations(self) -> list[str]:
        problems = []
        base = self.filter.base
        for name in self.source.signature.names:
            rel = self.target.relations[name]
            for t in self.source.sorted_tuples(name):
                cols = [decode(self.psi[x]) for x in t]
                bad = [i for i in base if tuple(c[i] for c in cols) not in rel]
                if bad:
                    problems.append(f"{name}{list(t)} fails at indices {bad[:5]}")
        return problems

    def through_ultrafilter(self, u: FiniteFilter) -> Homomorphism:
        """Composite of psi with the ultrafilter map, as a map B -> A."""
        i0 = _ultrafilter_index(u, self.filter)
        return Homomorphism(self.source, self.target,
                            {x: decode(self.psi[x])[i0] for x in self.source.universe})


def canonical_embedding(b: Structure, a: Structure,
                        budget: int = DEFAULT_POWER_BUDGET) -> CanonicalEmbedding:
    check_same_signature(b, a)
    _check_encodable(a)
    size = a.size ** b.size
    if size > budget:
        raise BudgetExceeded("index set of maps B -> A", size, budget)
    maps = tuple(dict(zip(b.universe, vals))
                 for vals in cartesian(a.universe, repeat=b.size))
    gens = []
    for name in b.signature.names:
        rel = a.relations[name]
        for t in b.sorted_tuples(name):
            gens.append([i for i, mp in enumerate(maps)
                         if tuple(mp[x] for x in t) in rel])
    # ImproperFilter here means b has no homomorphism to a.
    f = filter_from_generators(size, gens)
    psi = {x: function_id(mp[x] for mp in maps) for x in b.universe}
    emb = CanonicalEmbedding(b, a, maps, f, psi)
    problems = emb.violations()
    if problems:
        raise ValidationFailure("canonical map is not a homomorphism: " + "; ".join(problems[:3]))
    return emb


def evaluation_hom(p: TolerantPower, sub: Structure) -> tuple[frozenset, Homomorphism]:
    """Common support of a finite substructure and evaluation at its least index."""
    check_same_signature(sub, p.carrier)
    unknown = [x for x in sub.universe if x not in p.carrier.pos]
    if unknown:
        raise InputError(f"elements not in the carrier: {unknown[:3]}")
    support = frozenset(range(p.index_size))
    for name, ts in sub.relations.items():
        for t in ts:
            if t not in p.carrier.relations[name]:
                raise InputError(f"{name}{list(t)} is not a carrier tuple")
            support &= p.agreement_set(name, t)
    if not p.filter.base <= support:
        raise ValidationFailure(f"common support {sorted(support)} is not a filter member")
    i = min(support)
    h = Homomorphism(sub, p.base_structure, {f: decode(f)[i] for f in sub.universe})
    return support, require_valid(h, ValidationFailure, "evaluation map")


def push_hom_to_quotient(q: AgreementQuotient, phi: Homomorphism) -> Homomorphism:
    """Send each class to the least value (in base universe order) phi takes on it."""
    require_valid(phi, InvalidHomomorphism)
    a = phi.target
    out = {}
    for c in q.classes:
        out[c[0]] = min((phi.assignment[f] for f in c), key=a.pos.__getitem__)
    return require_valid(Homomorphism(q.quotient, a, out), ValidationFailure,
                         "quotient map")


def lex_sum_check(p: TolerantPower, sample_limit: int = 10_000, seed: int = 0) -> bool:
    """Relation membership is unchanged by replacing any entry with an equivalent one.

    Exhaustive when the number of (tuple, coordinate, substitute) triples is at
    most ``sample_limit``; otherwise that many triples are sampled.
    """
    classes: dict[tuple, list[str]] = {}
    for f in p.carrier.universe:
        classes.setdefault(p.class_key[f], []).append(f)
    key = p.class_key
    work = []
    total = 0
    for name in p.carrier.signature.names:
        ts = p.carrier.sorted_tuples(name)
        work.append((name, ts))
        for t in ts:
            total += sum(len(classes[key[x]]) for x in t)
    if total <= sample_limit:
        for name, ts in work:
            rel = p.carrier.relations[name]
            for t in ts:
                for j, x in enumerate(t):
                    for g in classes[key[x]]:
                        if t[:j] + (g,) + t[j + 1:] not in rel:
                            return False
        return True
    rng = random.Random(seed)
    flat = [(name, t) for name, ts in work for t in ts]
    for _ in range(sample_limit):
        name, t = rng.choice(flat)
        j = rng.randrange(len(t))
        g = rng.choice(classes[key[t[j]]])
        if t[:j] + (g,) + t[j + 1:] not in p.carrier.relations[name]:
            return False
    return True


def characteristic(p: TolerantPower, subset: Iterable[int], one: str = "1",
                   zero: str = "0") -> str:
    """Carrier element of the indicator function of ``subset``."""
    subset = set(subset)
    return function_id(one if i in subset else zero for i in range(p.index_size))


def coordinatewise(p: TolerantPower, q: TolerantPower, h: Homomorphism) -> Homomorphism:
    """Apply a base map at every coordinate, as a map between carriers."""
    return Homomorphism(p.carrier, q.carrier, {
        f: function_id(h.assignment[v] for v in decode(f)) for f in p.carrier.universe})
