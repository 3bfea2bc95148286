"""Primitive positive definitions of cliques and ultrafilters read off colorings."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from itertools import product as cartesian
from typing import Mapping

from .core import Homomorphism, Structure, check_same_signature, complete_graph, require_valid
from .errors import (
    BudgetExceeded,
    ExtractionFailure,
    InputError,
    InvalidHomomorphism,
    NotAClique,
    UnknownElement,
    ValidationFailure,
)
from .filters import FiniteFilter, filter_from_generators, filter_membership, is_ultrafilter
from .power import TolerantPower, decode, function_id
from .solver import hom_enumerate, hom_exists, iter_homomorphisms

DEFAULT_PP_BUDGET = 10 ** 6


@dataclass(frozen=True)
class Gadget:
    structure: Structure
    x: str
    y: str

    def __post_init__(self):
        for v in (self.x, self.y):
            if v not in self.structure.pos:
                raise UnknownElement(f"distinguished element {v!r} not in gadget")


def _check_budget(g: Gadget, a: Structure, budget: int):
    size = a.size ** g.structure.size
    if size > budget:
        raise BudgetExceeded("gadget map space |A|^|B|", size, budget)


def pp_relation(g: Gadget, a: Structure, budget: int = DEFAULT_PP_BUDGET) -> frozenset:
    """All pairs (h(x), h(y)) over the homomorphisms h from the gadget to ``a``."""
    check_same_signature(g.structure, a)
    _check_budget(g, a, budget)
    return frozenset((h(g.x), h(g.y)) for h in iter_homomorphisms(g.structure, a))


def pp_relation_pinned(g: Gadget, a: Structure, budget: int = DEFAULT_PP_BUDGET) -> frozenset:
    """Same relation, one satisfiability query per candidate pair."""
    check_same_signature(g.structure, a)
    _check_budget(g, a, budget)
    out = set()
    for u in a.universe:
        for v in a.universe:
            if g.x == g.y and u != v:
                continue
            if hom_exists(g.structure, a, fixed={g.x: u, g.y: v}) is not None:
                out.add((u, v))
    return frozenset(out)


def inequality(a: Structure) -> frozenset:
    return frozenset((u, v) for u in a.universe for v in a.universe if u != v)


def defines_clique(g: Gadget, a: Structure, budget: int = DEFAULT_PP_BUDGET) -> bool:
    return pp_relation(g, a, budget) == inequality(a)


@dataclass
class LiftResult:
    verdict: bool
    checked_pairs: int
    violations: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    pair_maps: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "checked_pairs": self.checked_pairs,
            "violations": [list(p) for p in self.violations],
            "pair_maps": {f"{i}->{j}": h.to_json()["assignment"]
                          for (i, j), h in sorted(self.pair_maps.items())},
        }


def _as_assignment(phi, carrier: Structure, target: Structure) -> dict:
    assignment = dict(phi.assignment if isinstance(phi, Homomorphism) else phi)
    missing = [f for f in carrier.universe if f not in assignment]
    stray = [v for v in assignment.values() if v not in target.pos]
    if missing or stray:
        raise InvalidHomomorphism(
            f"map is not total into the target (missing {missing[:3]}, stray {stray[:3]})")
    return assignment


def lift_hom(g: Gadget, p: TolerantPower, phi) -> LiftResult:
    """Check that a coloring of A^I_F is a coloring of the clique power on the same functions.

    For each pair (f, g) adjacent in (K_n)^I_F, the gadget is mapped into
    A^I_F by running a fixed gadget map psi_(f(i), g(i)) on every coordinate
    where f and g differ and the constant f(i) elsewhere. That map is
    validated against the carrier, and the verdict records whether
    phi(f) != phi(g).
    """
    a = p.base_structure
    if not defines_clique(g, a):
        raise NotAClique("gadget does not define the inequality relation on the target")
    assignment = _as_assignment(phi, p.carrier, a)
    b = g.structure
    pair_maps = {}
    for i in a.universe:
        for j in a.universe:
            if i != j:
                found = hom_enumerate(b, a, limit=1, fixed={g.x: i, g.y: j})
                pair_maps[(i, j)] = found[0]
    result = LiftResult(True, 0, pair_maps=pair_maps)
    base = p.filter.base
    m = p.index_size
    decoded = {f: decode(f) for f in p.carrier.universe}
    for f in p.carrier.universe:
        fv = decoded[f]
        for h in p.carrier.universe:
            hv = decoded[h]
            differ = [i for i in range(m) if fv[i] != hv[i]]
            if not base <= set(differ):
                continue
            result.checked_pairs += 1
            lifted = {}
            for z in b.universe:
                lifted[z] = function_id(
                    pair_maps[(fv[i], hv[i])](z) if fv[i] != hv[i] else fv[i]
                    for i in range(m))
            require_valid(Homomorphism(b, p.carrier, lifted), ValidationFailure,
                          f"lifted gadget map for ({f}, {h})")
            result.witnesses[(f, h)] = lifted
            if assignment[f] == assignment[h]:
                result.verdict = False
                result.violations.append((f, h))
    return result


@dataclass(frozen=True)
class LauchliWitness:
    normalization: tuple[int, ...]
    extracted: FiniteFilter
    members: tuple[frozenset, ...]
    checks: Mapping[str, bool]

    def __hash__(self):
        return hash((self.normalization, self.extracted))

    def to_json(self) -> dict:
        return {
            "normalization": list(self.normalization),
            "ultrafilter_base": sorted(self.extracted.base),
            "members": [sorted(x) for x in self.members],
            "checks": dict(sorted(self.checks.items())),
        }


def _check_clique_power(p: TolerantPower) -> int:
    a = p.base_structure
    n = a.size
    if n < 3:
        raise InputError("ultrafilter extraction needs n >= 3")
    expected = complete_graph(n)
    if a.universe != expected.universe or a.relations != expected.relations:
        raise InputError("base structure must be the clique on '0'..'n-1'")
    return n


def extract_ultrafilter(p: TolerantPower, phi) -> LauchliWitness:
    """Read an ultrafilter containing the filter off a coloring of (K_n)^I_F."""
    n = _check_clique_power(p)
    assignment = _as_assignment(phi, p.carrier, p.base_structure)
    require_valid(Homomorphism(p.carrier, p.base_structure, assignment),
                  InvalidHomomorphism, "coloring")
    m = p.index_size
    const = [int(assignment[p.constant(str(k))]) for k in range(n)]
    if len(set(const)) != n:
        raise InvalidHomomorphism("coloring is not injective on constant functions")
    # normalization[v] = k where phi(constant k) = v
    normalization = [0] * n
    for k, v in enumerate(const):
        normalization[v] = k

    def color(values) -> int:
        return normalization[int(assignment[function_id(str(v) for v in values)])]

    checks = {}
    if n > 3:
        checks["restriction_to_three"] = all(
            color(vals) < 3 for vals in cartesian(range(3), repeat=m))

    full = frozenset(range(m))
    subsets = [frozenset(c) for r in range(m + 1) for c in combinations(range(m), r)]

    def one(x):
        return [1 if i in x else 0 for i in range(m)]

    members = [x for x in subsets if color(one(x)) == 1]
    in_u = set(members)

    checks["characteristic_values_binary"] = all(color(one(x)) in (0, 1) for x in subsets)
    checks["contains_filter"] = all(x in in_u for x in subsets
                                    if filter_membership(p.filter, x))
    checks["complement_dichotomy"] = all((x in in_u) != ((full - x) in in_u)
                                         for x in subsets)

    upward = True
    for x in members:
        f_x = [2 if i in x else 1 for i in range(m)]
        g_x = [1 if i in x else 2 for i in range(m)]
        if color(f_x) != 2 or color(g_x) != 1:
            upward = False
        for y in subsets:
            if x <= y and (color(one(full - y)) != 0 or y not in in_u):
                upward = False
    checks["upward_closure"] = upward

    meets = True
    for x in members:
        for y in members:
            f_meet = [0 if i in x & y else 2 if i in x - y else 1 for i in range(m)]
            f_diff = [1 if i in x & y else 0 if i in x - y else 2 for i in range(m)]
            f_comp = [2 if i in x & y else 1 if i in x - y else 0 for i in range(m)]
            triple = (color(f_meet), color(f_diff), color(f_comp))
            if sorted(triple) != [0, 1, 2] or triple[0] != 0 or (x & y) not in in_u:
                meets = False
    checks["intersection_closure"] = meets

    if not all(checks.values()):
        failed = sorted(k for k, v in checks.items() if not v)
        raise ExtractionFailure(f"extraction checks failed: {failed}")
    extracted = filter_from_generators(m, members)
    if not is_ultrafilter(extracted) or set(extracted.members()) != in_u:
        raise ExtractionFailure("extracted family is not the principal ultrafilter it generates")
    return LauchliWitness(tuple(normalization), extracted, tuple(members), checks)
