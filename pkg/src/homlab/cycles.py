"""Directed cycles and the constructions around their tolerant powers."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import permutations
from itertools import product as cartesian
from math import gcd
from typing import Callable, Sequence

from .core import (
    Homomorphism,
    Structure,
    connected_components,
    find_isomorphism,
    induced_substructure,
    inverse,
    pair_id,
    product,
    require_valid,
)
from .errors import (
    BadN,
    BudgetExceeded,
    CensusFailure,
    ExtractionFailure,
    InputError,
    InvalidHomomorphism,
    NotAPartialOrder,
    NotCoprime,
    ValidationFailure,
)
from .filters import FiniteFilter, filter_from_generators
from .power import (
    DEFAULT_POWER_BUDGET,
    AgreementQuotient,
    TolerantPower,
    decode,
    function_id,
    quotient_by_agreement,
    tolerant_power,
)


def directed_cycle(n: int) -> Structure:
    if n < 2:
        raise BadN(f"directed cycle needs n >= 2, got {n}")
    u = [str(i) for i in range(n)]
    return Structure.build(u, {"E": [(u[i], u[(i + 1) % n]) for i in range(n)]})


def _cycle_length(s: Structure) -> int:
    n = s.size
    if n < 2 or s != directed_cycle(n):
        raise InputError("base structure must be a directed cycle on '0'..'n-1'")
    return n


def crt_isomorphism(p: int, q: int) -> Homomorphism:
    """k -> (k mod p, k mod q) from C_pq onto C_p x C_q, checked both ways."""
    if p < 2 or q < 2:
        raise BadN(f"both factors must be at least 2, got {p} and {q}")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) = {gcd(p, q)}")
    source = directed_cycle(p * q)
    target = product(directed_cycle(p), directed_cycle(q))
    h = Homomorphism(source, target,
                     {str(k): pair_id(str(k % p), str(k % q)) for k in range(p * q)})
    require_valid(h, ValidationFailure, "CRT map")
    if len(set(h.assignment.values())) != target.size:
        raise ValidationFailure("CRT map is not a bijection")
    require_valid(inverse(h), ValidationFailure, "inverse CRT map")
    return h


def quotient_coloring(big: int, small: int) -> Homomorphism:
    """The reduction Z_big -> Z_small as a homomorphism C_big -> C_small."""
    if big % small:
        raise InputError(f"{small} does not divide {big}")
    return require_valid(Homomorphism(directed_cycle(big), directed_cycle(small),
                                      {str(i): str(i % small) for i in range(big)}),
                         ValidationFailure, "quotient map")


def divisor_transfer(p_big: TolerantPower, phi: Homomorphism, k: int, p: int) -> Homomorphism:
    """Coloring of (C_p)^I_F from a coloring of (C_kp)^I_F.

    psi(f) is the block j with phi(k*f) in {kj, ..., kj + k - 1}.
    """
    if k < 2 or p < 2:
        raise BadN(f"k and p must be at least 2, got {k} and {p}")
    if _cycle_length(p_big.base_structure) != k * p:
        raise InputError(f"power is not over C_{k * p}")
    require_valid(phi, InvalidHomomorphism, "coloring")
    small = tolerant_power(directed_cycle(p), p_big.filter)
    out = {}
    for f in small.carrier.universe:
        kf = function_id(str(k * int(v)) for v in decode(f))
        out[f] = str(int(phi.assignment[kf]) // k)
    return require_valid(Homomorphism(small.carrier, directed_cycle(p), out),
                         ValidationFailure, "transferred coloring")


@dataclass(frozen=True)
class Census:
    count: int
    components: tuple[tuple[str, ...], ...]
    witnesses: tuple[Homomorphism, ...]

    def to_json(self) -> dict:
        return {"count": self.count,
                "components": [list(c) for c in self.components],
                "witnesses": [w.to_json()["assignment"] for w in self.witnesses]}


def component_census(q: AgreementQuotient) -> Census:
    """Components of the quotient of a C_n power, each matched to C_n."""
    n = _cycle_length(q.power.base_structure)
    cn = directed_cycle(n)
    blocks = connected_components(q.quotient)
    witnesses = []
    for block in blocks:
        sub = induced_substructure(q.quotient, block)
        iso = find_isomorphism(sub, cn, budget=max(30, n))
        if iso is None:
            raise CensusFailure(f"component {block} is not a copy of C_{n}")
        witnesses.append(iso)
    expected = n ** (len(q.power.filter.base) - 1)
    if len(blocks) != expected:
        raise CensusFailure(f"{len(blocks)} components, expected {expected}")
    return Census(len(blocks), tuple(tuple(b) for b in blocks), tuple(witnesses))


@dataclass(frozen=True)
class ChoiceInstance:
    """Family of disjoint p-sets with the index set of its partial choice functions.

    An index is a tuple holding, per set, the chosen element or None.
    """

    family: tuple[tuple[str, ...], ...]
    p: int
    index: tuple[tuple, ...]
    filter: FiniteFilter

    def choice_set(self, j: int, element=None) -> frozenset:
        """Indices choosing from set j (x+), or choosing ``element`` there (x+_element)."""
        return frozenset(i for i, c in enumerate(self.index)
                         if c[j] is not None and (element is None or c[j] == element))

    def describe(self, i: int) -> str:
        return "(" + ",".join("-" if c is None else c for c in self.index[i]) + ")"


def choice_filter(family: Sequence[Sequence[str]],
                  budget: int = DEFAULT_POWER_BUDGET) -> ChoiceInstance:
    family = tuple(tuple(str(e) for e in x) for x in family)
    if not family:
        raise InputError("family must contain at least one set")
    sizes = {len(x) for x in family}
    if len(sizes) != 1:
        raise InputError(f"sets must have equal size, got sizes {sorted(sizes)}")
    p = sizes.pop()
    if p < 2:
        raise InputError("sets must have at least two elements")
    flat = [e for x in family for e in x]
    if len(set(flat)) != len(flat):
        raise InputError("sets must be disjoint and duplicate-free")
    size = (p + 1) ** len(family)
    if size > budget:
        raise BudgetExceeded("partial choice functions", size, budget)
    index = tuple(cartesian(*[(None,) + x for x in family]))
    gens = [[i for i, c in enumerate(index) if c[j] is not None] for j in range(len(family))]
    f = filter_from_generators(len(index), gens)
    total = frozenset(i for i, c in enumerate(index) if None not in c)
    if f.base != total:
        raise ValidationFailure("filter base is not the set of total choice functions")
    return ChoiceInstance(family, p, index, f)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def evaluation_coloring(i0: int) -> Callable[[tuple], int]:
    """Coloring of a C_p power that reads the value at index ``i0``."""
    return lambda values: values[i0]


def _as_coloring(phi) -> Callable[[tuple], int]:
    if callable(phi) and not isinstance(phi, Homomorphism):
        return phi
    assignment = phi.assignment if isinstance(phi, Homomorphism) else phi

    def color(values):
        key = function_id(str(v) for v in values)
        if key not in assignment:
            raise InvalidHomomorphism(f"coloring undefined on {key}")
        return int(assignment[key])
    return color


@dataclass(frozen=True)
class DistinguishedSubsets:
    subsets: tuple[tuple[str, ...], ...]
    counts: tuple[dict, ...]

    def to_json(self, inst: ChoiceInstance) -> dict:
        return {",".join(x): {"subset": list(y), "counts": c}
                for x, y, c in zip(inst.family, self.subsets, self.counts)}


def distinguished_subset(inst: ChoiceInstance, phi) -> DistinguishedSubsets:
    """Nonempty proper subset of every set in the family, read off a coloring.

    ``phi`` is a Homomorphism over the materialized (C_p)^I_F, a mapping from
    its element ids, or a callable on value tuples for powers too large to
    build. Each cyclic class {psi, psi+1, ..., psi+p-1} of bijections to Z_p
    spans a copy of C_p, which is checked locally; the element sent to 0 by
    the member colored 0 is the one the class distinguishes.
    """
    p = inst.p
    if not _is_prime(p):
        raise InputError(f"set size {p} is not prime")
    color = _as_coloring(phi)
    subsets, counts = [], []
    for j, x in enumerate(inst.family):
        tally = dict.fromkeys(x, 0)
        seen = set()
        for psi in permutations(range(p)):
            if psi in seen:
                continue
            shifted = [tuple((v + k) % p for v in psi) for k in range(p)]
            seen.update(shifted)
            colors = []
            for s in shifted:
                f = tuple(0 if c[j] is None else s[x.index(c[j])] for c in inst.index)
                colors.append(color(f))
            if any(colors[(k + 1) % p] != (colors[k] + 1) % p for k in range(p)):
                raise InvalidHomomorphism(
                    f"coloring does not map the cycle of bijections from {psi} onto C_{p}")
            k = colors.index(0)
            tally[x[shifted[k].index(0)]] += 1
        top = max(tally.values())
        y = tuple(e for e in x if tally[e] == top)
        if not 0 < len(y) < p:
            raise ExtractionFailure(f"distinguished counts {tally} are uniform on {x}")
        subsets.append(y)
        counts.append(tally)
    return DistinguishedSubsets(tuple(subsets), tuple(counts))


def order_base() -> Structure:
    """({0, 1}; !=, <=)."""
    return Structure.build(["0", "1"], {"neq": [("0", "1"), ("1", "0")],
                                        "leq": [("0", "0"), ("0", "1"), ("1", "1")]})


@dataclass(frozen=True)
class OrderHom:
    hom: Homomorphism
    quotient: AgreementQuotient
    linear_order: tuple[str, ...]

    def to_json(self) -> dict:
        return {"linear_order": list(self.linear_order),
                "assignment": self.hom.to_json()["assignment"]}


def _check_partial_order(s: Structure, rel) -> None:
    u = s.universe
    if any((x, x) not in rel for x in u):
        raise NotAPartialOrder("quotient order is not reflexive")
    for x, y in rel:
        if x != y and (y, x) in rel:
            raise NotAPartialOrder(f"quotient order not antisymmetric at {x}, {y}")
    succ = {x: {y for (a, y) in rel if a == x} for x in u}
    for x, y in rel:
        for z in succ[y]:
            if (x, z) not in rel:
                raise NotAPartialOrder(f"quotient order not transitive at {x}, {y}, {z}")


def linear_extension(s: Structure, rel) -> list[str]:
    """Topological sort of a partial order, ties broken by universe order."""
    indeg = {x: 0 for x in s.universe}
    succ = {x: [] for x in s.universe}
    for x, y in rel:
        if x != y:
            succ[x].append(y)
            indeg[y] += 1
    heap = [s.pos[x] for x in s.universe if indeg[x] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        x = s.universe[heapq.heappop(heap)]
        order.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, s.pos[y])
    if len(order) != s.size:
        raise NotAPartialOrder("order has a cycle")
    return order


def order_structure_hom(f: FiniteFilter, budget: int = DEFAULT_POWER_BUDGET) -> OrderHom:
    """Homomorphism from the quotient of ({0,1}; !=, <=)^I_F to the base structure.

    A class goes to 0 exactly when it precedes its complement class in a
    linear extension of the quotient order.
    """
    a = order_base()
    q = quotient_by_agreement(tolerant_power(a, f, budget))
    s = q.quotient
    leq = s.relations["leq"]
    _check_partial_order(s, leq)
    order = linear_extension(s, leq)
    rank = {x: i for i, x in enumerate(order)}
    out = {}
    for r in s.universe:
        comp = q.class_of(function_id("1" if v == "0" else "0" for v in decode(r)))
        out[r] = "0" if rank[r] <= rank[comp] else "1"
        if comp != r and out.get(comp) == out[r]:
            raise ValidationFailure(f"class {r} and its complement {comp} share a value")
    h = require_valid(Homomorphism(s, a, out), ValidationFailure, "order map")
    return OrderHom(h, q, tuple(order))
