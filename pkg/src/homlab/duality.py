"""The power-set structure P(A) and width one."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .core import Homomorphism, Structure, require_valid
from .errors import BudgetExceeded, ValidationFailure
from .power import TolerantPower, decode
from .solver import hom_exists

DEFAULT_PSET_BUDGET = 12


def subset_id(s: Structure, subset) -> str:
    subset = set(subset)
    return "{" + ",".join(x for x in s.universe if x in subset) + "}"


@dataclass(frozen=True)
class PowerSetStructure:
    base: Structure
    derived: Structure

    def __hash__(self):
        return hash(self.base)

    @cached_property
    def subsets(self) -> dict[str, frozenset]:
        """Element id of the derived structure -> the subset of base ids it names."""
        out = {}
        u = self.base.universe
        for r in range(1, len(u) + 1):
            for combo in combinations(u, r):
                out[subset_id(self.base, combo)] = frozenset(combo)
        return out

    def element(self, subset) -> str:
        return subset_id(self.base, subset)


def _submasks(mask: int):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def _projections_match(rel, masks) -> bool:
    k = len(masks)
    proj = [0] * k
    for t in rel:
        if all((masks[i] >> t[i]) & 1 for i in range(k)):
            for i in range(k):
                proj[i] |= 1 << t[i]
    return proj == list(masks)


def _pset_tuples(rel, k: int):
    """Tuples of subset masks whose restricted relation projects onto each mask.

    The j-th mask can only contain values that the relation reaches at
    position j given the masks already chosen, which prunes the search.
    """
    out = []

    def extend(chosen):
        j = len(chosen)
        if j == k:
            if _projections_match(rel, chosen):
                out.append(tuple(chosen))
            return
        allowed = 0
        for t in rel:
            if all((chosen[i] >> t[i]) & 1 for i in range(j)):
                allowed |= 1 << t[j]
        for sub in _submasks(allowed):
            extend(chosen + [sub])

    extend([])
    return out


def power_set_structure(a: Structure, budget: int = DEFAULT_PSET_BUDGET) -> PowerSetStructure:
    if a.size > budget:
        raise BudgetExceeded("power-set structure base universe", a.size, budget)
    u = a.universe
    masks = [sum(1 << i for i in combo)
             for r in range(1, a.size + 1) for combo in combinations(range(a.size), r)]
    ident = {m: "{" + ",".join(u[i] for i in range(a.size) if (m >> i) & 1) + "}"
             for m in masks}
    rels = {}
    for name, k in a.signature.symbols:
        rels[name] = frozenset(tuple(ident[m] for m in t)
                               for t in _pset_tuples(a.int_relations[name], k))
    derived = Structure(a.signature, tuple(ident[m] for m in masks), rels)
    return PowerSetStructure(a, derived)


@dataclass(frozen=True)
class WidthOneVerdict:
    holds: bool
    witness: Homomorphism | None
    pset: PowerSetStructure

    def __bool__(self):
        return self.holds


def width_one(a: Structure, budget: int = DEFAULT_PSET_BUDGET) -> WidthOneVerdict:
    pset = power_set_structure(a, budget)
    h = hom_exists(pset.derived, a)
    return WidthOneVerdict(h is not None, h, pset)


def minimal_support(p: TolerantPower, f: str) -> frozenset:
    """Least S with f^-1(S) in the filter, straight from the definition."""
    a = p.base_structure
    values = decode(f)
    members = []
    for r in range(1, a.size + 1):
        for s in combinations(a.universe, r):
            s = frozenset(s)
            preimage = {i for i, v in enumerate(values) if v in s}
            if p.filter.base <= preimage:
                members.append(s)
    least = frozenset.intersection(*members)
    if least not in members:
        raise ValidationFailure(f"support family of {f} has no least member")
    return least


def minimal_support_map(p: TolerantPower, pset: PowerSetStructure | None = None,
                        method: str = "definition") -> Homomorphism:
    """Map each function to its least supporting subset, as a map into P(A).

    ``method="image"`` uses the shortcut S = f(base) for a principal filter.
    """
    if pset is None:
        pset = power_set_structure(p.base_structure)
    base = sorted(p.filter.base)
    out = {}
    for f in p.carrier.universe:
        if method == "image":
            vals = decode(f)
            s = {vals[i] for i in base}
        elif method == "definition":
            s = minimal_support(p, f)
        else:
            raise ValueError(f"unknown method {method!r}")
        out[f] = pset.element(s)
    h = Homomorphism(p.carrier, pset.derived, out)
    return require_valid(h, ValidationFailure, "minimal-support map")
