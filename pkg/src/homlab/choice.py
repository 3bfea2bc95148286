"""Finite decision procedures for dependencies among choice axioms for n-sets.

Permutations of {0..m-1} are tuples; ``(a * b)[i] = a[b[i]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator

from .errors import BudgetExceeded, InputError

DEFAULT_SUBGROUP_DEGREE = 5


def compose(a: tuple, b: tuple) -> tuple:
    return tuple(a[i] for i in b)


def invert(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def sorted_elements(self) -> list[tuple]:
        return sorted(self.elements)

    def sort_key(self):
        return (self.order, self.sorted_elements)

    def __le__(self, other: "PermGroup") -> bool:
        return self.elements <= other.elements

    def __lt__(self, other: "PermGroup") -> bool:
        return self.elements < other.elements

    def index_in(self, other: "PermGroup") -> int:
        return other.order // self.order

    def orbits(self) -> list[frozenset]:
        seen, out = set(), []
        for i in range(self.degree):
            if i not in seen:
                orbit = frozenset(g[i] for g in self.elements)
                seen |= orbit
                out.append(orbit)
        return out

    def is_group(self) -> bool:
        ident = tuple(range(self.degree))
        return (ident in self.elements
                and all(compose(a, b) in self.elements
                        for a in self.elements for b in self.elements)
                and all(invert(a) in self.elements for a in self.elements))

    def __str__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def generate(degree: int, gens: Iterable[tuple]) -> PermGroup:
    gens = list(gens)
    ident = tuple(range(degree))
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = compose(a, g)
                if c not in elements:
                    elements.add(c)
                    nxt.append(c)
        frontier = nxt
    return PermGroup(degree, frozenset(elements))


@lru_cache(maxsize=None)
def _subgroups(m: int) -> tuple[PermGroup, ...]:
    # Every subgroup is the join of its cyclic subgroups, so closing the set
    # of cyclic subgroups under joins with one more cyclic subgroup finds all.
    perms = list(permutations(range(m)))
    cyclic = {}
    for g in perms:
        c = generate(m, [g])
        cyclic.setdefault(c.elements, (c, g))
    gens_of = {}
    for elems, (c, g) in cyclic.items():
        gens_of[elems] = [g]
    trivial = generate(m, [])
    gens_of.setdefault(trivial.elements, [])
    queue = list(gens_of)
    while queue:
        h = queue.pop()
        for elems, (c, g) in cyclic.items():
            if elems <= h:
                continue
            gens = gens_of[h] + [g]
            j = generate(m, gens).elements
            if j not in gens_of:
                gens_of[j] = gens
                queue.append(j)
    groups = [PermGroup(m, e) for e in gens_of]
    return tuple(sorted(groups, key=PermGroup.sort_key))


def subgroups(m: int, max_degree: int = DEFAULT_SUBGROUP_DEGREE) -> list[PermGroup]:
    """All subgroups of S_m, sorted by (order, sorted element list)."""
    if m < 1:
        raise InputError("degree must be positive")
    if m > max_degree:
        raise BudgetExceeded("subgroup enumeration degree", m, max_degree)
    return list(_subgroups(m))


def fixed_point_free(g: PermGroup) -> bool:
    """No point is fixed by every element (every orbit has at least two points)."""
    return not any(all(p[i] == i for p in g.elements) for i in range(g.degree))


def _index_sums(indices: set[int], limit: int) -> dict[int, list[int]]:
    """Sums of one or more indices up to ``limit``, each with one decomposition."""
    reach = {0: []}
    for s in range(1, limit + 1):
        for d in sorted(indices):
            if d <= s and s - d in reach:
                reach[s] = reach[s - d] + [d]
                break
    del reach[0]
    return reach


@dataclass(frozen=True)
class GaunttResult:
    holds: bool
    witnesses: tuple
    counterexample: PermGroup | None

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "witnesses": [
                {"G": [list(p) for p in g.sorted_elements],
                 "H_order": h.order, "indices": idx}
                for g, h, idx in self.witnesses],
            "counterexample": (None if self.counterexample is None
                               else [list(p) for p in self.counterexample.sorted_elements]),
        }


def gauntt_check(m: int, allowed: Iterable[int],
                 max_degree: int = DEFAULT_SUBGROUP_DEGREE) -> GaunttResult:
    """Every fixed-point-free G <= S_m contains a fixed-point-free H and proper
    subgroups H_1..H_k of H whose indices [H:H_i] sum to a member of ``allowed``.
    """
    if m < 2:
        raise InputError("m must be at least 2")
    allowed = {s for s in allowed if s >= 2}
    subs = subgroups(m, max_degree)
    fpf = [g for g in subs if fixed_point_free(g)]
    limit = max(allowed, default=0)
    good = {}
    for h in fpf:
        indices = {k.index_in(h) for k in subs if k < h}
        reach = _index_sums(indices, limit)
        hits = sorted(s for s in allowed if s in reach)
        if hits:
            good[h.elements] = (h, reach[hits[0]])
    witnesses = []
    for g in fpf:
        found = next(((h, idx) for h_elems, (h, idx) in good.items() if h_elems <= g.elements),
                     None)
        if found is None:
            return GaunttResult(False, tuple(witnesses), g)
        witnesses.append((g, found[0], found[1]))
    return GaunttResult(True, tuple(witnesses), None)


def gauntt_condition(m: int, allowed: Iterable[int],
                     max_degree: int = DEFAULT_SUBGROUP_DEGREE) -> bool:
    return gauntt_check(m, allowed, max_degree).holds


def primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def prime_partitions(m: int) -> Iterator[tuple[int, ...]]:
    """Multisets of primes summing to m, as nonincreasing tuples."""
    primes = primes_up_to(m)

    def rec(rest, largest):
        if rest == 0:
            yield ()
            return
        for p in reversed(primes):
            if p <= min(rest, largest):
                for tail in rec(rest - p, p):
                    yield (p,) + tail

    yield from rec(m, m)


def prime_sum_criterion(m: int, n: int) -> bool:
    """Every expression of m as a sum of primes uses a prime at most n."""
    if m < 2 or n < 2:
        raise InputError("m and n must be at least 2")
    return all(min(parts) <= n for parts in prime_partitions(m))
