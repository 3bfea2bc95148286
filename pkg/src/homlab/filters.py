"""Filters on finite index sets.

On a finite set every filter is principal, so a filter is stored as its
base: the least member, equal to the intersection of all members.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import ImproperFilter, InputError


@dataclass(frozen=True)
class FiniteFilter:
    size: int
    base: frozenset

    def __post_init__(self):
        if self.size < 1:
            raise InputError("index set must have at least one element")
        if not self.base:
            raise ImproperFilter("filter base must be nonempty")
        if not all(0 <= i < self.size for i in self.base):
            raise InputError(f"base {sorted(self.base)} not within 0..{self.size - 1}")

    @property
    def indices(self) -> range:
        return range(self.size)

    def __contains__(self, x) -> bool:
        return filter_membership(self, x)

    def members(self) -> Iterator[frozenset]:
        """Every member set, by size then lexicographically."""
        rest = [i for i in self.indices if i not in self.base]
        for r in range(len(rest) + 1):
            for extra in combinations(rest, r):
                yield self.base | frozenset(extra)

    def __str__(self):
        return f"FiniteFilter(|I|={self.size}, base={format_indices(self.base)})"


def principal(size: int, base: Iterable[int]) -> FiniteFilter:
    return FiniteFilter(size, frozenset(base))


def trivial_filter(size: int) -> FiniteFilter:
    return FiniteFilter(size, frozenset(range(size)))


def filter_from_generators(size: int, gens: Iterable[Iterable[int]]) -> FiniteFilter:
    """Least filter containing every generator. No generators gives the trivial filter."""
    base = frozenset(range(size))
    for g in gens:
        g = frozenset(g)
        if not all(0 <= i < size for i in g):
            raise InputError(f"generator {sorted(g)} not within 0..{size - 1}")
        base &= g
    if not base:
        raise ImproperFilter("generators have empty intersection")
    return FiniteFilter(size, base)


def filter_membership(f: FiniteFilter, x: Iterable[int]) -> bool:
    return f.base <= frozenset(x)


def is_ultrafilter(f: FiniteFilter) -> bool:
    return len(f.base) == 1


def is_ultrafilter_by_complements(f: FiniteFilter) -> bool:
    """Direct check: exactly one of every complementary pair is a member."""
    full = frozenset(f.indices)
    for r in range(f.size + 1):
        for x in combinations(range(f.size), r):
            x = frozenset(x)
            if filter_membership(f, x) == filter_membership(f, full - x):
                return False
    return True


def extend_to_ultrafilter(f: FiniteFilter) -> list[FiniteFilter]:
    return [FiniteFilter(f.size, frozenset([i])) for i in sorted(f.base)]


def contains_filter(u: FiniteFilter, f: FiniteFilter) -> bool:
    """True when every member of ``f`` is a member of ``u``."""
    return u.size == f.size and u.base <= f.base


def all_filters(size: int) -> list[FiniteFilter]:
    return [FiniteFilter(size, frozenset(b))
            for r in range(1, size + 1) for b in combinations(range(size), r)]


def parse_indices(text: str) -> frozenset:
    text = text.strip()
    if not text:
        return frozenset()
    try:
        return frozenset(int(p) for p in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad index list {text!r}") from exc


def parse_generators(text: str) -> list[frozenset]:
    return [parse_indices(part) for part in text.split(";")]


def format_indices(x: Iterable[int]) -> str:
    return ",".join(str(i) for i in sorted(x))
