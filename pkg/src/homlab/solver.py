"""Homomorphism search: generalized arc consistency plus backtracking.

Domains are bitmasks over target positions. Propagation is tuple-directed:
the worklist holds (symbol, source tuple) constraints, which keeps arities
above two uniform. A source tuple that repeats an element, such as a loop
``(x, x)``, only accepts target tuples that repeat the value at the same
positions.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator, Mapping

from .core import Homomorphism, Structure, check_same_signature
from .errors import UnknownElement


@dataclass(frozen=True)
class DomainState:
    source: Structure
    target: Structure
    domains: Mapping[str, frozenset]

    def __getitem__(self, x: str) -> frozenset:
        return self.domains[x]

    def domain(self, x: str) -> list[str]:
        """Candidates of ``x`` in target universe order."""
        return [y for y in self.target.universe if y in self.domains[x]]

    @property
    def wiped_out(self) -> bool:
        return any(not d for d in self.domains.values())

    def to_json(self) -> dict:
        return {x: self.domain(x) for x in self.source.universe}


class _Problem:
    def __init__(self, b: Structure, a: Structure):
        check_same_signature(b, a)
        self.b, self.a = b, a
        self.nvars = b.size
        self.full = (1 << a.size) - 1
        self.constraints = []  # (scope, distinct vars, first-occurrence pattern, target tuples)
        self.watch = defaultdict(list)
        for name in b.signature.names:
            rel = a.int_relations[name]
            for scope in b.int_relations[name]:
                first = tuple(scope.index(v) for v in scope)
                distinct = tuple(dict.fromkeys(scope))
                cid = len(self.constraints)
                self.constraints.append((scope, distinct, first, rel))
                for v in distinct:
                    self.watch[v].append(cid)

    def initial(self, fixed: Mapping[str, str] | None = None) -> list[int]:
        doms = [self.full] * self.nvars
        for x, y in (fixed or {}).items():
            if x not in self.b.pos or y not in self.a.pos:
                raise UnknownElement(f"cannot pin {x!r} to {y!r}")
            doms[self.b.pos[x]] &= 1 << self.a.pos[y]
        return doms

    def revise(self, cid: int, doms: list[int]) -> list[int]:
        """Shrink the domains of one constraint's scope; return changed variables."""
        scope, distinct, first, rel = self.constraints[cid]
        support = dict.fromkeys(distinct, 0)
        k = len(scope)
        for t in rel:
            ok = True
            for j in range(k):
                if not (doms[scope[j]] >> t[j]) & 1 or t[j] != t[first[j]]:
                    ok = False
                    break
            if ok:
                for j in range(k):
                    support[scope[j]] |= 1 << t[j]
        changed = []
        for v in distinct:
            new = doms[v] & support[v]
            if new != doms[v]:
                doms[v] = new
                changed.append(v)
        return changed

    def propagate(self, doms: list[int], queue=None, stop_on_wipeout=True) -> bool:
        """Run to the fixpoint in place; False when some domain is empty."""
        if queue is None:
            queue = list(range(len(self.constraints)))
        pending = set(queue)
        queue = list(queue)
        wiped = any(d == 0 for d in doms)
        while queue:
            cid = queue.pop()
            pending.discard(cid)
            for v in self.revise(cid, doms):
                if doms[v] == 0:
                    wiped = True
                    if stop_on_wipeout:
                        return False
                for other in self.watch[v]:
                    if other not in pending:
                        pending.add(other)
                        queue.append(other)
        return not wiped

    def to_state(self, doms) -> DomainState:
        a = self.a
        return DomainState(self.b, a, {
            x: frozenset(a.universe[j] for j in range(a.size) if (doms[i] >> j) & 1)
            for i, x in enumerate(self.b.universe)})

    def to_hom(self, doms) -> Homomorphism:
        a = self.a
        return Homomorphism(self.b, a, {
            x: a.universe[doms[i].bit_length() - 1] for i, x in enumerate(self.b.universe)})


def _bits(mask: int) -> list[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def arc_consistency(b: Structure, a: Structure,
                    fixed: Mapping[str, str] | None = None) -> DomainState:
    """Greatest arc-consistent family of candidate sets, pruned from full domains."""
    prob = _Problem(b, a)
    doms = prob.initial(fixed)
    prob.propagate(doms, stop_on_wipeout=False)
    return prob.to_state(doms)


def propagate(state: DomainState) -> DomainState:
    """Re-run propagation starting from an existing state."""
    prob = _Problem(state.source, state.target)
    apos = state.target.pos
    doms = [sum(1 << apos[y] for y in state.domains[x]) for x in state.source.universe]
    prob.propagate(doms, stop_on_wipeout=False)
    return prob.to_state(doms)


def hom_exists(b: Structure, a: Structure,
               fixed: Mapping[str, str] | None = None) -> Homomorphism | None:
    """First homomorphism found, or None.

    Variable order: smallest remaining domain, ties by source universe order.
    Value order: target universe order.
    """
    prob = _Problem(b, a)
    doms = prob.initial(fixed)
    if not prob.propagate(doms):
        return None
    stack = [doms]
    while stack:
        doms = stack.pop()
        var, best = -1, None
        for i, d in enumerate(doms):
            c = d.bit_count()
            if c > 1 and (best is None or c < best):
                var, best = i, c
        if var < 0:
            return prob.to_hom(doms)
        children = []
        for val in _bits(doms[var]):
            nd = list(doms)
            nd[var] = 1 << val
            if prob.propagate(nd, list(prob.watch[var])):
                children.append(nd)
        stack.extend(reversed(children))
    return None


class Enumeration(list):
    """List of homomorphisms; ``truncated`` is set when the limit cut it short."""

    truncated = False


def iter_homomorphisms(b: Structure, a: Structure,
                       fixed: Mapping[str, str] | None = None) -> Iterator[Homomorphism]:
    """All homomorphisms, lexicographic by (source order, target order)."""
    prob = _Problem(b, a)
    doms = prob.initial(fixed)
    if not prob.propagate(doms):
        return
    n = prob.nvars
    # Frames are (domains, depth); children are pushed in reverse to pop in order.
    stack = [(doms, 0)]
    while stack:
        doms, k = stack.pop()
        if k == n:
            yield prob.to_hom(doms)
            continue
        children = []
        for val in _bits(doms[k]):
            nd = list(doms)
            if nd[k] != 1 << val:
                nd[k] = 1 << val
                if not prob.propagate(nd, list(prob.watch[k])):
                    continue
            children.append((nd, k + 1))
        stack.extend(reversed(children))


def hom_enumerate(b: Structure, a: Structure, limit: int | None = None,
                  fixed: Mapping[str, str] | None = None) -> Enumeration:
    if limit is not None and limit < 1:
        raise ValueError("limit must be positive")
    out = Enumeration()
    for h in iter_homomorphisms(b, a, fixed):
        if limit is not None and len(out) >= limit:
            out.truncated = True
            break
        out.append(h)
    return out


def hom_count(b: Structure, a: Structure) -> int:
    return sum(1 for _ in iter_homomorphisms(b, a))
