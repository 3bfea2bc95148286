"""Scripted compositions of the library operations.

Each function returns a JSON-ready summary and raises a ``TheoremGuardError``
subclass when a construction fails a check that should hold at finite scale.
"""

from __future__ import annotations

import random

from .core import (
    Homomorphism,
    complete_graph,
    connected_components,
    find_isomorphism,
    induced_substructure,
    reachability_power,
    require_valid,
    undirected_cycle,
    undirected_path,
)
from .corpus import random_pairs
from .cycles import (
    component_census,
    directed_cycle,
    divisor_transfer,
    quotient_coloring,
)
from .errors import CensusFailure, ExtractionFailure, ImproperFilter, ValidationFailure
from .filters import (
    all_filters,
    contains_filter,
    extend_to_ultrafilter,
    principal,
    trivial_filter,
)
from .gadgets import Gadget, extract_ultrafilter, lift_hom
from .power import (
    AgreementQuotient,
    canonical_embedding,
    coordinatewise,
    push_hom_to_quotient,
    quotient_by_agreement,
    tolerant_power,
    ultrafilter_hom,
)
from .solver import hom_enumerate, hom_exists


def lauchli_roundtrip(n: int = 3, index_size: int = 2, limit: int | None = None) -> dict:
    """Extract an ultrafilter from every coloring of (K_n)^I_F, for every filter F."""
    kn = complete_graph(n)
    colorings = extractions = roundtrips = 0
    per_filter = []
    for f in all_filters(index_size):
        p = tolerant_power(kn, f)
        found = set()
        for h in hom_enumerate(p.carrier, kn, limit):
            colorings += 1
            w = extract_ultrafilter(p, h)
            if not contains_filter(w.extracted, f):
                raise ExtractionFailure(f"extracted {w.extracted} does not contain {f}")
            found.add(min(w.extracted.base))
            extractions += 1
        for u in extend_to_ultrafilter(f):
            back = extract_ultrafilter(p, ultrafilter_hom(p, u)).extracted
            if back != u:
                raise ExtractionFailure(f"round trip sent {u} to {back}")
            roundtrips += 1
        per_filter.append({"base": sorted(f.base), "ultrafilters_hit": sorted(found)})
    return {"n": n, "index_size": index_size, "colorings": colorings,
            "extractions": extractions, "roundtrips": roundtrips, "filters": per_filter}


def com_ft_roundtrip(count: int = 300, seed: int = 0, max_maps: int = 256) -> dict:
    """Canonical embedding followed by each ultrafilter map, on random pairs."""
    embedded = improper = composites = 0
    for b, a in random_pairs(count, seed, max_source=5, max_target=3):
        if a.size ** b.size > max_maps:
            continue
        try:
            emb = canonical_embedding(b, a)
        except ImproperFilter:
            if hom_exists(b, a) is not None:
                raise ValidationFailure("filter improper although a homomorphism exists")
            improper += 1
            continue
        embedded += 1
        for u in extend_to_ultrafilter(emb.filter):
            require_valid(emb.through_ultrafilter(u), ValidationFailure, "round-trip map")
            composites += 1
    return {"embedded": embedded, "improper": improper, "composites": composites}


def pp_lift(index_size: int = 2, limit: int | None = None) -> dict:
    """Every coloring of a C_5 power is a coloring of the K_5 power on the same functions."""
    c5 = undirected_cycle(5)
    gadget = Gadget(undirected_path(3), "0", "3")
    k5 = complete_graph(5)
    checked = pairs = 0
    for f in all_filters(index_size):
        p = tolerant_power(c5, f)
        clique_power = tolerant_power(k5, f)
        for h in hom_enumerate(p.carrier, c5, limit):
            result = lift_hom(gadget, p, h)
            direct = Homomorphism(clique_power.carrier, k5, dict(h.assignment)).is_valid()
            if not result.verdict or result.verdict != direct:
                raise ValidationFailure(f"coloring over {f} not lifted: {result.violations[:2]}")
            checked += 1
            pairs += result.checked_pairs
    return {"index_size": index_size, "colorings": checked, "adjacent_pairs": pairs}


def random_cycle_coloring(q: AgreementQuotient, rng: random.Random) -> Homomorphism:
    """Coloring of a C_n power: an independent random rotation on each quotient component."""
    n = q.power.base_structure.size
    census = component_census(q)
    out = {}
    for iso in census.witnesses:
        shift = rng.randrange(n)
        for x, y in iso.assignment.items():
            out[x] = str((int(y) + shift) % n)
    on_quotient = Homomorphism(q.quotient, q.power.base_structure, out)
    return require_valid(q.projection.then(on_quotient), ValidationFailure, "random coloring")


def divisor_transfers(products=(4, 6), max_index: int = 2, limit: int = 200,
                      samples: int = 200, seed: int = 0) -> dict:
    """Transfer colorings of (C_kp)-powers down to (C_p)-powers and check them."""
    rng = random.Random(seed)
    checked = 0
    for kp in products:
        big = directed_cycle(kp)
        for p in range(2, kp):
            if kp % p:
                continue
            k = kp // p
            for m in range(1, max_index + 1):
                for f in all_filters(m):
                    power = tolerant_power(big, f)
                    q = quotient_by_agreement(power)
                    colorings = list(hom_enumerate(power.carrier, big, limit))
                    colorings += [random_cycle_coloring(q, rng) for _ in range(samples)]
                    colorings += [ultrafilter_hom(power, u) for u in extend_to_ultrafilter(f)]
                    for phi in colorings:
                        psi = divisor_transfer(power, phi, k, p)
                        _check_successor(psi, p)
                        checked += 1
    return {"transfers": checked}


def _check_successor(psi: Homomorphism, p: int):
    walks = reachability_power(psi.source, "E", 1)
    for f, g in walks.relations["E"]:
        if int(psi(g)) != (int(psi(f)) + 1) % p:
            raise ValidationFailure(f"transferred coloring breaks succession at {f} -> {g}")


def census_sweep(max_n: int = 4, max_index: int = 3) -> dict:
    counts = []
    for n in range(2, max_n + 1):
        for m in range(1, max_index + 1):
            for f in all_filters(m):
                c = component_census(quotient_by_agreement(tolerant_power(directed_cycle(n), f)))
                counts.append({"n": n, "base": sorted(f.base), "index_size": m,
                               "components": c.count})
    return {"census": counts}


def pk_induction(p: int = 2, k: int = 1, index_size: int = 2, base=None) -> dict:
    """Coloring of a C_{p^(k+1)} power from colorings at C_{p^k} and C_p.

    Reduce coordinatewise to C_{p^k}, color there, collapse to the quotient,
    then fix each component of the quotient by a map between the two
    structures of p^k-step walks on the zero sets, which are copies of C_p.
    """
    f = trivial_filter(index_size) if base is None else principal(index_size, base)
    big_n, small_n = p ** (k + 1), p ** k
    big_c, small_c = directed_cycle(big_n), directed_cycle(small_n)
    big = tolerant_power(big_c, f)
    small = tolerant_power(small_c, f)
    reduce = quotient_coloring(big_n, small_n)
    reduce_all = require_valid(coordinatewise(big, small, reduce), ValidationFailure,
                               "coordinatewise reduction")
    small_coloring = hom_exists(small.carrier, small_c)
    if small_coloring is None:
        raise ValidationFailure(f"no coloring of the C_{small_n} power")
    q = quotient_by_agreement(big)
    psi = push_hom_to_quotient(q, reduce_all.then(small_coloring))

    zeros = [x for x in q.quotient.universe if psi(x) == "0"]
    walk_a = induced_substructure(reachability_power(q.quotient, "E", small_n), zeros)
    base_zeros = [x for x in big_c.universe if reduce(x) == "0"]
    walk_b = induced_substructure(reachability_power(big_c, "E", small_n), base_zeros)
    cp = directed_cycle(p)
    if find_isomorphism(walk_b, cp, budget=max(30, p)) is None:
        raise CensusFailure("zero set of the base cycle is not a copy of C_p")
    for block in connected_components(walk_a):
        if find_isomorphism(induced_substructure(walk_a, block), cp, budget=max(30, p)) is None:
            raise CensusFailure(f"walk component {block} is not a copy of C_p")
    chi_star = hom_exists(walk_a, walk_b)
    if chi_star is None:
        raise ValidationFailure("no map between the walk structures")

    succ = {x: y for x, y in q.quotient.relations["E"]}
    chi = {}
    for block in connected_components(q.quotient):
        start = next(x for x in block if x in chi_star.assignment)
        x, value = start, int(chi_star(start))
        for _ in range(len(block)):
            chi[x] = str(value % big_n)
            x, value = succ[x], value + 1
    for x in zeros:
        if chi[x] != chi_star(x):
            raise ValidationFailure(f"component map disagrees with the walk map at {x}")
    chi_hom = require_valid(Homomorphism(q.quotient, big_c, chi), ValidationFailure,
                            "component map")
    if any(reduce(chi[x]) != psi(x) for x in q.quotient.universe):
        raise ValidationFailure("component map does not reduce to the quotient coloring")
    lifted = require_valid(q.projection.then(chi_hom), ValidationFailure, "lifted coloring")
    return {"p": p, "k": k, "index_size": index_size, "base": sorted(f.base),
            "carrier": big.carrier.size, "classes": q.quotient.size,
            "components": len(connected_components(q.quotient)),
            "coloring": lifted.to_json()["assignment"]}
