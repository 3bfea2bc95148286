from math import gcd

import pytest

from homlab.core import Homomorphism
from homlab.cycles import (
    choice_filter,
    component_census,
    crt_isomorphism,
    directed_cycle,
    distinguished_subset,
    divisor_transfer,
    evaluation_coloring,
    linear_extension,
    order_base,
    order_structure_hom,
    quotient_coloring,
)
from homlab.errors import BadN, InputError, InvalidHomomorphism, NotCoprime
from homlab.filters import all_filters, extend_to_ultrafilter, principal, trivial_filter
from homlab.power import quotient_by_agreement, tolerant_power, ultrafilter_hom
from homlab.solver import hom_exists


def test_crt_all_small_coprime_pairs():
    for p in range(2, 16):
        for q in range(2, 16):
            if p * q <= 30 and gcd(p, q) == 1:
                h = crt_isomorphism(p, q)
                assert h.is_valid()
    assert crt_isomorphism(2, 3)("5") == "(1,2)"


def test_crt_rejections():
    with pytest.raises(BadN):
        crt_isomorphism(1, 5)
    with pytest.raises(NotCoprime):
        crt_isomorphism(2, 4)


def test_quotient_coloring():
    h = quotient_coloring(6, 3)
    assert h.is_valid() and h("5") == "2"
    with pytest.raises(InputError):
        quotient_coloring(6, 4)


def test_divisor_transfer_of_projection():
    f = trivial_filter(2)
    big = tolerant_power(directed_cycle(6), f)
    phi = ultrafilter_hom(big, principal(2, [0]))
    for k, p in ((3, 2), (2, 3)):
        psi = divisor_transfer(big, phi, k, p)
        assert all(psi(x) == x.split(",")[0] for x in psi.source.universe)


def test_divisor_transfer_single_index_is_division():
    big = tolerant_power(directed_cycle(6), trivial_filter(1))
    phi = Homomorphism(big.carrier, directed_cycle(6), {x: x for x in big.carrier.universe})
    psi = divisor_transfer(big, phi, 2, 3)
    assert psi.assignment == {str(i): str(2 * i // 2) for i in range(3)}
    psi = divisor_transfer(big, phi, 3, 2)
    assert psi.assignment == {"0": "0", "1": "1"}


def test_divisor_transfer_of_solver_colorings():
    for m in (1, 2):
        for f in all_filters(m):
            big = tolerant_power(directed_cycle(4), f)
            phi = hom_exists(big.carrier, directed_cycle(4))
            assert divisor_transfer(big, phi, 2, 2).is_valid()


def test_census_examples():
    def census(n, base, m):
        q = quotient_by_agreement(tolerant_power(directed_cycle(n), principal(m, base)))
        return component_census(q)

    assert census(3, [0], 2).count == 1
    c = census(3, [0, 1], 2)
    assert c.count == 3 and all(len(b) == 3 for b in c.components)
    assert census(2, [0, 1, 2], 3).count == 4


def test_census_law_up_to_four():
    for n in range(2, 5):
        for m in (1, 2, 3):
            for f in all_filters(m):
                q = quotient_by_agreement(tolerant_power(directed_cycle(n), f))
                assert component_census(q).count == n ** (len(f.base) - 1)


def test_choice_filter_examples():
    inst = choice_filter([["a", "b"], ["c", "d"]])
    assert len(inst.index) == 9 and len(inst.filter.base) == 4
    inst = choice_filter([["a", "b", "c"]])
    assert len(inst.index) == 4 and len(inst.filter.base) == 3
    with pytest.raises(InputError):
        choice_filter([])
    with pytest.raises(InputError):
        choice_filter([["a", "b"], ["c"]])
    with pytest.raises(InputError):
        choice_filter([["a", "b"], ["b", "c"]])


def test_distinguished_subsets_from_ultrafilters():
    families = [[["a", "b"]], [["a", "b"], ["c", "d"]], [["a", "b", "c"]],
                [["a", "b", "c"], ["d", "e", "f"]]]
    for family in families:
        inst = choice_filter(family)
        for u in extend_to_ultrafilter(inst.filter):
            (i0,) = u.base
            res = distinguished_subset(inst, evaluation_coloring(i0))
            for x, y in zip(inst.family, res.subsets):
                assert 0 < len(y) < len(x)
                if inst.p == 2:
                    assert len(y) == 1
                # the chosen element of the total choice function is singled out
                assert y == (inst.index[i0][inst.family.index(x)],)


def test_distinguished_subset_on_materialized_power():
    inst = choice_filter([["a", "b"], ["c", "d"]])
    power = tolerant_power(directed_cycle(2), inst.filter)
    phi = hom_exists(power.carrier, directed_cycle(2))
    res = distinguished_subset(inst, phi)
    assert all(len(y) == 1 for y in res.subsets)
    # the member of the first bijection class read for set {a,b}: a -> 0, b -> 1
    used = power.element(0 if c[0] is None else "ab".index(c[0]) for c in inst.index)
    bad = dict(phi.assignment)
    bad[used] = str(1 - int(bad[used]))
    with pytest.raises(InvalidHomomorphism):
        distinguished_subset(inst, bad)


def test_distinguished_subset_rejects_invalid_callable():
    inst = choice_filter([["a", "b", "c"]])
    with pytest.raises(InvalidHomomorphism):
        distinguished_subset(inst, lambda values: 0)


def test_order_hom_single_index_is_identity():
    oh = order_structure_hom(trivial_filter(1))
    assert oh.hom.assignment == {"0": "0", "1": "1"}


def test_order_hom_all_bases_up_to_four():
    a = order_base()
    for m in range(1, 5):
        for f in all_filters(m):
            oh = order_structure_hom(f)
            assert oh.hom.is_valid() and oh.hom.target == a
            assert oh.quotient.projection.then(oh.hom).is_valid()


def test_linear_extension_respects_order():
    q = quotient_by_agreement(tolerant_power(order_base(), principal(3, [1, 2])))
    order = linear_extension(q.quotient, q.quotient.relations["leq"])
    rank = {x: i for i, x in enumerate(order)}
    assert all(rank[x] <= rank[y] for x, y in q.quotient.relations["leq"])
