import pytest
from hypothesis import given, strategies as st

from homlab.errors import ImproperFilter, InputError
from homlab.filters import (
    FiniteFilter,
    all_filters,
    contains_filter,
    extend_to_ultrafilter,
    filter_from_generators,
    filter_membership,
    is_ultrafilter,
    is_ultrafilter_by_complements,
    parse_generators,
    parse_indices,
    principal,
    trivial_filter,
)
from oracles import all_subsets, brute_generated_filter, is_filter


def test_generated_filter_examples():
    assert filter_from_generators(3, [{0, 1}, {1, 2}]).base == {1}
    with pytest.raises(ImproperFilter):
        filter_from_generators(3, [{0}, {1}])
    assert filter_from_generators(3, [{0, 1, 2}]) == trivial_filter(3)
    assert filter_from_generators(3, []) == trivial_filter(3)


def test_membership_examples():
    f = principal(3, [1])
    assert filter_membership(f, {1, 2})
    assert not filter_membership(f, {0, 2})
    assert {0, 1} in principal(2, [0, 1])


def test_ultrafilter_examples():
    assert is_ultrafilter(principal(3, [2]))
    assert not is_ultrafilter(principal(3, [0, 1]))
    assert not is_ultrafilter_by_complements(principal(3, [0, 1]))
    assert is_ultrafilter(trivial_filter(1))


def test_extensions():
    assert [u.base for u in extend_to_ultrafilter(principal(3, [0, 2]))] == [{0}, {2}]
    assert extend_to_ultrafilter(principal(3, [1])) == [principal(3, [1])]
    assert len(extend_to_ultrafilter(trivial_filter(3))) == 3


def test_bad_filters():
    with pytest.raises(ImproperFilter):
        FiniteFilter(2, frozenset())
    with pytest.raises(InputError):
        principal(2, [5])
    with pytest.raises(InputError):
        parse_indices("0,x")
    assert parse_generators("0,1;1,2") == [{0, 1}, {1, 2}]


def test_all_filters_count():
    # one filter per nonempty base
    assert [len(all_filters(m)) for m in range(1, 5)] == [1, 3, 7, 15]


gens_strategy = st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.frozensets(st.integers(0, n - 1)), max_size=3)))


@given(gens_strategy)
def test_generated_filter_is_least_closed_family(data):
    n, gens = data
    closed = brute_generated_filter(n, gens)
    if frozenset() in closed:
        with pytest.raises(ImproperFilter):
            filter_from_generators(n, gens)
        return
    f = filter_from_generators(n, gens)
    members = set(f.members())
    assert members == closed
    assert is_filter(n, members)
    assert all(filter_membership(f, x) == (x in closed) for x in all_subsets(n))


@given(st.integers(1, 4).flatmap(lambda n: st.sampled_from(all_filters(n))))
def test_ultrafilter_laws(f):
    assert is_ultrafilter(f) == is_ultrafilter_by_complements(f)
    for u in extend_to_ultrafilter(f):
        assert is_ultrafilter(u) and contains_filter(u, f)
        assert all(filter_membership(u, x) for x in f.members())
