from __future__ import annotations

from itertools import product
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupirreg.abelian import GroupError, GroupSpec, all_abelian_groups, parse_group


def test_add_in_product():
    g = parse_group("Z2xZ4")
    assert g.add((1, 1), (1, 2)) == (0, 3)
    assert g.neg((1, 1)) == (1, 3)


def test_elements_lexicographic():
    assert GroupSpec((2, 2)).elements() == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_groups_of_order_8():
    assert [str(s) for s in all_abelian_groups(8)] == ["Z8", "Z2xZ4", "Z2xZ2xZ2"]


def test_groups_of_prime_order():
    assert [str(s) for s in all_abelian_groups(7)] == ["Z7"]


def test_groups_of_order_one():
    (g,) = all_abelian_groups(1)
    assert g.order == 1 and g.elements() == [()]


@pytest.mark.parametrize("text,factors", [("Z8", (8,)), ("z3xZ3", (3, 3)), ("Z2XZ4", (2, 4)), ("Z1", ())])
def test_parse(text, factors):
    assert parse_group(text).factors == factors


@pytest.mark.parametrize("text", ["", "Z0", "Z", "Zx", "Z2x", "Y4", "Z2*Z3"])
def test_parse_rejects(text):
    with pytest.raises(GroupError):
        parse_group(text)


def test_element_round_trip():
    g = parse_group("Z3xZ5")
    for a in g.elements():
        assert g.parse_element(g.format_element(a)) == a
    c = GroupSpec.cyclic(9)
    assert c.format_element((4,)) == "4"
    with pytest.raises(GroupError):
        c.parse_element("13")
    assert c.element(13) == (4,)


def test_canonical_and_isomorphic():
    assert GroupSpec((6,)).isomorphic(GroupSpec((2, 3)))
    assert not GroupSpec((4,)).isomorphic(GroupSpec((2, 2)))
    assert GroupSpec((3, 2, 2)).canonical().factors == (2, 6)


def _count_invariant_factor_tuples(s: int) -> int:
    # brute force: non-decreasing tuples d1 | d2 | ... with product s, all d > 1
    def rec(rem, prev):
        if rem == 1:
            return 1
        total = 0
        for d in range(2, rem + 1):
            if rem % d == 0 and (prev == 1 or d % prev == 0):
                total += rec(rem // d, d)
        return total

    return rec(s, 1)


@pytest.mark.parametrize("s", range(1, 65))
def test_group_counts_match_brute_force(s):
    groups = all_abelian_groups(s)
    assert len(groups) == _count_invariant_factor_tuples(s)
    assert all(g.order == s for g in groups)
    for a, b in product(groups, repeat=2):
        if a is not b:
            assert not a.isomorphic(b)


specs = st.lists(st.integers(2, 7), min_size=1, max_size=3).map(lambda fs: GroupSpec(tuple(fs)))


@st.composite
def spec_and_elements(draw, k=3):
    g = draw(specs)
    els = [tuple(draw(st.integers(0, f - 1)) for f in g.factors) for _ in range(k)]
    return g, els


@given(spec_and_elements())
def test_group_axioms(data):
    g, (a, b, c) = data
    assert g.add(a, b) == g.add(b, a)
    assert g.add(g.add(a, b), c) == g.add(a, g.add(b, c))
    assert g.add(a, g.zero) == a
    assert g.add(a, g.neg(a)) == g.zero
    assert g.sub(a, b) == g.add(a, g.neg(b))
    assert g.mul(3, a) == g.add(a, g.add(a, a))


@given(specs)
@settings(max_examples=50)
def test_order_and_index(g):
    els = g.elements()
    assert len(els) == g.order == prod(g.factors)
    assert len(set(els)) == g.order
    assert all(g.index(a) == i for i, a in enumerate(els))


@given(st.lists(st.sampled_from([3, 5, 7, 9]), min_size=1, max_size=2))
def test_odd_order_has_no_involutions(fs):
    g = GroupSpec(tuple(fs))
    assert g.has_odd_order()
    assert [a for a in g.elements() if g.neg(a) == a] == [g.zero]


def test_invalid_element_rejected():
    g = GroupSpec((2, 4))
    assert not g.contains((2, 0))
    assert not g.contains((1,))
    with pytest.raises(GroupError):
        g.add((1,), (0, 0))
