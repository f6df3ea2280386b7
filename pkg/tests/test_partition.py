from __future__ import annotations

import pytest

from groupirreg.abelian import GroupSpec, all_abelian_groups, parse_group
from groupirreg.partition import (
    LabelSetTooSmall,
    PartitionError,
    SkolemPartition,
    build_label_set,
    skolem_partition,
    split_triplets,
)

ODD_ORDERS = range(1, 82, 2)


def independent_check(part: SkolemPartition) -> None:
    g = part.group
    t = g.order
    tri, pairs = part.triplets, part.pairs
    assert len(tri) == 2 * (t // 6)
    assert len(pairs) == (t % 6 - 1) // 2
    for x, y, z in tri:
        assert g.add(g.add(x, y), z) == g.zero
    for i in range(0, len(tri), 2):
        assert [g.neg(a) for a in tri[i]] == list(tri[i + 1])
    for d, e in pairs:
        assert g.add(d, e) == g.zero and d != e
    covered = [a for cell in (*tri, *pairs) for a in cell]
    assert sorted(covered) == sorted(a for a in g.elements() if a != g.zero)


def test_z7():
    p = skolem_partition(GroupSpec.cyclic(7))
    assert p.format_lines() == ["T: 1 2 4", "T: 6 5 3"]


def test_z9():
    p = skolem_partition(GroupSpec.cyclic(9))
    assert p.format_lines() == ["T: 1 2 6", "T: 8 7 3", "D: 4 5"]


@pytest.mark.parametrize("k,lines", [(1, []), (3, ["D: 1 2"]), (5, ["D: 1 4", "D: 2 3"])])
def test_small_cyclic(k, lines):
    assert skolem_partition(GroupSpec.cyclic(k)).format_lines() == lines


def test_z3xz3():
    p = skolem_partition(parse_group("Z3xZ3"))
    independent_check(p)
    assert p.triplet_pairs == 1 and len(p.pairs) == 1


def test_even_order_rejected():
    with pytest.raises(PartitionError):
        skolem_partition(GroupSpec.cyclic(8))


@pytest.mark.parametrize("order", ODD_ORDERS)
def test_all_odd_groups_up_to_81(order):
    for spec in all_abelian_groups(order):
        part = skolem_partition(spec)
        independent_check(part)


def test_deterministic():
    spec = parse_group("Z3xZ9")
    assert skolem_partition(spec) == skolem_partition(spec)


def test_check_catches_broken_partitions():
    g = GroupSpec.cyclic(7)
    good = skolem_partition(g)
    bad = SkolemPartition(g, (good.triplets[0], good.triplets[0]), ())
    with pytest.raises(PartitionError):
        bad.check()
    with pytest.raises(PartitionError):
        SkolemPartition(g, ((1,), (2,), (3,)), ()).check()


def test_split_triplets():
    g = GroupSpec.cyclic(7)
    assert split_triplets(g, [((1,), (2,), (4,)), ((6,), (5,), (3,))]) == [
        ((1,), (6,)),
        ((2,), (5,)),
        ((4,), (3,)),
    ]


def _ints(S):
    return sorted(a[0] for a in S.elements())


def test_label_set_keeps_triplets():
    S = build_label_set(skolem_partition(GroupSpec.cyclic(7)), 1, 0, False)
    assert _ints(S) == [0, 1, 2, 3, 4, 5, 6]
    assert S.triplet_pairs == 1 and S.pairs == ()


def test_label_set_pairs_only():
    S = build_label_set(skolem_partition(GroupSpec.cyclic(5)), 0, 2, False)
    assert S.pairs == (((1,), (4,)), ((2,), (3,)))
    assert _ints(S) == [0, 1, 2, 3, 4]
    assert _ints(build_label_set(skolem_partition(GroupSpec.cyclic(5)), 0, 0, False)) == [0]


def test_label_set_splits_surplus_triplets():
    S = build_label_set(skolem_partition(GroupSpec.cyclic(7)), 0, 3, False)
    assert S.pairs == (((1,), (6,)), ((2,), (5,)), ((4,), (3,)))


def test_label_set_odd_triplet():
    S = build_label_set(skolem_partition(GroupSpec.cyclic(9)), 1, 0, True)
    assert S.odd_triplet == ((0,), (4,), (5,))


def test_label_set_too_small():
    part = skolem_partition(GroupSpec.cyclic(7))
    with pytest.raises(LabelSetTooSmall):
        build_label_set(part, 2, 0, False)
    with pytest.raises(LabelSetTooSmall):
        build_label_set(part, 1, 1, False)
