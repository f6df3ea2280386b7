from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import union
from groupirreg.abelian import GroupSpec, all_abelian_groups, parse_group
from groupirreg.graph import Graph, Parity, Walk, shortest_parity_walk
from groupirreg.labeler import (
    STAR_CHAIN,
    STAR_FREE,
    EvenOrderGroupError,
    LabelerError,
    PreconditionError,
    connected_sg_value,
    is_exceptional_star,
    label_auto,
    label_general,
    label_star_free,
    label_without_even_stars,
    phi_even,
    phi_odd,
    sg_dispatch,
    star_parameters,
)
from groupirreg.labeling import Labeling, LabelingError, apply_walk
from groupirreg.oracle import exact_sg, is_irregular
from groupirreg.partition import LabelSet, build_label_set, skolem_partition

Z = GroupSpec.cyclic


def _w(lab):
    return {v: a[0] for v, a in lab.weights().items()}


# ----------------------------------------------------------------------
# walks and walk operators
# ----------------------------------------------------------------------


def test_apply_walk_alternates_signs():
    g = union(("P", 4))
    lab = apply_walk(Labeling.zero(Z(5), g), Walk((0, 1, 2, 3)), (2,))
    assert [lab[e][0] for e in g.sorted_edges] == [2, 3, 2]
    assert _w(lab) == {0: 2, 1: 0, 2: 0, 3: 2}


def test_apply_walk_accumulates_on_repeated_edges():
    g = union(("P", 3))
    lab = apply_walk(Labeling.zero(Z(7), g), Walk((0, 1, 0, 1, 2)), (1,))
    # edge 01 gets +1 -1 +1, edge 12 gets -1
    assert lab[(0, 1)] == (1,) and lab[(1, 2)] == (6,)
    assert _w(lab) == {0: 1, 1: 0, 2: 6}


def test_apply_walk_rejects_non_walks():
    g = union(("P", 3))
    with pytest.raises(LabelingError):
        apply_walk(Labeling.zero(Z(3), g), Walk((0, 2)), (1,))
    with pytest.raises(LabelingError):
        apply_walk(Labeling.zero(Z(3), g), Walk((0, 1)), (5,))


@st.composite
def walk_cases(draw):
    n = draw(st.integers(2, 7))
    edges = {(draw(st.integers(0, i - 1)), i) for i in range(1, n)}
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=5))
    edges |= {(min(a, b), max(a, b)) for a, b in extra if a != b}
    g = Graph.from_edges(sorted(edges), n)
    start = draw(st.integers(0, n - 1))
    walk = [start]
    for _ in range(draw(st.integers(1, 9))):
        walk.append(draw(st.sampled_from(g.adj[walk[-1]])))
    spec = draw(st.sampled_from([Z(5), Z(8), parse_group("Z2xZ4"), parse_group("Z3xZ3")]))
    a = draw(st.sampled_from(spec.elements()))
    return g, spec, Walk(tuple(walk)), a


@given(walk_cases())
@settings(max_examples=300)
def test_apply_walk_weight_delta(case):
    g, spec, walk, a = case
    rng = random.Random(len(walk.vertices))
    base = Labeling(spec, g, {e: rng.choice(spec.elements()) for e in g.edges})
    after = apply_walk(base, walk, a)
    w0, w1 = base.weights(), after.weights()
    expect = {v: spec.zero for v in range(g.n)}
    end_delta = a if walk.edge_count % 2 == 1 else spec.neg(a)
    expect[walk.start] = spec.add(expect[walk.start], a)
    expect[walk.end] = spec.add(expect[walk.end], end_delta)
    if walk.start == walk.end:
        expect[walk.start] = spec.add(a, end_delta)
    for v in range(g.n):
        assert spec.sub(w1[v], w0[v]) == expect[v]


def test_phi_even_on_odd_cycle():
    g = union(("C", 5))
    lab = phi_even(Labeling.zero(Z(5), g), 0, 1, (3,))
    assert _w(lab) == {0: 3, 1: 3, 2: 0, 3: 0, 4: 0}


def test_phi_odd_on_path():
    g = union(("P", 5))
    lab = phi_odd(Labeling.zero(Z(7), g), 0, 4, (2,))
    assert _w(lab) == {0: 2, 1: 0, 2: 0, 3: 0, 4: 5}


def test_phi_even_needs_opposite_classes_in_bipartite_component():
    g = union(("C", 6))
    with pytest.raises(PreconditionError):
        phi_even(Labeling.zero(Z(7), g), 0, 2, (1,))
    with pytest.raises(PreconditionError):
        phi_odd(Labeling.zero(Z(7), g), 0, 1, (1,))


# ----------------------------------------------------------------------
# star-free construction
# ----------------------------------------------------------------------


def test_triangle_with_odd_triplet():
    g = union(("C", 3))
    S = LabelSet(Z(3), (), (), ((0,), (1,), (2,)))
    lab = label_without_even_stars(g, Z(3), S)
    assert sorted(_w(lab).values()) == [0, 1, 2]


def test_c4_with_pairs():
    g = union(("C", 4))
    S = build_label_set(skolem_partition(Z(5)), 0, 2, False)
    lab = label_without_even_stars(g, Z(5), S)
    assert _w(lab) == {0: 1, 1: 2, 2: 4, 3: 3}  # pairs (1,4), (2,3) across the vertex pairs


def test_c6_with_triplets():
    g = union(("C", 6))
    S = build_label_set(skolem_partition(Z(7)), 1, 0, False)
    lab = label_without_even_stars(g, Z(7), S)
    assert is_irregular(g, lab)
    assert sorted(_w(lab).values()) == [1, 2, 3, 4, 5, 6]


def test_star_free_rejects_stars_and_small_components():
    with pytest.raises(LabelerError):
        label_star_free(union(("S", 3)), Z(5))
    with pytest.raises(LabelerError):
        label_star_free(union(("C", 3), ("P", 2)), Z(5))


def test_star_free_rejects_even_order():
    with pytest.raises(EvenOrderGroupError):
        label_star_free(union(("C", 3), ("C", 3)), Z(6))


@pytest.mark.parametrize(
    "parts",
    [
        (("C", 3), ("C", 3), ("C", 3)),
        (("C", 5),),
        (("C", 6), ("C", 3)),
        (("K", 4), ("P", 3)),
        (("C", 4), ("C", 4), ("C", 3)),
        (("P", 6), ("K", 5)),
        (("C", 4), ("C", 4)),
        (("K", 4), ("C", 4), ("P", 4)),
    ],
)
def test_star_free_all_groups_of_order_n_or_n_plus_one(parts):
    g = union(*parts)
    t = g.n if g.n % 2 else g.n + 1
    for spec in all_abelian_groups(t):
        assert is_irregular(g, label_star_free(g, spec))


# ----------------------------------------------------------------------
# stars
# ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "parts,n,q4,K,min_order",
    [
        ((("S", 3),), 4, 0, 7, 11),
        ((("S", 3), ("S", 3)), 8, 1, 7, 15),
        ((("S", 3), ("C", 4)), 8, 2, 3, 11),
        ((("S", 3), ("S", 3), ("C", 4)), 12, 3, 3, 15),
        ((("S", 3), ("S", 3), ("C", 4), ("C", 4)), 16, 5, 0, 17),
        ((("S", 7), ("C", 4)), 12, 4, 3, 15),
        ((("S", 3), ("C", 7)), 11, 2, 0, 11),
    ],
)
def test_star_parameters(parts, n, q4, K, min_order):
    p = star_parameters(union(*parts))
    assert (p.n, p.q4, p.K, p.min_order) == (n, q4, K, min_order)


def test_two_small_stars_over_z15():
    g = union(("S", 3), ("S", 3))
    lab = label_general(g, Z(15))
    assert is_irregular(g, lab)
    assert _w(lab) == {0: 6, 1: 1, 2: 2, 3: 3, 4: 9, 5: 14, 6: 13, 7: 12}


def test_label_general_rejects_orders_below_n_plus_k():
    g = union(("S", 3), ("S", 3))
    with pytest.raises(PreconditionError, match="smallest admissible odd order is 15"):
        label_general(g, Z(13))
    with pytest.raises(PreconditionError, match="< n=8"):
        label_general(g, Z(7))


@pytest.mark.parametrize(
    "parts",
    [
        (("S", 7), ("C", 4)),
        (("S", 3), ("C", 7)),
        (("S", 3), ("S", 3), ("S", 3), ("C", 6)),
        (("S", 5), ("K", 4), ("C", 3)),
        (("S", 9), ("S", 7), ("P", 5)),
    ],
)
def test_label_general_at_min_order_and_above(parts):
    g = union(*parts)
    t0 = star_parameters(g).min_order
    for t in (t0, t0 + 2):
        for spec in all_abelian_groups(t):
            assert is_irregular(g, label_general(g, spec))


def test_label_general_is_deterministic():
    g = union(("S", 3), ("S", 5), ("C", 4))
    spec = GroupSpec.cyclic(star_parameters(g).min_order)
    assert label_general(g, spec) == label_general(g, spec)


# ----------------------------------------------------------------------
# dispatch
# ----------------------------------------------------------------------


@pytest.mark.parametrize("r,exceptional", [(1, False), (3, False), (7, False), (25, True), (79, False)])
def test_exceptional_stars(r, exceptional):
    assert is_exceptional_star(union(("S", r))) is exceptional


@pytest.mark.parametrize(
    "parts,value", [((("C", 5),), 5), ((("C", 6),), 7), ((("K", 4),), 4), ((("S", 25),), 28), ((("P", 3),), 3)]
)
def test_connected_values(parts, value):
    assert connected_sg_value(union(*parts)) == value


@pytest.mark.parametrize("parts", [(("P", 3),), (("C", 4),), (("P", 4),), (("C", 5),), (("S", 3),), (("K", 4),)])
def test_connected_values_match_search(parts):
    g = union(*parts)
    assert exact_sg(g, 2 * g.n).value == connected_sg_value(g)


@pytest.mark.parametrize(
    "parts,order,theorem",
    [
        ((("C", 3),) * 3, 9, "star-free"),
        ((("C", 3),) * 2, 7, "star-free"),
        ((("S", 7),) * 2, 17, "no-small-stars"),
        ((("S", 3), ("C", 4)), 11, "even-star-chaining"),
        ((("C", 6),), 7, "connected"),
    ],
)
def test_dispatch(parts, order, theorem):
    d = sg_dispatch(union(*parts))
    assert (d.guaranteed_order, d.theorem) == (order, theorem)
    assert d.fallback_bound == 2 * d.n


def test_dispatch_even_n_without_small_stars_is_at_most_n_plus_3():
    for parts in [(("S", 7), ("C", 4)), (("S", 9), ("C", 6)), (("S", 7), ("S", 9)), (("S", 7), ("C", 3), ("P", 3))]:
        d = sg_dispatch(union(*parts))
        assert d.guaranteed_order <= d.n + 3


def test_label_auto():
    lab, method = label_auto(union(("S", 3), ("S", 3)), Z(15))
    assert method == STAR_CHAIN
    lab, method = label_auto(union(("C", 3), ("C", 3), ("C", 3)), Z(9))
    assert method == STAR_FREE
    with pytest.raises(EvenOrderGroupError):
        label_auto(union(("C", 4),), Z(4))
