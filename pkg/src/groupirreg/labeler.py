"""Constructive group-irregular labelings.

Everything is built from two walk operators.  ``phi_even(v1, v2, a)`` runs
``+a, -a, +a, ...`` along a shortest walk with an odd number of edges and
adds ``a`` to both endpoint weights; ``phi_odd`` uses a shortest walk with an
even number of edges and adds ``a`` to ``w(v1)`` and ``-a`` to ``w(v2)``.
Interior vertices never change, so the weights of a sequence of operations
are simply the sums of the endpoint contributions.

Two constructions are provided:

* :func:`label_without_even_stars` places the weights of a prepared
  :class:`~groupirreg.partition.LabelSet` on a graph with no even stars
  (no ``K_{1,2u+1}`` components) and no components of order < 3.
* :func:`label_general` additionally handles even stars by chaining them in
  pairs, and needs an odd-order group of order at least ``n + K``
  (see :func:`star_parameters`).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .abelian import Element, GroupSpec, all_abelian_groups
from .graph import ComponentInfo, Graph, Kind, Parity, classify, components, shortest_parity_walk
from .labeling import Labeling, apply_walk
from .oracle import verify_irregular
from .partition import LabelSet, LabelSetTooSmall, build_label_set, skolem_partition, split_triplets

log = logging.getLogger(__name__)

STAR_FREE = "star-free"
STAR_CHAIN = "star-chain"
ORACLE = "oracle"


class LabelerError(ValueError):
    pass


class PreconditionError(LabelerError):
    """An input violates a hypothesis of the construction."""


class EvenOrderGroupError(PreconditionError):
    pass


class ConstructionDefect(AssertionError):
    """The construction produced something it should not have; always a bug."""


# ----------------------------------------------------------------------
# Walk operators
# ----------------------------------------------------------------------


def _walk(g: Graph, v1: int, v2: int, parity: Parity, name: str):
    walk = shortest_parity_walk(g, v1, v2, parity)
    if walk is None:
        raise PreconditionError(
            f"{name}({v1}, {v2}): no walk with {parity.name.lower()} edge count "
            "(bipartite component, endpoints in the wrong color classes)"
        )
    return walk


def phi_even(lab: Labeling, v1: int, v2: int, a: Element) -> Labeling:
    """Adds ``a`` to the weights of both ``v1`` and ``v2``."""
    return apply_walk(lab, _walk(lab.graph, v1, v2, Parity.ODD, "phi_even"), a)


def phi_odd(lab: Labeling, v1: int, v2: int, a: Element) -> Labeling:
    """Adds ``a`` to the weight of ``v1`` and ``-a`` to the weight of ``v2``."""
    return apply_walk(lab, _walk(lab.graph, v1, v2, Parity.EVEN, "phi_odd"), a)


class _Builder:
    """Mutable accumulator used while a construction runs."""

    def __init__(self, g: Graph, spec: GroupSpec):
        self.g = g
        self.spec = spec
        self.labels: dict[tuple[int, int], Element] = {}
        self.expected: dict[int, Element] = {}

    def _apply(self, v1, v2, a, parity, name):
        spec = self.spec
        walk = _walk(self.g, v1, v2, parity, name)
        minus = spec.neg(a)
        for j, e in enumerate(walk.edges):
            self.labels[e] = spec.add(self.labels.get(e, spec.zero), a if j % 2 == 0 else minus)
        self._bump(v1, a)
        self._bump(v2, a if parity is Parity.ODD else minus)

    def _bump(self, v, a):
        self.expected[v] = self.spec.add(self.expected.get(v, self.spec.zero), a)

    def phi_even(self, v1, v2, a):
        self._apply(v1, v2, a, Parity.ODD, "phi_even")

    def phi_odd(self, v1, v2, a):
        self._apply(v1, v2, a, Parity.EVEN, "phi_odd")

    def result(self) -> Labeling:
        lab = Labeling(self.spec, self.g, {e: a for e, a in self.labels.items() if a != self.spec.zero})
        actual = lab.weights()
        for v in range(self.g.n):
            if actual[v] != self.expected.get(v, self.spec.zero):
                raise ConstructionDefect(f"weight bookkeeping diverged at vertex {v}")
        return lab


def _verified(g: Graph, lab: Labeling) -> Labeling:
    collisions = verify_irregular(g, lab)
    if collisions:
        raise ConstructionDefect(f"construction produced colliding weights at {collisions[:5]}")
    return lab


# ----------------------------------------------------------------------
# Star-free construction
# ----------------------------------------------------------------------


def _pairs_in_order(vs: Sequence[int]) -> list[tuple[int, int]]:
    return [(vs[i], vs[i + 1]) for i in range(0, len(vs) - 1, 2)]


def _split_odd_component(info: ComponentInfo):
    """Pick (a, b, c) and the remaining vertex pairs of an odd-order component.

    In the bipartite case ``c`` comes from the odd color class and ``a, b``
    from the even one, so both ``(a, c)`` and ``(b, c)`` admit odd-length
    walks and each leftover pair shares a class.
    """
    if info.classes is not None:
        x, y = info.classes
        odd, even = (x, y) if len(x) % 2 else (y, x)
        a, b, c = even[0], even[1], odd[0]
        rest = _pairs_in_order(even[2:]) + _pairs_in_order(odd[1:])
    else:
        a, b, c = info.vertices[:3]
        rest = _pairs_in_order(info.vertices[3:])
    return a, b, c, rest


class _Resources:
    def __init__(self, S: LabelSet):
        self.spec = S.group
        self.triplets = list(S.triplets)
        self.pairs = list(S.pairs)
        self.odd_triplet = S.odd_triplet

    def triplet_pair(self):
        if len(self.triplets) < 2:
            raise LabelSetTooSmall("label set ran out of complementary triplet pairs")
        t, u = self.triplets[0], self.triplets[1]
        del self.triplets[:2]
        return t, u

    def pair(self) -> Element:
        if not self.pairs:
            raise LabelSetTooSmall("label set ran out of zero-sum pairs")
        return self.pairs.pop(0)[0]

    def take_odd_triplet(self):
        if self.odd_triplet is None:
            raise LabelSetTooSmall("an odd number of odd-order components needs an odd triplet")
        t, self.odd_triplet = self.odd_triplet, None
        return t


def _label_star_free_components(b: _Builder, comps: Sequence[ComponentInfo], res: _Resources) -> None:
    spec = b.spec
    odd_comps = []

    def pair_up(pairs):
        for v1, v2 in pairs:
            b.phi_odd(v1, v2, res.pair())

    for info in comps:
        kind = info.kind
        if kind is Kind.BIPARTITE_BOTH_EVEN:
            for cls in info.classes:
                pair_up(_pairs_in_order(cls))
        elif kind is Kind.NON_BIPARTITE_EVEN:
            pair_up(_pairs_in_order(info.vertices))
        elif kind is Kind.BIPARTITE_BOTH_ODD:
            (x, y, z), _ = res.triplet_pair()
            A, B = info.classes
            a1, b1, c2 = A[:3]
            a2, b2, c1 = B[:3]
            b.phi_even(a1, c1, y)
            b.phi_even(b1, c1, z)
            b.phi_even(a2, c2, spec.neg(y))
            b.phi_even(b2, c2, spec.neg(z))
            pair_up(_pairs_in_order(A[3:]))
            pair_up(_pairs_in_order(B[3:]))
        elif kind is Kind.ODD_ORDER:
            odd_comps.append(info)
        else:
            raise PreconditionError(f"component {list(info.vertices)} is {kind.value}")

    def label_odd(info, p, q):
        a, bb, c, rest = _split_odd_component(info)
        b.phi_even(a, c, p)
        b.phi_even(bb, c, q)
        pair_up(rest)

    for i in range(0, len(odd_comps) - 1, 2):
        (x, y, z), (nx, ny, nz) = res.triplet_pair()
        label_odd(odd_comps[i], y, z)
        label_odd(odd_comps[i + 1], ny, nz)
    if len(odd_comps) % 2:
        _, p, q = res.take_odd_triplet()
        label_odd(odd_comps[-1], p, q)


def _check_components(infos: Sequence[ComponentInfo], allow_stars: bool) -> None:
    for info in infos:
        if info.kind is Kind.TOO_SMALL:
            raise PreconditionError(f"component {list(info.vertices)} has order {info.order} < 3")
        if info.kind is Kind.EVEN_STAR and not allow_stars:
            raise PreconditionError(f"component {list(info.vertices)} is an even star K_1,{len(info.leaves)}")


def label_without_even_stars(g: Graph, spec: GroupSpec, S: LabelSet) -> Labeling:
    """Irregular labeling whose weights all lie in ``S``.

    ``S`` must hold one complementary triplet pair per bipartite component
    with both classes odd and per two odd-order components, an odd triplet
    when the number of odd-order components is odd, and one zero-sum pair
    for each remaining pair of vertices.
    """
    if S.group != spec:
        raise PreconditionError(f"label set lives in {S.group}, not {spec}")
    infos = classify(g)
    _check_components(infos, allow_stars=False)
    b = _Builder(g, spec)
    _label_star_free_components(b, infos, _Resources(S))
    lab = _verified(g, b.result())
    allowed = S.elements()
    stray = sorted(v for v, w in lab.weights().items() if w not in allowed)
    if stray:
        raise ConstructionDefect(f"weights of vertices {stray} fall outside the label set")
    return lab


def star_free_requirements(g: Graph) -> tuple[int, int, bool]:
    """(triplet pairs, zero-sum pairs, odd triplet needed) for the star-free construction."""
    infos = classify(g)
    q1 = sum(1 for i in infos if i.kind is Kind.BIPARTITE_BOTH_ODD)
    q2 = sum(1 for i in infos if i.kind is Kind.ODD_ORDER)
    mp = q1 + q2 // 2
    odd = q2 % 2 == 1
    return mp, (g.n - 6 * mp - (3 if odd else 0)) // 2, odd


def label_star_free(g: Graph, spec: GroupSpec) -> Labeling:
    """Star-free construction over any odd-order group of order >= n."""
    _check_components(classify(g), allow_stars=False)
    if spec.order < g.n:
        raise PreconditionError(f"group order {spec.order} < n={g.n}")
    if not spec.has_odd_order():
        raise EvenOrderGroupError(f"{spec} has even order {spec.order}; use the exhaustive oracle")
    mp, k, odd = star_free_requirements(g)
    S = build_label_set(skolem_partition(spec), mp, k, odd)
    return label_without_even_stars(g, spec, S)


# ----------------------------------------------------------------------
# Even stars
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class StarParameters:
    n: int
    q0: int  # even-star components
    q1: int  # bipartite components with both classes odd, stars excluded
    q2: int  # odd-order components
    q4: int
    m: int  # 3*q1 + 3*floor(q2/2), counted in elements per triplet
    triplet_pairs: int  # q1 + floor(q2/2)
    m_prime: int  # ceil(q0/2)
    epsilon: int
    K: int

    @property
    def min_order(self) -> int:
        """Smallest odd group order the star construction accepts."""
        t = self.n + self.K
        return t if t % 2 else t + 1

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__} | {"min_order": self.min_order}


def star_parameters(g: Graph) -> StarParameters:
    infos = classify(g)
    _check_components(infos, allow_stars=True)
    n = g.n
    q0 = sum(1 for i in infos if i.kind is Kind.EVEN_STAR)
    q1 = sum(1 for i in infos if i.kind is Kind.BIPARTITE_BOTH_ODD)
    q2 = sum(1 for i in infos if i.kind is Kind.ODD_ORDER)
    both_odd = q0 % 2 == 1 and n % 2 == 1
    if both_odd:
        q4 = (n - 6 * -(-q0 // 2) - 6 * q1 - 6 * (q2 // 2) - 1) // 2
    else:
        q4 = (n - 3 * q0 - 6 * q1 - 6 * (q2 // 2)) // 2
    epsilon = 3 if q0 % 2 == 1 and n % 2 == 0 else 0
    K = max(epsilon, 5 * q0 - 2 * q4 + epsilon - 1)
    return StarParameters(
        n=n,
        q0=q0,
        q1=q1,
        q2=q2,
        q4=q4,
        m=3 * q1 + 3 * (q2 // 2),
        triplet_pairs=q1 + q2 // 2,
        m_prime=-(-q0 // 2),
        epsilon=epsilon,
        K=K,
    )


@dataclass
class ChainState:
    """Elements still free to become weights, and those already spoken for."""

    spec: GroupSpec
    available: set = field(default_factory=set)
    occupied: set = field(default_factory=set)

    def check(self) -> None:
        neg = self.spec.neg
        zero = self.spec.zero
        if self.available & self.occupied:
            raise ConstructionDefect("available and occupied sets overlap")
        if zero in self.available:
            raise ConstructionDefect("0 must never be available")
        for s in (self.available, self.occupied):
            if any(neg(a) not in s for a in s):
                raise ConstructionDefect("chain sets must be closed under negation")

    def ordered(self) -> list[Element]:
        return sorted(self.available, key=self.spec.index)

    def occupy(self, *elems: Element) -> None:
        for a in elems:
            self.available.discard(a)
            self.occupied.add(a)

    def take_pair(self) -> Element:
        if not self.available:
            raise ConstructionDefect("ran out of zero-sum pairs")
        d = self.ordered()[0]
        self.occupy(d, self.spec.neg(d))
        return d

    def choose_link(self, z: Element) -> Element:
        """First available ``g`` with ``g, -g, g - z, z - g`` fresh and pairwise distinct."""
        spec = self.spec
        for g in self.ordered():
            h = spec.sub(g, z)
            if h in self.available and h != g and h != spec.neg(g):
                return g
        raise ConstructionDefect(
            f"no chaining element for z={z}: {len(self.available)} available, {len(self.occupied)} occupied"
        )


def label_general(g: Graph, spec: GroupSpec) -> Labeling:
    """Irregular labeling over an odd-order group of order >= n + K."""
    infos = classify(g)
    _check_components(infos, allow_stars=True)
    if spec.order < g.n:
        raise PreconditionError(f"group order {spec.order} < n={g.n}")
    if not spec.has_odd_order():
        raise EvenOrderGroupError(
            f"{spec} has even order {spec.order}; the constructions need odd order, use the exhaustive oracle"
        )
    params = star_parameters(g)
    if spec.order < g.n + params.K:
        raise PreconditionError(
            f"group order {spec.order} < n + K = {g.n} + {params.K}; smallest admissible odd order is {params.min_order}"
        )
    if params.q0 == 0:
        return label_star_free(g, spec)

    zero = spec.zero
    neg = spec.neg
    part = skolem_partition(spec)
    mp, mq = params.triplet_pairs, params.m_prime
    if part.triplet_pairs < mp + mq:
        raise LabelSetTooSmall(
            f"{spec} provides {part.triplet_pairs} complementary triplet pairs, {mp + mq} needed"
        )
    side_triplets = part.triplets[: 2 * mp]
    star_triplets = part.triplets[2 * mp : 2 * (mp + mq)]
    state = ChainState(spec)
    for d, e in split_triplets(spec, part.triplets[2 * (mp + mq) :]) + list(part.pairs):
        state.available.update((d, e))
    for t in side_triplets:
        state.occupied.update(t)

    stars = [i for i in infos if i.kind is Kind.EVEN_STAR]
    others = [i for i in infos if i.kind is not Kind.EVEN_STAR]
    b = _Builder(g, spec)
    odd_triplet = None

    if params.q0 % 2:
        anchor, chained = stars[0], stars[1:]
        x, y, z = star_triplets[0]
        c, (v1, v2, v3) = anchor.center, anchor.leaves[:3]
        b.phi_even(c, v1, neg(x))
        b.phi_even(c, v2, neg(y))
        b.phi_even(c, v3, zero)
        # anchor weights -x, -y, 0, z; an odd component takes x, y, -z when n is odd
        state.occupied.update(star_triplets[0])
        state.occupied.update(star_triplets[1])
        state.occupied.add(zero)
        if g.n % 2:
            odd_triplet = (z, x, y)
        pair_triplets = star_triplets[2:]
    else:
        chained = stars
        pair_triplets = star_triplets

    # leaves v^1, v^2 take x, y (resp. -x, -y); the centres wait for the link element
    for k in range(0, len(chained), 2):
        s1, s2 = chained[k], chained[k + 1]
        (x, y, z), (nx, ny, nz) = pair_triplets[k], pair_triplets[k + 1]
        b.phi_even(s1.center, s1.leaves[0], x)
        b.phi_even(s1.center, s1.leaves[1], y)
        b.phi_even(s2.center, s2.leaves[0], nx)
        b.phi_even(s2.center, s2.leaves[1], ny)
        state.occupied.update((x, y, nx, ny))
        state.available.update((z, nz))
    state.check()

    for k in range(0, len(chained), 2):
        s1, s2 = chained[k], chained[k + 1]
        z = pair_triplets[k][2]
        link = state.choose_link(z)
        b.phi_even(s1.center, s1.leaves[2], link)
        b.phi_even(s2.center, s2.leaves[2], neg(link))
        h = spec.sub(link, z)
        state.occupy(link, neg(link), h, neg(h))
        log.debug("chained stars %s/%s with g=%s", s1.center, s2.center, link)
    state.check()

    for s in stars:
        for v1, v2 in _pairs_in_order(s.leaves[3:]):
            b.phi_odd(v1, v2, state.take_pair())

    if g.n % 2 and odd_triplet is None:
        odd_triplet = (zero, *_as_pair(spec, state.take_pair()))
    pool = [(d, neg(d)) for d in state.ordered() if spec.index(d) < spec.index(neg(d))]
    S = LabelSet(spec, tuple(side_triplets), tuple(pool), odd_triplet)
    _label_star_free_components(b, others, _Resources(S))
    return _verified(g, b.result())


def _as_pair(spec: GroupSpec, d: Element) -> tuple[Element, Element]:
    return d, spec.neg(d)


# ----------------------------------------------------------------------
# Exact values and dispatch
# ----------------------------------------------------------------------


def _is_power_of_three_odd_exponent(k: int) -> bool:
    e = 0
    while k > 1 and k % 3 == 0:
        k //= 3
        e += 1
    return k == 1 and e % 2 == 1 and e >= 3


def is_exceptional_star(g: Graph) -> bool:
    """True iff ``g`` is K_{1,r} with r = 3^(2q+1) - 2 for some q >= 1."""
    comps = components(g)
    if len(comps) != 1 or g.n < 3 or len(g.edges) != g.n - 1:
        return False
    if max(g.degree(v) for v in range(g.n)) != g.n - 1:
        return False
    return _is_power_of_three_odd_exponent(g.n - 1 + 2)


def connected_sg_value(g: Graph) -> int:
    """Group irregularity strength of a connected graph of order >= 3."""
    if g.n < 3:
        raise PreconditionError(f"graph has order {g.n} < 3")
    if len(components(g)) != 1:
        raise PreconditionError("graph is not connected")
    if is_exceptional_star(g):
        return g.n + 2
    if g.n % 4 == 2:
        return g.n + 1
    return g.n


@dataclass
class DispatchReport:
    n: int
    guaranteed_order: int
    exact: bool
    theorem: str
    statement: str
    method_per_group: dict[str, str]
    parameters: Optional[StarParameters] = None
    fallback_bound: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "guaranteed_order": self.guaranteed_order,
            "exact": self.exact,
            "theorem": self.theorem,
            "statement": self.statement,
            "method_per_group": self.method_per_group,
            "parameters": None if self.parameters is None else self.parameters.as_dict(),
            "fallback_bound": self.fallback_bound,
        }


def method_for(g: Graph, spec: GroupSpec, params: Optional[StarParameters] = None) -> str:
    """Which path yields a labeling of ``g`` over ``spec``: a construction or the oracle."""
    params = params or star_parameters(g)
    if spec.has_odd_order() and spec.order >= g.n + params.K:
        return STAR_FREE if params.q0 == 0 else STAR_CHAIN
    return ORACLE


def _smallest_odd_at_least(k: int) -> int:
    return k if k % 2 else k + 1


def sg_dispatch(g: Graph) -> DispatchReport:
    """Strongest known value or upper bound for the group irregularity strength of ``g``."""
    infos = classify(g)
    _check_components(infos, allow_stars=True)
    params = star_parameters(g)
    n = g.n
    fallback = 2 * n

    if len(infos) == 1:
        order = connected_sg_value(g)
        exact, theorem = True, "connected"
        statement = "n+2 for K_1,(3^(2q+1)-2); n+1 if n = 2 mod 4; n otherwise"
    elif params.q0 == 0:
        theorem = "star-free"
        statement = "n if n odd; n+1 if n = 2 mod 4; at most n+1 if n = 0 mod 4"
        order = n if n % 2 else n + 1
        exact = n % 4 != 0
    elif not any(i.kind is Kind.EVEN_STAR and i.u in (1, 2) for i in infos):
        theorem = "no-small-stars"
        statement = "n if n odd; at most n+3 if n even"
        order = _smallest_odd_at_least(n + params.K)
        exact = n % 2 == 1
        if order > n + (0 if n % 2 else 3):
            raise ConstructionDefect(f"star bound {order} exceeds the stated value for n={n}")
    else:
        theorem = "even-star-chaining"
        statement = "any odd order t >= n + K(q0, q4); at most 2n in general"
        order = _smallest_odd_at_least(n + params.K)
        exact = False
        if order > fallback:
            theorem, statement, order = "linear", "at most 2n", fallback

    methods = {str(s): method_for(g, s, params) for s in all_abelian_groups(order)}
    return DispatchReport(n, order, exact, theorem, statement, methods, params, fallback)


def label_auto(g: Graph, spec: GroupSpec) -> tuple[Labeling, str]:
    """Run whichever construction applies; raises if none does."""
    method = method_for(g, spec)
    if method == ORACLE:
        if not spec.has_odd_order():
            raise EvenOrderGroupError(f"{spec} has even order; no construction applies, use the oracle")
        params = star_parameters(g)
        raise PreconditionError(
            f"group order {spec.order} < n + K = {g.n} + {params.K}; smallest admissible odd order is {params.min_order}"
        )
    return label_general(g, spec), method
