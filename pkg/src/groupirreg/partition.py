"""Skolem partitions of odd-order Abelian groups and the label sets cut from them.

A Skolem partition of ``G \\ {0}`` with ``|G| = 6m + s`` (``s`` in 1, 3, 5)
consists of ``m`` complementary pairs of zero-sum triplets ``T, -T`` and
``(s - 1) / 2`` inverse pairs ``{d, -d}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .abelian import Element, GroupSpec


class PartitionError(ValueError):
    pass


class LabelSetTooSmall(PartitionError):
    pass


Triple = tuple[Element, Element, Element]
Pair = tuple[Element, Element]


@dataclass(frozen=True)
class SkolemPartition:
    group: GroupSpec
    triplets: tuple[Triple, ...]  # T_1, -T_1, T_2, -T_2, ...
    pairs: tuple[Pair, ...]

    @property
    def triplet_pairs(self) -> int:
        return len(self.triplets) // 2

    def cells(self) -> list[tuple[Element, ...]]:
        return [tuple(t) for t in self.triplets] + [tuple(p) for p in self.pairs]

    def check(self, maximal: bool = True) -> None:
        """Raise :class:`PartitionError` unless every invariant holds."""
        g = self.group
        zero = g.zero
        if len(self.triplets) % 2:
            raise PartitionError("odd number of triplets")
        for t in self.triplets:
            if g.total(t) != zero:
                raise PartitionError(f"triplet {t} is not zero-sum")
        for i in range(0, len(self.triplets), 2):
            t, u = self.triplets[i], self.triplets[i + 1]
            if tuple(g.neg(x) for x in t) != tuple(u):
                raise PartitionError(f"triplets {t} and {u} are not complementary")
        for d, e in self.pairs:
            if d == zero or g.neg(d) != e:
                raise PartitionError(f"pair {(d, e)} is not an inverse pair")
        seen = [x for cell in self.cells() for x in cell]
        if len(seen) != len(set(seen)) or zero in seen:
            raise PartitionError("cells overlap or contain 0")
        if maximal:
            if len(seen) != g.order - 1:
                raise PartitionError(f"cells cover {len(seen)} of {g.order - 1} nonzero elements")
            if self.triplet_pairs != g.order // 6 or len(self.pairs) != (g.order % 6 - 1) // 2:
                raise PartitionError(
                    f"counts m={self.triplet_pairs}, pairs={len(self.pairs)} do not match |G|={g.order}"
                )

    def format_lines(self) -> list[str]:
        f = self.group.format_element
        lines = [f"T: {' '.join(f(x) for x in t)}" for t in self.triplets]
        lines += [f"D: {f(d)} {f(e)}" for d, e in self.pairs]
        return lines


def skolem_partition(spec: GroupSpec) -> SkolemPartition:
    """Deterministic exact-cover search for a Skolem partition.

    The nonzero elements fall into inverse classes ``{a, -a}``.  A triplet
    pair ``T, -T`` covers three classes whose signed sum vanishes, an inverse
    pair covers one.  Classes are covered most-constrained first (fewest
    candidate triplets, ties by smallest representative), candidates in
    lexicographic order.
    """
    if not spec.has_odd_order():
        raise PartitionError(f"Skolem partitions need odd order, {spec} has order {spec.order}")
    t = spec.order
    elems = spec.elements()
    idx = {e: i for i, e in enumerate(elems)}
    neg = [idx[spec.neg(e)] for e in elems]
    add = [[idx[spec.add(a, b)] for b in elems] for a in elems]
    m_target = t // 6
    p_target = (t % 6 - 1) // 2

    reps = [a for a in range(1, t) if a < neg[a]]
    cls = {a: min(a, neg[a]) for a in range(1, t)}

    # rows: class triple -> concrete zero-sum triplet (x, y, z)
    rows: dict[frozenset, tuple[int, int, int]] = {}
    for i, a in enumerate(reps):
        for b in reps[i + 1 :]:
            for y in (b, neg[b]):
                z = neg[add[a][y]]
                if z == 0 or cls[z] in (a, b):
                    continue
                key = frozenset((a, b, cls[z]))
                if key not in rows:
                    rows[key] = (a, y, z)
    cols: dict[int, set[frozenset]] = {a: set() for a in reps}
    for key in rows:
        for c in key:
            cols[c].add(key)

    chosen: list[frozenset] = []
    singles: list[int] = []

    def cover(key):
        removed = []
        for c in key:
            for other in cols[c]:
                for c2 in other:
                    if c2 != c:
                        cols[c2].discard(other)
            removed.append((c, cols.pop(c)))
        return removed

    def uncover(removed):
        for c, col in reversed(removed):
            cols[c] = col
            for other in col:
                for c2 in other:
                    if c2 != c:
                        cols[c2].add(other)

    def solve() -> bool:
        if not cols:
            return True
        c = min(cols, key=lambda k: (len(cols[k]), k))
        for key in sorted(cols[c], key=lambda k: sorted(rows[k])):
            removed = cover(key)
            chosen.append(key)
            if solve():
                return True
            chosen.pop()
            uncover(removed)
        if len(singles) < p_target:
            removed = cover(frozenset((c,)))
            singles.append(c)
            if solve():
                return True
            singles.pop()
            uncover(removed)
        return False

    if not solve() or len(chosen) != m_target:
        raise AssertionError(f"no Skolem partition found for {spec}; this is a defect")
    triples = sorted(rows[k] for k in chosen)
    triplets = []
    for x, y, z in triples:
        triplets.append((elems[x], elems[y], elems[z]))
        triplets.append((elems[neg[x]], elems[neg[y]], elems[neg[z]]))
    part = SkolemPartition(
        spec,
        tuple(triplets),
        tuple((elems[a], elems[neg[a]]) for a in sorted(singles)),
    )
    part.check()
    return part


def split_triplets(spec: GroupSpec, triplets) -> list[Pair]:
    """Break complementary triplet pairs into inverse pairs ``{x,-x},{y,-y},{z,-z}``."""
    out = []
    for i in range(0, len(triplets), 2):
        for x in triplets[i]:
            out.append((x, spec.neg(x)))
    return out


@dataclass(frozen=True)
class LabelSet:
    """Weights available to the star-free construction.

    ``odd_triplet`` is a zero-sum triple ``(x, y, z)`` for a leftover odd
    component, which then receives the weights ``y``, ``z`` and ``y + z``.
    The usual choice is ``(0, d, -d)``.
    """

    group: GroupSpec
    triplets: tuple[Triple, ...]
    pairs: tuple[Pair, ...]
    odd_triplet: Optional[Triple] = None
    includes_zero: bool = True

    @property
    def triplet_pairs(self) -> int:
        return len(self.triplets) // 2

    def elements(self) -> set[Element]:
        out = {self.group.zero} if self.includes_zero else set()
        for cell in (*self.triplets, *self.pairs):
            out.update(cell)
        if self.odd_triplet is not None:
            out.update(self.odd_triplet)
        return out


def build_label_set(part: SkolemPartition, m_needed: int, k_needed: int, odd_q2: bool) -> LabelSet:
    """Select ``m_needed`` triplet pairs and ``k_needed`` inverse pairs, in partition order.

    Triplet pairs beyond ``m_needed`` are split into inverse pairs.  With
    ``odd_q2`` one more pair ``{d, -d}`` becomes the pseudo-triplet
    ``(0, d, -d)``.
    """
    if m_needed < 0 or k_needed < 0:
        raise ValueError("requested counts must be non-negative")
    g = part.group
    if part.triplet_pairs < m_needed:
        raise LabelSetTooSmall(
            f"{g} provides {part.triplet_pairs} complementary triplet pairs, {m_needed} needed"
        )
    triplets = part.triplets[: 2 * m_needed]
    pool = split_triplets(g, part.triplets[2 * m_needed :]) + list(part.pairs)
    want = k_needed + (1 if odd_q2 else 0)
    if len(pool) < want:
        raise LabelSetTooSmall(f"{g} provides {len(pool)} zero-sum pairs after the triplets, {want} needed")
    odd = None
    if odd_q2:
        d, e = pool.pop(0)
        odd = (g.zero, d, e)
    return LabelSet(g, tuple(triplets), tuple(pool[:k_needed]), odd)
