"""Finite Abelian groups as direct products of cyclic factors.

A group is described by a :class:`GroupSpec` (the list of cyclic factor
orders); elements are plain tuples of residues, one per factor.  The trivial
group has no factors and a single element ``()``.

>>> g = parse_group("Z2xZ4")
>>> g.add((1, 1), (1, 2))
(0, 3)
>>> [str(s) for s in all_abelian_groups(8)]
['Z8', 'Z2xZ4', 'Z2xZ2xZ2']
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Iterator

Element = tuple  # residue tuple, one entry per cyclic factor


class GroupError(ValueError):
    pass


def _factorize(k: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= k:
        while k % p == 0:
            out[p] = out.get(p, 0) + 1
            k //= p
        p += 1
    if k > 1:
        out[k] = out.get(k, 0) + 1
    return out


def _partitions(e: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of ``e`` in non-increasing order."""
    if largest is None:
        largest = e
    if e == 0:
        yield ()
        return
    for first in range(min(e, largest), 0, -1):
        for rest in _partitions(e - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(f) for f in self.factors)
        if any(f < 2 for f in factors):
            raise GroupError(f"cyclic factor orders must be >= 2, got {factors}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def cyclic(cls, k: int) -> GroupSpec:
        return cls(() if k == 1 else (k,))

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.factors)

    def is_cyclic(self) -> bool:
        return len(self.primary_decomposition()) == len(_factorize(self.order))

    def _check(self, a) -> None:
        if len(a) != len(self.factors):
            raise GroupError(
                f"element {a!r} has {len(a)} components, group {self} has {len(self.factors)}"
            )

    def add(self, a: Element, b: Element) -> Element:
        self._check(a)
        self._check(b)
        return tuple((x + y) % f for x, y, f in zip(a, b, self.factors))

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def neg(self, a: Element) -> Element:
        self._check(a)
        return tuple(-x % f for x, f in zip(a, self.factors))

    def mul(self, k: int, a: Element) -> Element:
        """``k`` copies of ``a`` added together (``k`` may be negative)."""
        self._check(a)
        return tuple(k * x % f for x, f in zip(a, self.factors))

    def total(self, elems) -> Element:
        acc = self.zero
        for e in elems:
            acc = self.add(acc, e)
        return acc

    def element(self, residues) -> Element:
        """Reduce an arbitrary integer tuple (or int, for cyclic groups)."""
        if isinstance(residues, int):
            residues = (residues,)
        residues = tuple(residues)
        self._check(residues)
        return tuple(r % f for r, f in zip(residues, self.factors))

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == len(self.factors)
            and all(isinstance(r, int) and 0 <= r < f for r, f in zip(a, self.factors))
        )

    def elements(self) -> list[Element]:
        return list(self._elements)

    @cached_property
    def _elements(self) -> tuple[Element, ...]:
        return tuple(itertools.product(*(range(f) for f in self.factors)))

    def index(self, a: Element) -> int:
        """Position of ``a`` in the lexicographic enumeration."""
        self._check(a)
        i = 0
        for r, f in zip(a, self.factors):
            i = i * f + r
        return i

    def has_odd_order(self) -> bool:
        return self.order % 2 == 1

    def primary_decomposition(self) -> tuple[int, ...]:
        """Sorted multiset of prime powers; equal iff the groups are isomorphic."""
        powers = []
        for f in self.factors:
            powers.extend(p**e for p, e in _factorize(f).items())
        return tuple(sorted(powers))

    def canonical(self) -> GroupSpec:
        """Invariant-factor form d1 | d2 | ... | dr, smallest factor first."""
        by_prime: dict[int, list[int]] = {}
        for q in self.primary_decomposition():
            p = min(_factorize(q))
            by_prime.setdefault(p, []).append(q)
        rank = max((len(v) for v in by_prime.values()), default=0)
        invariants = [1] * rank
        for qs in by_prime.values():
            qs = sorted(qs, reverse=True)
            for i, q in enumerate(qs):
                invariants[rank - 1 - i] *= q
        return GroupSpec(tuple(invariants))

    def isomorphic(self, other: GroupSpec) -> bool:
        return self.primary_decomposition() == other.primary_decomposition()

    def format_element(self, a: Element) -> str:
        if len(self.factors) == 1:
            return str(a[0])
        return "(" + ",".join(str(r) for r in a) + ")"

    def parse_element(self, text: str) -> Element:
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            inner = text[1:-1].strip()
            parts = [p for p in inner.split(",")] if inner else []
        else:
            parts = [text]
        try:
            residues = tuple(int(p) for p in parts)
        except ValueError:
            raise GroupError(f"bad group element {text!r}") from None
        self._check(residues)
        if not self.contains(residues):
            raise GroupError(f"element {text!r} is not reduced for {self}")
        return residues

    def __str__(self) -> str:
        if not self.factors:
            return "Z1"
        return "x".join(f"Z{f}" for f in self.factors)


_FACTOR = re.compile(r"z(\d+)\Z", re.IGNORECASE)


def parse_group(text: str) -> GroupSpec:
    """Parse ``Z<k>`` factors joined by ``x`` (case-insensitive), e.g. ``Z2xZ4``."""
    if not text:
        raise GroupError("empty group spec")
    factors = []
    for token in re.split(r"[xX]", text):
        m = _FACTOR.match(token)
        if not m:
            raise GroupError(f"bad factor token {token!r} in group spec {text!r}")
        k = int(m.group(1))
        if k == 0:
            raise GroupError(f"bad factor token {token!r}: order must be positive")
        factors.append(k)
    if factors == [1]:
        return GroupSpec(())
    if 1 in factors:
        raise GroupError(f"bad factor token 'Z1' in group spec {text!r}")
    return GroupSpec(tuple(factors))


def all_abelian_groups(s: int) -> list[GroupSpec]:
    """One representative (invariant-factor form) per isomorphism class of order ``s``."""
    if s < 1:
        raise GroupError(f"group order must be positive, got {s}")
    per_prime = []
    for p, e in sorted(_factorize(s).items()):
        per_prime.append([tuple(p**k for k in part) for part in _partitions(e)])
    groups = []
    for choice in itertools.product(*per_prime):
        powers = [q for part in choice for q in part]
        groups.append(GroupSpec(tuple(powers)).canonical())
    groups.sort(key=lambda g: (g.rank, g.factors))
    return groups


# Module-level spellings of the group operations.


def add(spec: GroupSpec, a: Element, b: Element) -> Element:
    return spec.add(a, b)


def neg(spec: GroupSpec, a: Element) -> Element:
    return spec.neg(a)


def elements(spec: GroupSpec) -> list[Element]:
    return spec.elements()


def has_odd_order(spec: GroupSpec) -> bool:
    return spec.has_odd_order()
