"""Ground truth: irregularity checks and exhaustive labeling search.

The reported labeling comes from a search that assigns group elements to
edges in lexicographic edge order, trying elements in lexicographic order,
and prunes as soon as a vertex whose incident edges are all labelled repeats
a finished weight.  That labeling is therefore canonical for the
(graph, group) pair.  Existence itself is settled first by the same search
run in an order that completes vertices early, which is what makes
non-existence proofs affordable.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Optional

from .abelian import Element, GroupSpec, all_abelian_groups
from .graph import Graph, components
from .labeling import Labeling, LabelingError

DEFAULT_MAX_ASSIGNMENTS = 10**8


def weights(g: Graph, lab: Labeling) -> dict[int, Element]:
    if lab.graph != g:
        raise LabelingError("labeling belongs to a different graph")
    return lab.weights()


def verify_irregular(g: Graph, lab: Labeling) -> list[tuple[int, int]]:
    """Colliding vertex pairs ``(u, v)`` with ``u < v``; empty means irregular."""
    w = weights(g, lab)
    by_weight: dict[Element, list[int]] = {}
    for v in sorted(w):
        by_weight.setdefault(w[v], []).append(v)
    collisions = []
    for vs in by_weight.values():
        collisions.extend(combinations(vs, 2))
    return sorted(collisions)


def is_irregular(g: Graph, lab: Labeling) -> bool:
    return not verify_irregular(g, lab)


@dataclass(frozen=True)
class SearchBudget:
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS
    time_cap: Optional[float] = None  # seconds

    def __post_init__(self):
        if self.max_assignments <= 0:
            raise ValueError("max_assignments must be positive")
        if self.time_cap is not None and self.time_cap <= 0:
            raise ValueError("time_cap must be positive")


class Outcome(enum.Enum):
    FOUND = "found"
    NONE = "none-proved"
    EXHAUSTED = "budget-exhausted"


@dataclass
class SearchResult:
    outcome: Outcome
    labeling: Optional[Labeling] = None
    assignments: int = 0
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


class _BudgetExceeded(Exception):
    pass


def free_edges(g: Graph) -> tuple[list[tuple[int, int]], dict[tuple[int, int], int]]:
    """Edges whose labels the search has to branch on.

    A BFS spanning forest plus, in each non-bipartite component, the first
    edge closing an odd cycle.  Every labeling has a weight-equivalent one
    that is zero on all other edges: a label ``a`` on a dropped edge is
    cancelled by adding -a, +a, ... around an even closed walk through that
    edge and otherwise only kept edges, which changes no vertex weight.

    Also returns the kept odd-cycle edges mapped to their component index.
    """
    keep, closers, _ = _forest(g)
    return sorted(keep), closers


def _forest(g: Graph):
    color = [-1] * g.n
    depth = [0] * g.n
    keep = set()
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        for u in queue:
            for w in g.adj[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    depth[w] = depth[u] + 1
                    keep.add((min(u, w), max(u, w)))
                    queue.append(w)
    comp_of = {}
    for k, comp in enumerate(components(g)):
        for v in comp:
            comp_of[v] = k
    closers: dict[tuple[int, int], int] = {}
    for u, v in g.sorted_edges:
        if color[u] == color[v] and comp_of[u] not in closers.values():
            closers[(u, v)] = comp_of[u]
    keep.update(closers)
    return keep, closers, (depth, comp_of)


def _completion_order(g: Graph) -> tuple[list[tuple[int, int]], dict[tuple[int, int], int]]:
    """Kept edges arranged so vertices finish as early as possible.

    Per component: the odd-cycle edge first, then tree edges from the deepest
    child upwards, so almost every assignment completes a vertex.
    """
    keep, closers, (depth, comp_of) = _forest(g)
    def key(e):
        u, v = e
        child = u if depth[u] > depth[v] else v
        return (comp_of[u], 0 if e in closers else 1, -depth[child], child)
    return sorted(keep, key=key), closers


def _involution_coset_minima(spec: GroupSpec) -> list[int]:
    """Smallest index in each coset of the subgroup {c : 2c = 0}."""
    elems = spec.elements()
    inv = [c for c in elems if spec.add(c, c) == spec.zero]
    seen, out = set(), []
    for i, a in enumerate(elems):
        if a in seen:
            continue
        out.append(i)
        seen.update(spec.add(a, c) for c in inv)
    return out


def _first_edge_choices(spec: GroupSpec) -> list[int]:
    """Element indices worth trying on the first edge.

    For a cyclic group, composing a labeling with an automorphism keeps it
    irregular, and automorphism orbits are the residues with equal gcd
    against the order.  The lexicographically first solution always starts
    with an orbit minimum, so only those are tried.
    """
    t = spec.order
    if spec.rank != 1:
        return list(range(t))
    seen, out = set(), []
    for a in range(t):
        d = gcd(a, t)
        if d not in seen:
            seen.add(d)
            out.append(a)
    return out


def _search(
    g: Graph,
    spec: GroupSpec,
    budget: SearchBudget,
    first_label: Optional[int] = None,
    reduce: bool = True,
    completion: bool = False,
):
    """Core DFS on element indices.

    ``completion`` branches on the kept edges in :func:`_completion_order`
    instead of lexicographically.  Returns
    ``(outcome, {edge: element} or None, assignments)``.
    """
    t = spec.order
    elems = spec.elements()
    idx = {e: i for i, e in enumerate(elems)}
    add = [[idx[spec.add(a, b)] for b in elems] for a in elems]
    if completion:
        kept, closers = _completion_order(g)
        edges = tuple(kept)
    elif reduce:
        kept, closers = free_edges(g)
        edges = tuple(kept)
    else:
        edges, closers = g.sorted_edges, {}
    n_edges = len(edges)

    last = [-1] * g.n
    for i, (u, v) in enumerate(edges):
        last[u] = i
        last[v] = i
    taken = [False] * max(t, 1)
    for v in range(g.n):
        if last[v] == -1:
            if taken[0]:
                return Outcome.NONE, None, 0
            taken[0] = True
    if g.n > t:
        # pigeonhole: weights cannot be pairwise distinct
        return Outcome.NONE, None, 0

    closes_u = [last[u] == i for i, (u, v) in enumerate(edges)]
    closes_v = [last[v] == i for i, (u, v) in enumerate(edges)]
    partial = [0] * g.n
    labels = [0] * n_edges
    count = 0
    deadline = None if budget.time_cap is None else time.monotonic() + budget.time_cap
    cap = budget.max_assignments
    choices = [range(t)] * n_edges
    if n_edges:
        choices[0] = _first_edge_choices(spec) if first_label is None else [first_label]
        # Adding an involution c to every edge of the closer's fundamental odd
        # cycle changes no weight, so the closer only needs coset minima.  Not
        # applied in the first edge's component, where the automorphism cut lives.
        first_comp = next(k for k, c in enumerate(components(g)) if edges[0][0] in c)
        minima = _involution_coset_minima(spec)
        for i, e in enumerate(edges):
            if e in closers and closers[e] != first_comp:
                choices[i] = minima

    def dfs(i: int) -> bool:
        nonlocal count
        if i == n_edges:
            return True
        u, v = edges[i]
        cu, cv = closes_u[i], closes_v[i]
        pu, pv = partial[u], partial[v]
        row_u, row_v = add[pu], add[pv]
        for a in choices[i]:
            count += 1
            if count > cap:
                raise _BudgetExceeded
            if deadline is not None and count & 0xFFF == 0 and time.monotonic() > deadline:
                raise _BudgetExceeded
            wu, wv = row_u[a], row_v[a]
            if cu:
                if taken[wu]:
                    continue
                if cv and (wv == wu or taken[wv]):
                    continue
            elif cv and taken[wv]:
                continue
            if cu:
                taken[wu] = True
            if cv:
                taken[wv] = True
            partial[u], partial[v] = wu, wv
            labels[i] = a
            if dfs(i + 1):
                return True
            if cu:
                taken[wu] = False
            if cv:
                taken[wv] = False
        partial[u], partial[v] = pu, pv
        return False

    try:
        ok = dfs(0)
    except _BudgetExceeded:
        return Outcome.EXHAUSTED, None, count
    if ok:
        return Outcome.FOUND, {e: elems[a] for e, a in zip(edges, labels) if a}, count
    return Outcome.NONE, None, count


def _branch(args):
    return _search(*args)


def _run(g, spec, budget, jobs, reduce, completion):
    """One search pass, optionally fanned out over the first edge's labels.

    Parallel results merge in branch order: the first branch that finds a
    labeling wins, as the sequential search would, unless an earlier branch
    ran out of budget, in which case the pass reports only what the branches
    agree on.
    """
    if jobs <= 1 or not g.edges or spec.order == 1:
        return _search(g, spec, budget, None, reduce, completion)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        branches = [(g, spec, budget, a, reduce, completion) for a in _first_edge_choices(spec)]
        results = list(pool.map(_branch, branches))
    count = sum(r[2] for r in results)
    exhausted = False
    for oc, labels, _ in results:
        if oc is Outcome.FOUND:
            return (Outcome.FOUND if not exhausted else Outcome.EXHAUSTED), labels, count
        if oc is Outcome.EXHAUSTED:
            exhausted = True
    return (Outcome.EXHAUSTED if exhausted else Outcome.NONE), None, count


def find_irregular_labeling(
    g: Graph,
    spec: GroupSpec,
    budget: Optional[SearchBudget] = None,
    jobs: int = 1,
    reduce: bool = True,
) -> SearchResult:
    """Exhaustive search for a ``spec``-irregular labeling of ``g``.

    With ``reduce`` (the default) existence is first decided by a search over
    the :func:`free_edges` in completion order, which prunes far earlier.
    When a labeling exists, a second lexicographic pass produces the
    canonical one; should that pass run out of budget, the first pass's
    witness is returned instead.  Each pass gets the full budget.

    ``reduce=False`` runs the lexicographic search on every edge.

    With ``jobs > 1`` the branches on the first edge's label run in worker
    processes and are merged as the sequential search would see them.
    """
    budget = budget or SearchBudget()
    start = time.monotonic()
    if not reduce:
        outcome, labels, count = _run(g, spec, budget, jobs, False, False)
    else:
        outcome, labels, count = _run(g, spec, budget, jobs, True, True)
        if outcome is Outcome.FOUND:
            oc2, canonical, count2 = _run(g, spec, budget, jobs, True, False)
            count += count2
            if oc2 is Outcome.FOUND:
                labels = canonical
            elif oc2 is Outcome.NONE:
                raise AssertionError(f"search passes disagree on {spec}; this is a defect")
    lab = None if labels is None else Labeling(spec, g, labels)
    return SearchResult(outcome, lab, count, time.monotonic() - start)


@dataclass
class ExactResult:
    """Outcome of an exact-value scan; ``value`` is ``None`` when unresolved."""

    value: Optional[int]
    reason: str = ""
    trace: list[tuple[int, str, str]] = field(default_factory=list)  # (order, group, outcome)
    witnesses: dict[str, Labeling] = field(default_factory=dict)

    @property
    def resolved(self) -> bool:
        return self.value is not None


def _scan(g: Graph, lo: int, hi: int, groups_of, budget, jobs) -> ExactResult:
    res = ExactResult(None)
    for s in range(lo, hi + 1):
        witnesses = {}
        all_found = True
        for spec in groups_of(s):
            r = find_irregular_labeling(g, spec, budget, jobs)
            res.trace.append((s, str(spec), r.outcome.value))
            if r.outcome is Outcome.EXHAUSTED:
                res.reason = f"search budget exhausted at {spec}"
                return res
            if r.outcome is Outcome.NONE:
                all_found = False
                break
            witnesses[str(spec)] = r.labeling
        if all_found:
            res.value = s
            res.witnesses = witnesses
            return res
    res.reason = f"no order in [{lo}, {hi}] works"
    return res


def exact_sg(g: Graph, s_max: int, budget: Optional[SearchBudget] = None, jobs: int = 1) -> ExactResult:
    """Smallest s in [n, s_max] such that every Abelian group of order s admits a labeling."""
    if g.n < 2:
        raise ValueError("exact_sg needs at least two vertices")
    return _scan(g, g.n, s_max, all_abelian_groups, budget, jobs)


def exact_k(g: Graph, k_max: int, budget: Optional[SearchBudget] = None, jobs: int = 1) -> ExactResult:
    """Smallest k in [n, k_max] such that Z_k admits a labeling."""
    if g.n < 2:
        raise ValueError("exact_k needs at least two vertices")
    return _scan(g, g.n, k_max, lambda k: [GroupSpec.cyclic(k)], budget, jobs)
