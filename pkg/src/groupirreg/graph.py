"""Simple undirected graphs, component classification and parity walks.

Vertices are ``0..n-1``; edges are stored as sorted pairs ``(u, v)`` with
``u < v``.  Walk parity is always expressed in *edge count*: a walk with an
odd number of edges has an even number of vertices and vice versa.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        edges = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) outside vertex range 0..{self.n - 1}")
            edges.add(norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: Optional[int] = None) -> Graph:
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, frozenset(edges))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def subgraph_edges(self, vertices: Iterable[int]) -> list[Edge]:
        vs = set(vertices)
        return [e for e in self.sorted_edges if e[0] in vs and e[1] in vs]

    def __len__(self) -> int:
        return self.n


# ----------------------------------------------------------------------
# Edge-list text format
# ----------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse ``u v`` lines with an optional leading ``n <count>`` line.

    Blank lines and ``#`` comments are ignored.
    """
    declared = None
    edges: list[Edge] = []
    seen: dict[Edge, int] = {}
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if first and parts[0] == "n":
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphError(f"line {lineno}: malformed vertex count {raw!r}")
            declared = int(parts[1])
            first = False
            continue
        first = False
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex id in {raw!r}")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at vertex {u}")
        if declared is not None and max(u, v) >= declared:
            raise GraphError(f"line {lineno}: vertex {max(u, v)} >= declared n={declared}")
        e = norm_edge(u, v)
        if e in seen:
            raise GraphError(f"line {lineno}: duplicate edge {u} {v} (first on line {seen[e]})")
        seen[e] = lineno
        edges.append(e)
    return Graph.from_edges(edges, declared)


def format_graph(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# Components
# ----------------------------------------------------------------------


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by minimum vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def two_coloring(g: Graph, comp: Sequence[int]) -> Optional[tuple[list[int], list[int]]]:
    """Color classes of a connected vertex set, the one holding ``min(comp)`` first.

    Returns ``None`` if the induced component has an odd cycle.
    """
    start = min(comp)
    color = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in color:
                color[w] = 1 - color[u]
                queue.append(w)
            elif color[w] == color[u]:
                return None
    a = sorted(v for v, c in color.items() if c == 0)
    b = sorted(v for v, c in color.items() if c == 1)
    return a, b


class Kind(enum.Enum):
    TOO_SMALL = "too-small"
    EVEN_STAR = "even-star"
    BIPARTITE_BOTH_ODD = "bipartite-both-odd"
    BIPARTITE_BOTH_EVEN = "bipartite-both-even"
    NON_BIPARTITE_EVEN = "non-bipartite-even"
    ODD_ORDER = "odd-order"


@dataclass(frozen=True)
class ComponentInfo:
    vertices: tuple[int, ...]
    kind: Kind
    classes: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    center: Optional[int] = None
    leaves: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def u(self) -> int:
        """Star parameter: an even star is K_{1,2u+1}."""
        if self.kind is not Kind.EVEN_STAR:
            raise AttributeError("u is only defined for even stars")
        return (len(self.leaves) - 1) // 2

    @property
    def bipartite(self) -> bool:
        return self.classes is not None


def _star_center(g: Graph, comp: Sequence[int]) -> Optional[int]:
    if len(comp) < 2:
        return None
    edges = g.subgraph_edges(comp)
    if len(edges) != len(comp) - 1:
        return None
    for v in comp:
        if g.degree(v) == len(comp) - 1:
            return v
    return None


def classify_component(g: Graph, comp: Iterable[int]) -> ComponentInfo:
    comp = sorted(set(comp))
    if not comp:
        raise GraphError("empty component")
    if any(not 0 <= v < g.n for v in comp):
        raise GraphError(f"component {comp} is not a subset of 0..{g.n - 1}")
    reach = next(c for c in components(g) if comp[0] in c)
    if reach != comp:
        raise GraphError(f"{comp} is not a connected component of the graph")

    vs = tuple(comp)
    if len(comp) < 3:
        return ComponentInfo(vs, Kind.TOO_SMALL)
    coloring = two_coloring(g, comp)
    classes = None if coloring is None else (tuple(coloring[0]), tuple(coloring[1]))
    if len(comp) % 2 == 1:
        return ComponentInfo(vs, Kind.ODD_ORDER, classes)
    center = _star_center(g, comp)
    if center is not None:
        leaves = tuple(v for v in comp if v != center)
        return ComponentInfo(vs, Kind.EVEN_STAR, classes, center, leaves)
    if classes is None:
        return ComponentInfo(vs, Kind.NON_BIPARTITE_EVEN)
    if len(classes[0]) % 2 == 1:
        return ComponentInfo(vs, Kind.BIPARTITE_BOTH_ODD, classes)
    return ComponentInfo(vs, Kind.BIPARTITE_BOTH_EVEN, classes)


def classify(g: Graph) -> list[ComponentInfo]:
    return [classify_component(g, c) for c in components(g)]


# ----------------------------------------------------------------------
# Parity walks
# ----------------------------------------------------------------------


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1


@dataclass(frozen=True)
class Walk:
    """A walk given by its vertex sequence; vertices and edges may repeat."""

    vertices: tuple[int, ...]

    @property
    def edges(self) -> list[Edge]:
        return [norm_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:])]

    @property
    def edge_count(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def is_valid(self, g: Graph) -> bool:
        return len(self.vertices) >= 2 and all(g.has_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:]))


def shortest_parity_walk(g: Graph, v1: int, v2: int, edge_parity: Parity) -> Optional[Walk]:
    """Shortest walk from ``v1`` to ``v2`` whose edge count has the given parity.

    BFS over (vertex, parity) states; neighbours in ascending order, so the
    result is deterministic.  ``None`` when no such walk exists.
    """
    if v1 == v2:
        raise GraphError("walk endpoints must differ")
    for v in (v1, v2):
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} not in graph")
    target = (v2, edge_parity.value)
    parent: dict[tuple[int, int], Optional[tuple[int, int]]] = {(v1, 0): None}
    queue = deque([(v1, 0)])
    found = False
    while queue:
        state = queue.popleft()
        if state == target:
            found = True
            break
        u, p = state
        for w in g.adj[u]:
            nxt = (w, 1 - p)
            if nxt not in parent:
                parent[nxt] = state
                queue.append(nxt)
    if not found:
        if not any(s[0] == v2 for s in parent):
            raise GraphError(f"vertices {v1} and {v2} lie in different components")
        return None
    path = []
    state: Optional[tuple[int, int]] = target
    while state is not None:
        path.append(state[0])
        state = parent[state]
    return Walk(tuple(reversed(path)))
