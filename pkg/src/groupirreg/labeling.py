"""Edge labelings with values in a finite Abelian group, and their serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .abelian import Element, GroupError, GroupSpec, parse_group
from .graph import Edge, Graph, GraphError, Walk, norm_edge


class LabelingError(ValueError):
    pass


@dataclass(frozen=True)
class Labeling:
    """Immutable map edge -> group element; unassigned edges carry 0."""

    group: GroupSpec
    graph: Graph
    labels: Mapping[Edge, Element] = field(default_factory=dict)

    def __post_init__(self):
        labels = {}
        for (u, v), a in self.labels.items():
            e = norm_edge(u, v)
            if e not in self.graph.edges:
                raise LabelingError(f"labelled edge {e} is not in the graph")
            if not self.group.contains(a):
                raise LabelingError(f"label {a!r} on edge {e} is not an element of {self.group}")
            labels[e] = a
        object.__setattr__(self, "labels", labels)

    @classmethod
    def zero(cls, group: GroupSpec, graph: Graph) -> Labeling:
        return cls(group, graph, {})

    def __getitem__(self, e: Edge) -> Element:
        return self.labels.get(norm_edge(*e), self.group.zero)

    def with_labels(self, labels: Mapping[Edge, Element]) -> Labeling:
        return Labeling(self.group, self.graph, labels)

    def weights(self) -> dict[int, Element]:
        g = self.group
        w = {v: g.zero for v in range(self.graph.n)}
        for (u, v), a in self.labels.items():
            w[u] = g.add(w[u], a)
            w[v] = g.add(w[v], a)
        return w

    def apply_walk(self, walk: Walk, a: Element) -> Labeling:
        return apply_walk(self, walk, a)


def apply_walk(lab: Labeling, walk: Walk, a: Element) -> Labeling:
    """Add ``a`` to the 1st, 3rd, ... edge of ``walk`` and ``-a`` to the 2nd, 4th, ...

    Repeated edges accumulate once per traversal.
    """
    g = lab.group
    if not g.contains(a):
        raise LabelingError(f"{a!r} is not an element of {g}")
    if not walk.is_valid(lab.graph):
        raise LabelingError(f"walk {walk.vertices} is not a walk of the graph")
    labels = dict(lab.labels)
    minus = g.neg(a)
    for j, e in enumerate(walk.edges):
        labels[e] = g.add(labels.get(e, g.zero), a if j % 2 == 0 else minus)
    return lab.with_labels(labels)


# ----------------------------------------------------------------------
# Text and JSON formats
# ----------------------------------------------------------------------


def format_labeling(lab: Labeling, weights: bool = True) -> str:
    fmt = lab.group.format_element
    lines = [f"{u} {v} {fmt(lab[(u, v)])}" for u, v in lab.graph.sorted_edges]
    if weights:
        lines.append("# weights")
        lines.extend(f"{v} {fmt(w)}" for v, w in sorted(lab.weights().items()))
    return "\n".join(lines) + "\n"


def parse_labeling(text: str, graph: Graph, group: GroupSpec) -> Labeling:
    """Read ``u v <element>`` lines; everything after ``# weights`` is ignored."""
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.lower().startswith("# weights"):
            break
        line = stripped.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 2)
        if len(parts) != 3:
            raise LabelingError(f"line {lineno}: expected 'u v <element>', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise LabelingError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        e = norm_edge(u, v)
        if e not in graph.edges:
            raise LabelingError(f"line {lineno}: edge {u} {v} is not in the graph")
        if e in labels:
            raise LabelingError(f"line {lineno}: edge {u} {v} labelled twice")
        try:
            labels[e] = group.parse_element(parts[2].replace(" ", ""))
        except GroupError as exc:
            raise LabelingError(f"line {lineno}: {exc}") from None
    return Labeling(group, graph, labels)


def labeling_to_dict(lab: Labeling, method: Optional[str] = None) -> dict:
    return {
        "graph": {"n": lab.graph.n, "edges": [list(e) for e in lab.graph.sorted_edges]},
        "group": str(lab.group),
        "labels": [[u, v, list(lab[(u, v)])] for u, v in lab.graph.sorted_edges],
        "weights": {str(v): list(w) for v, w in sorted(lab.weights().items())},
        "method": method,
    }


def labeling_from_dict(doc: dict) -> Labeling:
    try:
        graph = Graph.from_edges(doc["graph"]["edges"], doc["graph"]["n"])
        group = parse_group(doc["group"])
        labels = {norm_edge(u, v): tuple(r) for u, v, r in doc["labels"]}
    except (KeyError, TypeError, ValueError, GraphError, GroupError) as exc:
        raise LabelingError(f"malformed labeling document: {exc}") from None
    return Labeling(group, graph, labels)


def dumps(lab: Labeling, method: Optional[str] = None) -> str:
    return json.dumps(labeling_to_dict(lab, method), indent=2)
