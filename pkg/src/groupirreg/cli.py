"""Command-line front end.

Exit codes: 0 success, 1 negative result (collision / none-proved / no order
in range), 2 usage or precondition error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional

from .abelian import GroupError, all_abelian_groups, parse_group
from .graph import GraphError, parse_graph
from .labeler import (
    STAR_CHAIN,
    STAR_FREE,
    LabelerError,
    label_auto,
    label_general,
    label_star_free,
    sg_dispatch,
)
from .labeling import LabelingError, format_labeling, labeling_from_dict, labeling_to_dict, parse_labeling
from .oracle import Outcome, SearchBudget, exact_k, exact_sg, find_irregular_labeling, verify_irregular
from .partition import PartitionError, skolem_partition

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class CommandReport:
    command: str
    inputs: dict[str, Any]
    outcome: str = ""
    artifacts: dict[str, Any] = field(default_factory=dict)
    timing: float = 0.0
    exit_code: int = EXIT_OK
    text: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        doc = asdict(self)
        doc.pop("text")
        return json.dumps(doc, indent=2)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _graph(path: str):
    try:
        return parse_graph(_read(path))
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _group(text: str):
    try:
        return parse_group(text)
    except GroupError as exc:
        raise UsageError(str(exc)) from None


def _budget(args) -> SearchBudget:
    return SearchBudget(args.max_assignments, args.time_cap)


def cmd_label(args) -> CommandReport:
    g, spec = _graph(args.graph), _group(args.group)
    rep = CommandReport("label", {"graph": args.graph, "group": str(spec), "method": args.method})
    if spec.order < g.n:
        raise UsageError(f"group order {spec.order} < n={g.n}")
    if args.method == "auto":
        lab, method = label_auto(g, spec)
    elif args.method == STAR_FREE:
        lab, method = label_star_free(g, spec), STAR_FREE
    else:
        lab, method = label_general(g, spec), STAR_CHAIN
    rep.outcome = "ok"
    rep.artifacts = {"labeling": labeling_to_dict(lab, method)}
    text = format_labeling(lab)
    if args.out:
        out = Path(args.out)
        out.write_text(json.dumps(labeling_to_dict(lab, method), indent=2) if out.suffix == ".json" else text)
        rep.text.append(f"method {method}: labeling written to {args.out}")
    else:
        rep.text.append(f"# method {method}, group {spec}")
        rep.text.append(text.rstrip("\n"))
    return rep


def _load_labeling(path: str, g, spec):
    text = _read(path)
    if text.lstrip().startswith("{"):
        lab = labeling_from_dict(json.loads(text))
        if lab.graph != g or lab.group != spec:
            raise UsageError(f"{path}: labeling document is for a different graph or group")
        return lab
    return parse_labeling(text, g, spec)


def cmd_verify(args) -> CommandReport:
    g, spec = _graph(args.graph), _group(args.group)
    rep = CommandReport("verify", {"graph": args.graph, "group": str(spec), "labeling": args.labeling})
    try:
        lab = _load_labeling(args.labeling, g, spec)
    except LabelingError as exc:
        raise UsageError(f"{args.labeling}: {exc}") from None
    collisions = verify_irregular(g, lab)
    rep.artifacts = {"collisions": [list(c) for c in collisions]}
    if collisions:
        rep.outcome, rep.exit_code = "collision", EXIT_NEGATIVE
        w = lab.weights()
        for u, v in collisions:
            rep.text.append(f"collision: vertices {u} and {v} both weigh {spec.format_element(w[u])}")
    else:
        rep.outcome = "ok"
        rep.text.append("ok")
    return rep


def cmd_oracle(args) -> CommandReport:
    g, spec = _graph(args.graph), _group(args.group)
    rep = CommandReport("oracle", {"graph": args.graph, "group": str(spec)})
    res = find_irregular_labeling(g, spec, _budget(args), args.jobs)
    rep.outcome = res.outcome.value
    rep.artifacts = {"assignments": res.assignments}
    rep.text.append(f"{res.outcome.value} after {res.assignments} assignments")
    if res.labeling is not None:
        rep.artifacts["labeling"] = labeling_to_dict(res.labeling, "oracle")
        rep.text.append(format_labeling(res.labeling).rstrip("\n"))
    rep.exit_code = {Outcome.FOUND: EXIT_OK, Outcome.NONE: EXIT_NEGATIVE, Outcome.EXHAUSTED: EXIT_BUDGET}[
        res.outcome
    ]
    return rep


def _exact(args, name, fn) -> CommandReport:
    g = _graph(args.graph)
    hi = args.max if args.max is not None else 2 * g.n
    rep = CommandReport(name, {"graph": args.graph, "max": hi})
    res = fn(g, hi, _budget(args), args.jobs)
    rep.artifacts = {"trace": [list(t) for t in res.trace], "value": res.value}
    for order, group, outcome in res.trace:
        rep.text.append(f"{order:>4} {group:<14} {outcome}")
    if res.resolved:
        rep.outcome = "resolved"
        rep.text.append(f"{name.replace('exact-', '')} = {res.value}")
    else:
        rep.outcome = "unresolved"
        rep.text.append(f"unresolved: {res.reason}")
        rep.exit_code = EXIT_BUDGET if "budget" in res.reason else EXIT_NEGATIVE
    return rep


def cmd_exact_sg(args) -> CommandReport:
    return _exact(args, "exact-sg", exact_sg)


def cmd_exact_k(args) -> CommandReport:
    return _exact(args, "exact-k", exact_k)


def cmd_partition(args) -> CommandReport:
    spec = _group(args.group)
    rep = CommandReport("partition", {"group": str(spec)})
    part = skolem_partition(spec)
    lines = part.format_lines()
    rep.outcome = "ok"
    rep.artifacts = {"lines": lines, "triplet_pairs": part.triplet_pairs, "pairs": len(part.pairs)}
    rep.text.extend(lines)
    return rep


def cmd_bounds(args) -> CommandReport:
    g = _graph(args.graph)
    rep = CommandReport("bounds", {"graph": args.graph})
    d = sg_dispatch(g)
    rep.outcome = "ok"
    rep.artifacts = d.as_dict()
    rel = "=" if d.exact else "<="
    rep.text.append(f"n = {d.n}")
    rep.text.append(f"s_g {rel} {d.guaranteed_order}  [{d.theorem}: {d.statement}]")
    if d.parameters is not None and d.parameters.q0:
        p = d.parameters
        rep.text.append(f"q0={p.q0} q1={p.q1} q2={p.q2} q4={p.q4} eps={p.epsilon} K={p.K}")
    rep.text.append(f"general bound: s_g <= {d.fallback_bound}")
    for group, method in d.method_per_group.items():
        rep.text.append(f"  {group:<14} {method}")
    return rep


def cmd_groups(args) -> CommandReport:
    rep = CommandReport("groups", {"order": args.order})
    try:
        groups = all_abelian_groups(args.order)
    except GroupError as exc:
        raise UsageError(str(exc)) from None
    rep.outcome = "ok"
    rep.artifacts = {"groups": [str(s) for s in groups]}
    rep.text.extend(str(s) for s in groups)
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="groupirreg", description="Group-irregular edge labelings of graphs.")
    p.add_argument("--json", action="store_true", help="print a single JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    def budget_flags(sp):
        sp.add_argument("--max-assignments", type=int, default=10**8)
        sp.add_argument("--time-cap", type=float, default=None, help="seconds")
        sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("label", help="construct a labeling")
    sp.add_argument("graph")
    sp.add_argument("group")
    sp.add_argument("--method", choices=["auto", STAR_FREE, STAR_CHAIN], default="auto")
    sp.add_argument("--out", help="write the labeling here (.json for the structured form)")
    sp.set_defaults(func=cmd_label)

    sp = sub.add_parser("verify", help="check a labeling file")
    sp.add_argument("graph")
    sp.add_argument("group")
    sp.add_argument("labeling")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="exhaustive search for a labeling")
    sp.add_argument("graph")
    sp.add_argument("group")
    budget_flags(sp)
    sp.set_defaults(func=cmd_oracle)

    for name, fn in (("exact-sg", cmd_exact_sg), ("exact-k", cmd_exact_k)):
        sp = sub.add_parser(name, help=f"compute {name[6:]} by exhaustive search")
        sp.add_argument("graph")
        sp.add_argument("--max", type=int, default=None, help="largest order to try (default 2n)")
        budget_flags(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("partition", help="print a Skolem partition")
    sp.add_argument("group")
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("bounds", help="report the best known value or bound")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("groups", help="list the Abelian groups of an order")
    sp.add_argument("order", type=int)
    sp.set_defaults(func=cmd_groups)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        rep = args.func(args)
    except (UsageError, LabelerError, PartitionError, GroupError, GraphError, LabelingError) as exc:
        rep = CommandReport(args.command, {k: v for k, v in vars(args).items() if k not in ("func",)})
        rep.outcome, rep.exit_code = "error", EXIT_USAGE
        rep.artifacts = {"error": str(exc)}
        rep.timing = time.monotonic() - start
        if args.json:
            print(rep.to_json())
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep.timing = time.monotonic() - start
    if args.json:
        print(rep.to_json())
    else:
        print("\n".join(rep.text))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
