"""Command-line front end.

Subcommands: info, build, search, enumerate, anneal, verify, halfedge-check,
export-dot. Graphs are given as a file path (graph6 or edge list) or a named
generator (optionally prefixed ``named:``). Primary output is deterministic
for a fixed invocation: JSON for certificates and reports, CSV for
enumerations, JSON lines for traces. Exit codes: 0 success, 1 precondition
or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dynamics, halfedge, labeling, projection
from .graphs import (
    Graph,
    GraphFormatError,
    NAMED_GRAPHS,
    generate_named,
    parse_edge_list,
    parse_graph6,
    structural_report,
    to_dot,
)
from .linegraph import line_graph
from .reduced import PreconditionError, audit_reduced, build_reduced, reduced_to_dot, reduced_to_json


def _fail(message: str, code: int = 1) -> int:
    print(json.dumps({"error": message}), file=sys.stderr)
    return code


def load_graph(source: str) -> Graph:
    """Resolve a --graph argument: named generator or file path."""
    name = source.removeprefix("named:")
    if name in NAMED_GRAPHS:
        return generate_named(name)
    path = Path(source)
    if not path.exists():
        raise GraphFormatError(
            f"{source!r} is neither a named graph ({', '.join(NAMED_GRAPHS)}) nor a file"
        )
    text = path.read_text()
    stripped = text.strip()
    try:
        return parse_graph6(stripped.splitlines()[0] if stripped else "")
    except GraphFormatError as g6_err:
        try:
            return parse_edge_list(text)
        except GraphFormatError as el_err:
            raise GraphFormatError(
                f"could not parse {source!r}: as graph6: {g6_err}; as edge list: {el_err}"
            )


def _write_out(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _search_config(args) -> dynamics.SearchConfig:
    return dynamics.SearchConfig(
        seed=args.seed,
        max_restarts=args.max_restarts,
        max_flips_per_attempt=args.max_flips,
        resolution_depth=args.depth,
        enumerate_threshold=args.enumerate_threshold,
    )


def _write_trace(outcome: dynamics.SearchOutcome, path: str | None):
    if not path:
        return
    lines = [json.dumps(r.as_dict()) for r in outcome.trace]
    Path(path).write_text("\n".join(lines) + "\n")


def cmd_info(args) -> int:
    g = load_graph(args.graph)
    report = structural_report(g)
    doc = {"vertex_count": g.vertex_count, "edge_count": len(g.edges)}
    doc.update(report.as_dict())
    _write_out(json.dumps(doc, indent=2), args.out)
    return 0


def cmd_build(args) -> int:
    g = load_graph(args.graph)
    rs = build_reduced(g)
    audit = audit_reduced(rs)
    doc = json.loads(reduced_to_json(rs))
    doc["audit"] = [
        {"check": c.name, "passed": c.passed, "detail": c.detail} for c in audit.checks
    ]
    _write_out(json.dumps(doc, indent=2), args.out)
    return 0 if audit.passed else 1


def cmd_search(args) -> int:
    g = load_graph(args.graph)
    cert = projection.pipeline(g, _search_config(args), threads=args.threads)
    _write_out(cert.to_json(), args.out)
    _write_trace(cert.metadata["outcome"], args.trace_out)
    return 0 if cert.valid_cdc else 1


def cmd_enumerate(args) -> int:
    g = load_graph(args.graph)
    rs = build_reduced(g)
    width = (rs.clique_count + 3) // 4
    rows = ["bits_hex,type_a,type_b"]
    total = 0
    free = 0
    for bits, a, b in dynamics.enumerate_labelings(rs, threshold=args.enumerate_threshold):
        rows.append(f"{bits:0{width}x},{a},{b}")
        total += 1
        if a == 0 and b == 0:
            free += 1
    _write_out("\n".join(rows) + "\n", args.out)
    print(
        f"enumerated {total} labelings, {free} intersection-free",
        file=sys.stderr,
    )
    return 0


def cmd_anneal(args) -> int:
    g = load_graph(args.graph)
    rs = build_reduced(g)
    cfg = dynamics.AnnealingConfig()
    outcome = dynamics.anneal(rs, cfg, seed=args.seed)
    _write_trace(outcome, args.trace_out)
    if outcome.status == dynamics.SOLVED:
        cs = labeling.extract_cycles(outcome.labeling)
        wc = projection.project_pi(cs, rs)
        cert = projection.verify_cdc(g, wc)
        cert.metadata["labeling_bits_hex"] = outcome.labeling.bits_hex()
        cert.metadata["seed"] = args.seed
        cert.metadata.setdefault("stats", {})["proposals"] = outcome.flips_applied
        _write_out(cert.to_json(), args.out)
        return 0 if cert.valid_cdc else 1
    best = labeling.classify_cliques(outcome.labeling, labeling.extract_cycles(outcome.labeling))
    doc = {
        "verdict": "budget_exhausted",
        "seed": args.seed,
        "proposals": outcome.flips_applied,
        "best_counts": list(best.counts()),
    }
    _write_out(json.dumps(doc, indent=2), args.out)
    return 1


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    doc = json.loads(Path(args.cover).read_text())
    walks = doc.get("cycles", doc.get("walks"))
    if walks is None:
        return _fail("cover file needs a 'cycles' list", 2)
    from collections import Counter

    wc_walks = tuple(tuple(int(v) for v in w) for w in walks)
    multisets = []
    for w in wc_walks:
        em: Counter = Counter()
        for i in range(len(w)):
            u, v = w[i], w[(i + 1) % len(w)]
            em[(min(u, v), max(u, v))] += 1
        multisets.append(em)
    wc = projection.WalkCover(graph=g, walks=wc_walks, edge_multisets=tuple(multisets))
    cert = projection.verify_cdc(g, wc)
    _write_out(cert.to_json(), args.out)
    return 0 if cert.valid_cdc else 1


def cmd_halfedge_check(args) -> int:
    g = load_graph(args.graph)
    rs = build_reduced(g)
    hes = halfedge.build_half_edge(g)
    report = halfedge.equivalence_check(hes, rs)
    doc = {
        "matches": report.matches,
        "detail": report.detail,
        "pairs": len(hes.pairs),
        "crossings": len(hes.crossings),
    }
    _write_out(json.dumps(doc, indent=2), args.out)
    return 0 if report.matches else 1


def cmd_export_dot(args) -> int:
    g = load_graph(args.graph)
    if args.layer == "graph":
        text = to_dot(g)
    elif args.layer == "linegraph":
        text = to_dot(line_graph(g).lg, name="linegraph")
    else:
        text = reduced_to_dot(build_reduced(g))
    _write_out(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclecover",
        description="search for and verify cycle double covers of cubic graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, search_flags=False):
        p.add_argument("--graph", required=True, help="file path or named graph")
        p.add_argument("--out", help="write primary output to this file")
        p.add_argument("--format", choices=("json", "csv", "dot"), help="output format hint")
        if search_flags:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--max-restarts", type=int, default=64)
            p.add_argument("--max-flips", type=int, default=1_000_000)
            p.add_argument("--depth", type=int, default=8)
            p.add_argument("--enumerate-threshold", type=int, default=24)
            p.add_argument("--threads", type=int, default=1)
            p.add_argument("--trace-out", help="write the search trace as JSON lines")

    common(sub.add_parser("info", help="structural report"))
    common(sub.add_parser("build", help="reduced structure stats and audit"))
    common(sub.add_parser("search", help="run the cover search pipeline"), search_flags=True)
    common(sub.add_parser("enumerate", help="classify all labelings"), search_flags=True)
    common(sub.add_parser("anneal", help="annealing search"), search_flags=True)
    p_verify = sub.add_parser("verify", help="verify an external cover")
    common(p_verify)
    p_verify.add_argument("--cover", required=True, help="JSON file with a 'cycles' list")
    common(sub.add_parser("halfedge-check", help="half-edge construction equivalence"))
    p_dot = sub.add_parser("export-dot", help="DOT export")
    common(p_dot)
    p_dot.add_argument(
        "--layer", choices=("graph", "linegraph", "reduced"), default="graph"
    )
    return parser


_COMMANDS = {
    "info": cmd_info,
    "build": cmd_build,
    "search": cmd_search,
    "enumerate": cmd_enumerate,
    "anneal": cmd_anneal,
    "verify": cmd_verify,
    "halfedge-check": cmd_halfedge_check,
    "export-dot": cmd_export_dot,
}

_NATIVE_FORMAT = {
    "enumerate": "csv",
    "export-dot": "dot",
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    native = _NATIVE_FORMAT.get(args.command, "json")
    if args.format and args.format != native:
        return _fail(f"{args.command} emits {native}, not {args.format}", 2)
    try:
        return _COMMANDS[args.command](args)
    except (GraphFormatError, PreconditionError, ValueError) as exc:
        return _fail(str(exc), 1)
    except FileNotFoundError as exc:
        return _fail(str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
