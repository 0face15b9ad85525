"""Command-line surface tying the pipelines together with stable formats.

Exit codes: 0 when every requested check passes, 2 when a check computed a
failing report, 1 on errors (malformed input, budget exhaustion, unknown
command). Reports distinguish `error` (could not compute) from `fail`
(computed, property violated). Every report embeds the tool version and a
hash of the invoking configuration, and repeated runs with the same
configuration produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .errors import TangletreeError
from .families import LayeredPresentation, generate_family
from .graph import Graph, load_graph
from .limits import (
    check_interlaced_pair,
    construct_interlaced,
    limit_separator_growth,
    thin_out,
)
from .separations import (
    NestedSet,
    Separation,
    SeparationSequence,
    relation,
)
from .tangles import PreTangle, check_tangle, clique_witness
from .tree_of_tangles import (
    build_tree_of_tangles,
    exhaustiveness_evidence,
    induce_tree_decomposition,
    verify_tree_decomposition,
    verify_tree_of_tangles,
)
from .ends import thick_end_pipeline
from .tangles import enumerate_tangles


def _config_hash(args: argparse.Namespace) -> str:
    # output path and thread count steer delivery, not the computation, so
    # they stay out of the hash: equal configurations hash equal
    skip = {"func", "output", "threads"}
    payload = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    blob = json.dumps(payload, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _stamp(doc: dict, args) -> dict:
    doc["tool_version"] = __version__
    doc["config_hash"] = _config_hash(args)
    return doc


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, doc: dict) -> None:
    _emit(args, json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _read(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _pmap(fn, items, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _load_inputs(paths: list[str]) -> list[dict]:
    return [_read(p) for p in paths]


def _as_graph(doc: dict) -> Graph:
    return load_graph(json.dumps(doc))


def _family_presentation(args) -> LayeredPresentation:
    if args.family:
        params: dict = {"horizon": args.horizon}
        if args.sizes:
            params["sizes"] = [int(s) for s in args.sizes.split(",")]
        if args.width is not None:
            params["width"] = args.width
        return generate_family(args.family, params)
    if args.input:
        doc = _read(args.input[0])
        if doc.get("kind") == "presentation":
            return LayeredPresentation.from_json(doc)
        return generate_family(doc["family"], doc.get("params", {}))
    raise TangletreeError("either --family or --input is required")


def _family_bundle(p: LayeredPresentation):
    """Canonical nested set, per-layer chains, and tangle pool at the top."""
    chains = p.canonical_layer_chains()
    top = max(chains)
    g = p.graph_at(top)
    members = [item.canonical() for item in chains[top]]
    nested = NestedSet.of(g, members)
    pool = []
    if p.family == "clique_chain":
        pool = [
            clique_witness(g, p.clique(nn), len(p.clique(nn)))
            for nn in range(len(p.cliques))
        ]
    return nested, chains, pool


def cmd_generate(args) -> int:
    p = _family_presentation(args)
    _emit_json(args, _stamp(p.to_json(), args))
    return 0


def cmd_tangles(args) -> int:
    g = _as_graph(_read(args.input[0]))
    found = enumerate_tangles(g, args.order, budget=args.budget)
    doc = {
        "kind": "tangle_list",
        "order_bound": args.order,
        "tangles": [t.to_json() for t in found],
    }
    _emit_json(args, _stamp(doc, args))
    return 0


def cmd_tot(args) -> int:
    g = _as_graph(_read(args.input[0]))
    found = enumerate_tangles(g, args.order, budget=args.budget)
    nested = build_tree_of_tangles(g, list(found), budget=args.budget)
    report = verify_tree_of_tangles(g, nested, list(found), budget=args.budget)
    doc = {
        "kind": "nested_set",
        "members": [s.to_json() for s in nested],
        "report": {
            "nested_ok": report.nested_ok,
            "relevance": [
                {"sep": m.to_json(), "status": status}
                for m, status in sorted(report.relevance.items(), key=lambda kv: kv[0].sort_key)
            ],
            "efficiency": [
                {"pair": list(pair), "status": status}
                for pair, status in sorted(report.efficiency.items())
            ],
            "ok": report.ok,
        },
        "tangle_count": len(found),
    }
    _emit_json(args, _stamp(doc, args))
    return 0 if report.ok else 2


def cmd_decompose(args) -> int:
    docs = _load_inputs(args.input)
    g = _as_graph(docs[0])
    nested_doc = docs[1]
    members = [Separation.from_json(g, d) for d in nested_doc["members"]]
    crossing = None
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if relation(a, b).cross:
                crossing = (a, b)
                break
        if crossing:
            break
    if crossing:
        doc = {
            "kind": "report",
            "check": "nestedness",
            "status": "fail",
            "witness": [crossing[0].to_json(), crossing[1].to_json()],
        }
        _emit_json(args, _stamp(doc, args))
        return 2
    nested = NestedSet.of(g, members)
    td = induce_tree_decomposition(g, nested)
    report = verify_tree_decomposition(g, td, nested, [])
    if args.format == "dot":
        _emit(args, td.to_dot())
        return 0 if report.ok else 2
    doc = td.to_json()
    doc["report"] = {
        "tree_ok": report.tree_ok,
        "t1_cover": report.t1_cover,
        "t2_edges": report.t2_edges,
        "t3_connected": report.t3_connected,
        "induced_equal": report.induced_equal,
        "ok": report.ok,
    }
    _emit_json(args, _stamp(doc, args))
    return 0 if report.ok else 2


def cmd_limits(args) -> int:
    p = _family_presentation(args)
    chains = p.canonical_layer_chains()
    verdict = exhaustiveness_evidence(p, chains)
    doc = verdict.to_json()
    if verdict.verdict == "non-exhaustive-witness":
        table = limit_separator_growth(p, chains)
        if args.format == "csv":
            _emit(args, table.to_csv())
            return 0
        doc["growth"] = table.to_json()
    _emit_json(args, _stamp(doc, args))
    return 0


def cmd_interlace(args) -> int:
    if args.family:
        p = _family_presentation(args)
        nested, chains, pool = _family_bundle(p)
        top = max(chains)
        g = p.graph_at(top)
        depth = max(2, top - 3)
        seq = SeparationSequence.strictly_increasing(chains[top].items[:depth])
    else:
        docs = _load_inputs(args.input)
        g = _as_graph(docs[0])
        nested = NestedSet.from_json(g, docs[1])
        seq = SeparationSequence.from_json(g, docs[2])
        pool = [PreTangle.from_json(g, d) for d in docs[3]["tangles"]]
    pair = construct_interlaced(g, nested, seq, pool, budget=args.budget)
    report = check_interlaced_pair(g, pair, budget=args.budget)
    thinned = thin_out(pair)
    thin_report = check_interlaced_pair(g, thinned.pair, budget=args.budget)
    doc = pair.to_json()
    doc["im_report"] = {
        "im1_ok": report.im1_ok,
        "im2_ok": report.im2_ok,
        "thin_out_selected": list(thinned.selected),
        "thinned_im1_ok": thin_report.im1_ok,
        "thinned_im2_ok": thin_report.im2_ok,
    }
    _emit_json(args, _stamp(doc, args))
    return 0 if report.ok and thin_report.ok else 2


def cmd_ends(args) -> int:
    p = _family_presentation(args)
    nested, chains, pool = _family_bundle(p)
    report = thick_end_pipeline(p, nested, chains, pool, budget=args.budget)
    if args.format == "csv":
        lines = ["horizon,packing"]
        if not report.rejected:
            lines += [
                f"{m},{size}"
                for m, size in report.stage("packing_growth").details["packings"]
            ]
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit_json(args, _stamp(report.to_json(), args))
    return 0 if report.ok else 2


def _kind_of(doc: dict) -> str:
    if "kind" in doc:
        return doc["kind"]
    if "vertices" in doc and "edges" in doc:
        return "graph"
    raise TangletreeError("artifact kind not recognized")


def cmd_verify(args) -> int:
    docs = _load_inputs(args.input)
    kinds = [_kind_of(d) for d in docs]
    if kinds[0] != "graph":
        raise TangletreeError("first input must be a graph document")
    g = _as_graph(docs[0])
    checks: list[dict] = []
    ok = True
    for doc, kind in zip(docs[1:], kinds[1:]):
        if kind == "nested_set":
            members = [Separation.from_json(g, d) for d in doc["members"]]
            crossing = None
            for i, a in enumerate(members):
                for b in members[i + 1 :]:
                    if relation(a, b).cross:
                        crossing = [a.to_json(), b.to_json()]
                        break
                if crossing:
                    break
            checks.append(
                {"check": "nestedness", "status": "fail" if crossing else "pass", "witness": crossing}
            )
            ok = ok and crossing is None
        elif kind == "tangle_list":
            tangles = [PreTangle.from_json(g, d) for d in doc["tangles"]]
            reports = _pmap(
                lambda t: check_tangle(g, t, budget=args.budget), tangles, args.threads
            )
            bad = [i for i, r in enumerate(reports) if not r.ok]
            checks.append(
                {"check": "tangles", "status": "fail" if bad else "pass", "failing": bad}
            )
            ok = ok and not bad
        elif kind == "tree_decomposition":
            from .tree_of_tangles import TreeDecomposition

            td = TreeDecomposition.from_json(doc)
            induced = set()
            for edge in td.edges:
                from .tree_of_tangles import _edge_induced_separation

                induced.add(_edge_induced_separation(g, td, tuple(edge)).canonical())
            nested = NestedSet.of(g, induced)
            report = verify_tree_decomposition(g, td, nested, [])
            status = "pass" if report.ok else "fail"
            checks.append({"check": "tree_decomposition", "status": status})
            ok = ok and report.ok
        else:
            raise TangletreeError(f"cannot verify artifact of kind {kind!r}")
    doc = {"kind": "report", "checks": checks, "ok": ok}
    _emit_json(args, _stamp(doc, args))
    return 0 if ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangletree",
        description="Separation, tangle, and end analysis on finite windows",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", action="append", default=[], help="input artifact path (repeatable)")
        sp.add_argument("--family", choices=("clique_chain", "ray", "double_ray", "grid", "binary_tree"))
        sp.add_argument("--sizes", help="comma-separated clique sizes override")
        sp.add_argument("--horizon", type=int, default=3)
        sp.add_argument("--width", type=int, default=None, help="strip width for the grid family")
        sp.add_argument("--order", type=int, default=3)
        sp.add_argument("--budget", type=int, default=2_000_000)
        sp.add_argument("--format", choices=("json", "dot", "csv"), default="json")
        sp.add_argument("--output", default=None)
        sp.add_argument("--threads", type=int, default=1)

    for name, fn in (
        ("generate", cmd_generate),
        ("tangles", cmd_tangles),
        ("tot", cmd_tot),
        ("decompose", cmd_decompose),
        ("limits", cmd_limits),
        ("interlace", cmd_interlace),
        ("ends", cmd_ends),
        ("verify", cmd_verify),
    ):
        sp = sub.add_parser(name)
        common(sp)
        sp.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    if args.budget < 1:
        parser.error("--budget must be positive")
    try:
        return args.func(args)
    except TangletreeError as exc:
        if args.format == "json":
            doc = {
                "kind": "error",
                "error": type(exc).__name__,
                "message": str(exc),
            }
            _emit_json(args, _stamp(doc, args))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
