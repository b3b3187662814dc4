"""Command-line front end: analyze graphs, check leader sets, generate
families, and emit the self-similar report tables.

Commands: analyze, check, gen, report. Input formats: edge list (default)
or undirected DOT, auto-detected by extension. Output: human-readable
text, --json (stable schema "v1"), or --csv. The environment variable
MPCS_THREADS is accepted for compatibility; the current implementation is
single-threaded and ignores it.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional

from . import graphio
from .criticality import (
    MpcsFamily,
    enumerate_mpcs,
    enumerate_mpcs_exhaustive,
    is_controllable,
)
from .errors import (
    GraphError,
    MpcsError,
    ParseError,
    SpectralError,
    SupportSearchOverflow,
)
from .generators import (
    gen_cayley,
    gen_dsfn,
    gen_fig1,
    gen_fig5,
    gen_path,
    gen_random_tree,
    gen_star,
)
from .graph import Graph, components, induced_subgraph, is_connected, is_tree
from .leaders import certify_min_leaders, min_hitting_sets, sci5
from .selfsimilar import cayley_report, dsfn_report
from .spectral import DEFAULT_TOL, ToleranceConfig
from .trees import tree_mpcs

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
_EXHAUSTIVE_DEFAULT_LIMIT = 18


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _tolerances(args) -> ToleranceConfig:
    return ToleranceConfig(
        eps_group=args.eps_group,
        eps_zero=args.eps_zero,
        eps_rank=args.eps_rank,
    )


def _fmt_witness(x: float, eps: float) -> str:
    return "0" if abs(x) < eps else f"{x:.12g}"


def _fmt_set(s) -> str:
    return "{" + ",".join(str(v) for v in s) + "}"


def _merge_with_complete(tree_fam: MpcsFamily,
                         full: MpcsFamily) -> MpcsFamily:
    """Adopt the proven-complete family, keeping recognizer provenance
    for the sets the tree rules already produced."""
    prov_by_set = {frozenset(s): p
                   for s, p in zip(tree_fam.sets, tree_fam.provenance)}
    prov = tuple(prov_by_set.get(frozenset(s), p)
                 for s, p in zip(full.sets, full.provenance))
    return MpcsFamily(
        sets=full.sets,
        provenance=prov,
        certificates=full.certificates,
        complete=True,
        search_cap=full.search_cap,
    )


def _analyze_one(g: Graph, mode: str, size_cap: Optional[int],
                 tol: ToleranceConfig):
    """Returns (family, trace or None, mode_used)."""
    trace = None
    if mode == "tree" or (mode == "auto" and is_tree(g)):
        fam, trace = tree_mpcs(g, tol)
        used = "tree"
        if mode == "auto":
            try:
                fam = _merge_with_complete(fam, enumerate_mpcs(g, tol))
                used = "tree+eigenspace"
            except SupportSearchOverflow:
                pass
    elif mode == "exhaustive":
        cap = size_cap
        if cap is None:
            if g.n > _EXHAUSTIVE_DEFAULT_LIMIT:
                raise ParseError(
                    f"exhaustive mode needs --size-cap for n > "
                    f"{_EXHAUSTIVE_DEFAULT_LIMIT}"
                )
            cap = g.n
        fam = enumerate_mpcs_exhaustive(g, cap, tol)
        used = "exhaustive"
    else:
        try:
            fam = enumerate_mpcs(g, tol)
            used = "eigenspace"
        except SupportSearchOverflow:
            cap = size_cap or min(g.n, _EXHAUSTIVE_DEFAULT_LIMIT)
            fam = enumerate_mpcs_exhaustive(g, cap, tol)
            used = "exhaustive"
    return fam, trace, used


def _leader_payload(g: Graph, fam: MpcsFamily, tol: ToleranceConfig,
                    max_listed: int = 1000):
    n_l, found, total = min_hitting_sets(fam, g.n)
    report = certify_min_leaders(g, fam, found[0], tol)
    truncated = total > len(found) or len(found) > max_listed
    listed = found[:max_listed]
    m2, e2 = sci5(report.N2)
    payload = {
        "n_l": report.n_l,
        "n_s": report.n_s,
        "N1": {"num": report.N1.numerator, "den": report.N1.denominator},
        "N2": {"mantissa": m2, "exp": e2},
        "min_sets_truncated": truncated,
        "min_sets": [list(s) for s in listed],
    }
    return report, payload


def _analysis_json(g, fam, report_payload, certified, used, tol, ms,
                   trace=None):
    out = {
        "version": "v1",
        "graph": {"n": g.n, "edges": sorted([list(e) for e in g.edges])},
        "mode": used,
        "mpcs": [
            {
                "set": list(s),
                "lambda": float(c.lam),
                "provenance": p,
            }
            for s, p, c in zip(fam.sets, fam.provenance, fam.certificates)
        ],
        "complete": fam.complete,
        "leaders": report_payload,
        "certified": certified,
        "tolerances": {
            "eps_group": tol.eps_group,
            "eps_zero": tol.eps_zero,
            "eps_rank": tol.eps_rank,
        },
        "timing_ms": ms,
    }
    if trace is not None:
        out["trace"] = [
            {"vertex": r.vertex, "rule": r.rule, "verdict": r.verdict,
             "refs": list(r.refs)}
            for r in trace.rows
        ]
    return out


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _print_analysis_human(g, fam, report, used, trace, args):
    print(f"graph: n={g.n} m={g.m} tree={'yes' if is_tree(g) else 'no'}")
    print(f"mode: {used}")
    comp = "yes" if fam.complete else "no"
    print(f"mpcs ({len(fam.sets)}, complete={comp}):")
    for s, p, c in zip(fam.sets, fam.provenance, fam.certificates):
        print(f"  {_fmt_set(s)}  lambda={c.lam:.12g}  [{p}]")
    m2, e2 = sci5(report.N2)
    print(f"leaders: n_l={report.n_l}  n_s={report.n_s}  "
          f"N1={report.N1.numerator}/{report.N1.denominator}  "
          f"N2={m2:.4f}e{e2:+03d}")
    shown = " ".join(_fmt_set(s) for s in report.min_sets[:20])
    more = "" if len(report.min_sets) <= 20 else " ..."
    print(f"min sets: {shown}{more}")
    print(f"certified: {'yes' if report.certified else 'no'}")
    if trace is not None and args.trace:
        print("# trace")
        sys.stdout.write(trace.to_csv())


def cmd_analyze(args) -> int:
    tol = _tolerances(args)
    g = graphio.load(args.path, args.format)
    targets = [(g, None)]
    if not is_connected(g):
        if not args.per_component:
            raise GraphError(
                "graph is disconnected; rerun with --per-component"
            )
        targets = []
        for comp in components(g):
            sub = induced_subgraph(g, comp)
            targets.append((sub.graph, sub.parent_labels))

    results = []
    for graph, labels in targets:
        t0 = time.perf_counter()
        fam, trace, used = _analyze_one(graph, args.mode, args.size_cap, tol)
        report, payload = _leader_payload(graph, fam, tol)
        ms = int((time.perf_counter() - t0) * 1000)
        results.append((graph, labels, fam, trace, used, report, payload, ms))

    if args.json:
        docs = []
        for graph, labels, fam, trace, used, report, payload, ms in results:
            doc = _analysis_json(graph, fam, payload, report.certified,
                                 used, tol, ms,
                                 trace if args.trace else None)
            if labels is not None:
                doc["parent_labels"] = list(labels)
            docs.append(doc)
        out = docs[0] if len(docs) == 1 else {"version": "v1",
                                              "components": docs}
        print(_dump_json(out))
    elif args.csv:
        print("set,lambda,provenance")
        for graph, labels, fam, trace, used, report, payload, ms in results:
            for s, p, c in zip(fam.sets, fam.provenance, fam.certificates):
                print(f"{' '.join(map(str, s))},{c.lam:.12g},{p}")
        if args.trace:
            for _, _, _, trace, _, _, _, _ in results:
                if trace is not None:
                    print("# trace")
                    sys.stdout.write(trace.to_csv())
    else:
        for i, (graph, labels, fam, trace, used, report, payload, ms) \
                in enumerate(results):
            if labels is not None:
                print(f"component {i + 1}: vertices "
                      f"{_fmt_set(labels)} (relabeled 1..{graph.n})")
            _print_analysis_human(graph, fam, report, used, trace, args)
    return EXIT_OK


def cmd_check(args) -> int:
    tol = _tolerances(args)
    g = graphio.load(args.path, args.format)
    try:
        leaders = tuple(int(x) for x in args.leaders.split(","))
    except ValueError:
        raise ParseError("--leaders expects a comma-separated label list")
    verdict = is_controllable(g, leaders, tol)
    if args.json:
        doc = {"version": "v1", "leaders": sorted(leaders),
               "controllable": verdict.controllable}
        if verdict.obstruction is not None:
            ob = verdict.obstruction
            doc["obstruction"] = {
                "set": list(ob.set),
                "lambda": float(ob.lam),
                "witness": [
                    0.0 if abs(x) < tol.eps_zero else float(f"{x:.12g}")
                    for x in ob.witness
                ],
            }
        print(_dump_json(doc))
        return EXIT_OK
    if verdict.controllable:
        print("controllable")
    else:
        ob = verdict.obstruction
        print("uncontrollable")
        print(f"obstruction: set={_fmt_set(ob.set)} lambda={ob.lam:.12g}")
        entries = " ".join(_fmt_witness(x, tol.eps_zero) for x in ob.witness)
        print(f"witness: [{entries}]")
    return EXIT_OK


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "fig1":
        g = gen_fig1()
    elif fam == "fig5":
        g = gen_fig5()
    elif fam == "path":
        g = gen_path(_require_n(args))
    elif fam == "star":
        g = gen_star(_require_n(args))
    elif fam == "dsfn":
        g = gen_dsfn(_require_g(args))
    elif fam == "cayley":
        g = gen_cayley(_require_g(args))
    else:  # random-tree
        if args.n is None:
            raise ParseError("random-tree needs -n")
        g = gen_random_tree(args.n, args.seed)
    text = (graphio.write_dot(g) if args.format == "dot"
            else graphio.write_edge_list(g))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _require_n(args) -> int:
    if args.n is None:
        raise ParseError(f"{args.family} needs -n")
    return args.n


def _require_g(args) -> int:
    if args.g is None:
        raise ParseError(f"{args.family} needs -g")
    return args.g


def cmd_report(args) -> int:
    tol = _tolerances(args)
    default_cap = 6 if args.family == "dsfn" else 5
    if args.gmax > default_cap and not args.uncertified:
        raise ParseError(
            f"{args.family} rows beyond g={default_cap} are not certified "
            f"by default; pass --uncertified to emit them"
        )
    if args.family == "dsfn":
        rows = dsfn_report(args.gmax, tol)
    else:
        rows = cayley_report(args.gmax, tol, uncertified=args.uncertified)

    failed = [r for r in rows if not r.certified]
    if args.json:
        docs = []
        for r in rows:
            doc = {
                "family": r.family, "g": r.g, "n": r.n, "n_l": r.n_l,
                "n_s": r.n_s,
                "N1": {"num": r.N1.numerator, "den": r.N1.denominator},
                "certified": r.certified, "complete": r.complete,
                "flags": list(r.flags),
            }
            if r.N2 is not None:
                m2, e2 = sci5(r.N2)
                doc["N2"] = {"mantissa": m2, "exp": e2}
            docs.append(doc)
        print(_dump_json({"version": "v1", "rows": docs}))
    else:
        print("family,g,n,n_l,n_s,N1,N2,certified,complete,flags")
        for r in rows:
            if r.N2 is not None:
                m2, e2 = sci5(r.N2)
                n2 = f"{m2:.4f}e{e2:+03d}"
            else:
                n2 = ""
            n1 = f"{r.N1.numerator}/{r.N1.denominator}"
            comp = "" if r.complete is None else str(r.complete).lower()
            print(f"{r.family},{r.g},{r.n},{r.n_l},"
                  f"{r.n_s if r.n_s is not None else ''},{n1},{n2},"
                  f"{str(r.certified).lower()},{comp},{';'.join(r.flags)}")
    if failed and args.strict:
        return EXIT_USAGE
    return EXIT_OK


def build_parser() -> _Parser:
    p = _Parser(
        prog="mpcskit",
        description="Minimal perfect critical sets and minimum leader "
                    "selection for Laplacian leader-follower networks.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_tol(sp):
        sp.add_argument("--eps-group", type=float, default=DEFAULT_TOL.eps_group)
        sp.add_argument("--eps-zero", type=float, default=DEFAULT_TOL.eps_zero)
        sp.add_argument("--eps-rank", type=float, default=None)

    a = sub.add_parser("analyze", help="find all MPCS and minimum leaders")
    a.add_argument("path")
    a.add_argument("--mode", choices=("auto", "exhaustive", "tree"),
                   default="auto")
    a.add_argument("--size-cap", type=int, default=None)
    a.add_argument("--format", choices=("edgelist", "dot"), default=None)
    a.add_argument("--per-component", action="store_true")
    a.add_argument("--trace", action="store_true")
    a.add_argument("--json", action="store_true")
    a.add_argument("--csv", action="store_true")
    add_tol(a)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", help="test a leader set for controllability")
    c.add_argument("path")
    c.add_argument("--leaders", required=True)
    c.add_argument("--format", choices=("edgelist", "dot"), default=None)
    c.add_argument("--json", action="store_true")
    add_tol(c)
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("gen", help="emit a benchmark graph")
    g.add_argument("family", choices=("path", "star", "fig1", "fig5",
                                      "dsfn", "cayley", "random-tree"))
    g.add_argument("-n", type=int, default=None)
    g.add_argument("-g", type=int, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=("edgelist", "dot"),
                   default="edgelist")
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("report", help="self-similar family tables")
    r.add_argument("family", choices=("dsfn", "cayley"))
    r.add_argument("--gmax", type=int, required=True)
    r.add_argument("--uncertified", action="store_true")
    r.add_argument("--strict", action="store_true")
    r.add_argument("--json", action="store_true")
    r.add_argument("--csv", action="store_true")
    add_tol(r)
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SpectralError, SupportSearchOverflow) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except MpcsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
