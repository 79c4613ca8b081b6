"""
Command line entry point: ``pentaloss <command> ...``.

Exit status is 0 on success, 2 when a verification finds anomalies and 1
on operational errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

EXIT_OK, EXIT_ERROR, EXIT_ANOMALY = 0, 1, 2
SEED_ENV = "PENTALOSS_SEED"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_code(args) -> int:
    from .code import BASES, build_pentagon_code, graph_stabilizers, minimal_representatives, ring_graph

    if args.ring and args.ring != 5:
        g = ring_graph(args.ring)
        stabs = [str(s) for s in graph_stabilizers(g)]
        if args.format == "json":
            _emit(json.dumps({"ring": args.ring, "graph_stabilizers": stabs}), args.out)
        else:
            _emit("\n".join([f"{args.ring}-cycle graph stabilizers:"] + stabs), args.out)
        return EXIT_OK

    code = build_pentagon_code()
    bases = [args.basis] if args.basis else list(BASES)
    data = {
        "graph_stabilizers": [str(s) for s in graph_stabilizers(code.ring)],
        "code_stabilizers": [str(g) for g in code.code_stabilizers.generators],
        "logical": {b: str(code.logical(b)) for b in BASES},
        "distance": code.distance(),
    }
    if args.min_weight:
        data["minimal_representatives"] = {b: [str(o) for o in minimal_representatives(code, b)] for b in bases}
    else:
        data["cosets"] = {b: [str(o) for o in code.coset(b)] for b in bases}
    if args.format == "json":
        _emit(json.dumps(data, indent=2), args.out)
        return EXIT_OK
    lines = ["ring graph stabilizers: " + " ".join(data["graph_stabilizers"])]
    lines.append("code stabilizers:       " + " ".join(data["code_stabilizers"]))
    lines += [f"logical {b}: {s}" for b, s in data["logical"].items()]
    lines.append(f"distance: {data['distance']}")
    key = "minimal_representatives" if args.min_weight else "cosets"
    for b, ops in data[key].items():
        lines.append(f"{'minimal ' if args.min_weight else ''}{b} coset ({len(ops)}): " + " ".join(ops))
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_threshold(args) -> int:
    from .analytics import find_threshold, identity
    from .report import failure_function

    base = identity if args.base == "identity" else failure_function(args.mode)
    t = find_threshold(base)
    _emit("no threshold" if t is None else f"{t:.9f}", args.out)
    return EXIT_OK


def cmd_curve(args) -> int:
    from .report import curve_csv, curve_json, curve_rows, parse_grid, parse_levels

    rows = curve_rows(args.mode, parse_levels(args.levels), parse_grid(args.grid))
    _emit(curve_json(rows) if args.format == "json" else curve_csv(rows), args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    from . import report

    if args.which == "1":
        t = report.table1(1e-8 if args.strict else 1e-7)
    elif args.which == "2":
        t = report.table2()
    else:
        t = report.table3()
    text = {"csv": t.to_csv, "json": t.to_json, "text": t.to_text}[args.format]()
    _emit(text, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    from .montecarlo import CSV_HEADER, SimConfig, run

    seed = args.seed if args.seed is not None else int(os.environ.get(SEED_ENV, "0"))
    cfg = SimConfig(args.mode, args.p, args.levels, args.shots, seed, args.basis, args.located)
    rep = run(cfg, jobs=args.jobs)
    if args.format == "csv":
        _emit(CSV_HEADER + "\n" + rep.csv_row(), args.out)
    else:
        _emit(json.dumps(rep.to_dict()), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.what == "tree":
        from .strategy import paper_tree, validate_policy

        rep = validate_policy(paper_tree(), targets=tuple(args.targets) if args.targets else None)
        if args.format == "json":
            _emit(json.dumps(rep.to_dict(), indent=2), args.out)
        else:
            lines = [f"policy: {rep.policy_name}; targets: {','.join(rep.targets)}"]
            lines += ["leaves:"] + [f"  {f.describe()}" for f in rep.leaves]
            lines += ["anomalies:"] + [f"  {a}" for a in rep.anomalies]
            _emit("\n".join(lines), args.out)
        return EXIT_OK if rep.ok else EXIT_ANOMALY

    from .code import GraphSpec, verify_encoding_identities
    from .gates import check_cx_correlations, check_hadamard_chain, simulate_cz_flow

    graph = None
    if args.graph:
        with open(args.graph, encoding="utf-8") as fh:
            graph = GraphSpec.from_edge_list(fh.read(), 8)
    verdicts = [simulate_cz_flow(outcomes=(a, b)) for a in (0, 1) for b in (0, 1)]
    verdicts.append(check_hadamard_chain())
    cx = check_cx_correlations(graph)
    enc = verify_encoding_identities()
    commute = cx.correlations[0].passed
    gated = all(v.passed for v in verdicts) and commute and enc.passed
    if args.format == "json":
        payload = {
            "passed": gated,
            "verdicts": [v.to_dict() for v in verdicts],
            "cx": cx.to_dict(),
            "encoding": [c.__dict__ for c in enc.checks],
        }
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        lines = [f"{'PASS' if v.passed else 'FAIL'} {v.name}" for v in verdicts]
        lines.append(f"{'PASS' if commute else 'FAIL'} C_X correlations pairwise commute")
        for c in cx.correlations[1:]:
            lines.append(f"info {c.label} {c.operator}: {'member' if c.present else 'not a member'} {c.certificate}")
        lines += [f"info {n}" for n in cx.notes]
        lines += [f"{'PASS' if c.passed else 'FAIL'} encoding: {c.name}" for c in enc.checks]
        _emit("\n".join(lines), args.out)
    return EXIT_OK if gated else EXIT_ANOMALY


def cmd_compare(args) -> int:
    from .report import comparison

    _emit(json.dumps(comparison().to_dict(), indent=2), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pentaloss", description="Loss tolerance of the concatenated five-qubit ring code.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--format", choices=formats, default=formats[0])

    code = sub.add_parser("code", help="stabilizers and logical operators")
    code.add_argument("action", choices=["show"])
    code.add_argument("--basis", choices=["X", "Y", "Z"])
    code.add_argument("--min-weight", action="store_true")
    code.add_argument("--ring", type=int, help="print graph stabilizers of an n-cycle instead")
    common(code)
    code.set_defaults(func=cmd_code)

    th = sub.add_parser("threshold", help="fixed point of the level recurrence")
    th.add_argument("--mode", choices=["pre", "nonpre"], default="pre")
    th.add_argument("--base", choices=["default", "identity"], default="default")
    common(th)
    th.set_defaults(func=cmd_threshold)

    cv = sub.add_parser("curve", help="effective loss versus physical loss")
    cv.add_argument("--mode", choices=["pre", "nonpre"], default="pre")
    cv.add_argument("--levels", default="1..5")
    cv.add_argument("--grid", default="0:0.5:0.005")
    common(cv, ("csv", "json"))
    cv.set_defaults(func=cmd_curve)

    tb = sub.add_parser("table", help="regenerate a results table")
    tb.add_argument("--which", choices=["1", "2", "3"], required=True)
    tb.add_argument("--strict", action="store_true", help="table 1 with a 1e-8 target")
    common(tb, ("text", "csv", "json"))
    tb.set_defaults(func=cmd_table)

    sm = sub.add_parser("simulate", help="Monte Carlo estimate")
    sm.add_argument("--mode", choices=["pre", "nonpre"], default="pre")
    sm.add_argument("--p", type=float, required=True)
    sm.add_argument("--levels", type=int, default=1)
    sm.add_argument("--shots", type=int, default=100000)
    sm.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV} or 0")
    sm.add_argument("--basis", choices=["X", "Y", "Z"], default="Z")
    sm.add_argument("--located", action="store_true", help="nonpre engine with losses revealed up front")
    sm.add_argument("--jobs", type=int, default=1)
    common(sm, ("json", "csv"))
    sm.set_defaults(func=cmd_simulate)

    vf = sub.add_parser("verify", help="gate constructions or the published decision tree")
    vf.add_argument("what", choices=["gates", "tree"])
    vf.add_argument("--graph", help="edge-list file for the 8-qubit C_X graph")
    vf.add_argument("--targets", nargs="*", choices=["X", "Y", "Z"])
    common(vf)
    vf.set_defaults(func=cmd_verify)

    cp = sub.add_parser("compare", help="pentagon versus tree-code overhead")
    common(cp, ("json",))
    cp.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
