"""bisplit-dbe command line."""

from __future__ import annotations

import argparse
import json
import sys

from .bisplit import find_max_partition, refine
from .enumeration import FULL_PROOF, THEOREM_ONLY, SweepConfig, dump_graph6, gen_bisplit_graphs, verify_theorem
from .graph import Graph, GraphError, parse_graph, parse_graph6, to_graph6
from .lemmas import (
    LEMMA2_SOLUTIONS,
    LemmaDomain,
    lemma1_check,
    lemma2_solution_set,
    trinomial_implication_check,
)
from .lines import all_lines

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def read_graph(path: str) -> Graph:
    """Load a graph from a graph6 line or an edge-list file."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    first = raw.lstrip().split(b"\n", 1)[0].strip()
    if first and 63 <= first[0] <= 126:
        try:
            return parse_graph6(first)
        except GraphError:
            pass
    try:
        return parse_graph(raw.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise GraphError(f"{path}: not a text file") from exc


def _fmt_set(vs) -> str:
    return "{" + ",".join(map(str, sorted(vs))) + "}"


def cmd_lines_count(args) -> int:
    g = read_graph(args.file)
    ls = all_lines(g)
    universal = "yes" if ls.universal_pairs() else "no"
    print(f"n={g.n} lines={len(ls)} universal={universal}")
    return EXIT_OK


def cmd_lines_show(args) -> int:
    g = read_graph(args.file)
    ls = all_lines(g)
    for members in ls.member_sets():
        line = _fmt_set(members)
        if args.pairs:
            mask = sum(1 << v for v in members)
            gens = " ".join(f"{a}-{b}" for a, b in sorted(ls.generators_of(mask)))
            line += f"  generated by {gens}"
        print(line)
    print(f"{len(ls)} distinct lines on {g.n} vertices")
    return EXIT_OK


def cmd_bisplit_check(args) -> int:
    g = read_graph(args.file)
    p = find_max_partition(g)
    if p is None:
        print("bisplit: no")
        return EXIT_OK
    print(f"bisplit: yes  X={_fmt_set(p.X)} Y={_fmt_set(p.Y)} Z={_fmt_set(p.Z)}")
    if args.refined:
        r = refine(g, p)
        print("  ".join(f"{name}={_fmt_set(vs)}" for name, vs in r.to_json().items()))
    return EXIT_OK


def cmd_verify_theorem(args) -> int:
    cfg = SweepConfig(max_n=args.max_n, mode=FULL_PROOF if args.full_proof else THEOREM_ONLY,
                      workers=args.workers, output=args.output)
    report = verify_theorem(cfg)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        for n, tally in sorted(report.per_n.items()):
            verdicts = " ".join(f"{k}={v}" for k, v in sorted(tally.verdicts.items()))
            line = f"n={n} graphs={tally.graphs} {verdicts}"
            if tally.proof:
                line += " proof: " + " ".join(f"{k}={v}" for k, v in sorted(tally.proof.items()))
            print(line)
        print(f"counterexamples: {len(report.counterexamples)} mismatches: {len(report.mismatches)}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify_proof(args) -> int:
    from .proof import verify_proof_on_graph

    g = read_graph(args.file)
    report = verify_proof_on_graph(g)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(f"n={g.n} branch={report.branch} verdict={report.verdict.kind} "
              f"oracle={report.oracle_verdict.kind} status={report.status}")
        for name in report.mismatches:
            print(f"  failed: {name}")
    return EXIT_OK if not report.mismatches else EXIT_FAIL


def cmd_verify_lemmas(args) -> int:
    if args.bound < 1:
        raise UsageError("--bound must be positive")
    dom = LemmaDomain(args.bound, args.bound)
    lemma1 = all(lemma1_check(x, y) for x, y in dom.points())
    found = lemma2_solution_set(dom)
    expected = {s for s in LEMMA2_SOLUTIONS if s[0] <= args.bound and s[1] <= args.bound}
    lemma2 = found == expected
    trin = trinomial_implication_check(dom)
    if args.json:
        print(json.dumps({"bound": args.bound, "lemma1": lemma1,
                          "lemma2": {"ok": lemma2, "solutions": sorted(map(list, found))},
                          "trinomial": trin}))
    else:
        sol = "{" + ",".join(f"({x},{y})" for x, y in sorted(found)) + "}"
        word = {True: "OK", False: "FAIL"}
        print(f"lemma1: {word[lemma1]} lemma2: {sol} {word[lemma2]} trinomial: {word[trin]}")
    return EXIT_OK if lemma1 and lemma2 and trin else EXIT_FAIL


def cmd_gen_bisplit(args) -> int:
    graphs = list(gen_bisplit_graphs(args.n))
    if args.graph6:
        dump_graph6(graphs, args.graph6)
        print(f"n={args.n} graphs={len(graphs)} written to {args.graph6}")
    else:
        for g in graphs:
            print(to_graph6(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bisplit-dbe",
                                     description="Lines in graph metrics and bisplit graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lines-count", help="count distinct lines")
    p.add_argument("file")
    p.set_defaults(func=cmd_lines_count)

    p = sub.add_parser("lines-show", help="list distinct lines")
    p.add_argument("file")
    p.add_argument("--pairs", action="store_true", help="show the generating pairs of each line")
    p.set_defaults(func=cmd_lines_show)

    p = sub.add_parser("bisplit-check", help="find a maximum bisplit partition")
    p.add_argument("file")
    p.add_argument("--refined", action="store_true")
    p.set_defaults(func=cmd_bisplit_check)

    p = sub.add_parser("verify-theorem", help="sweep all connected bisplit graphs")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--full-proof", action="store_true", help="replay the case analysis on every graph")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", help="also write the JSON report to this path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("verify-proof", help="replay the case analysis on one graph")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_proof)

    p = sub.add_parser("verify-lemmas", help="check the counting lemmas on a grid")
    p.add_argument("--bound", type=int, default=100)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("gen-bisplit", help="list connected bisplit graphs in graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--graph6", metavar="OUT")
    p.set_defaults(func=cmd_gen_bisplit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError) as exc:
        print(f"bisplit-dbe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
