"""Command-line interface.

Exit codes: 0 success, 1 falsified invariant, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter

from .core import (
    BallotSequence, ConsistencyError, ballot_to_ideal, catalan, closure,
    enumerate_ideals, format_ideal, format_partition, format_root,
    ideal_to_ballot, max_height, parse_ideal, partitions, valleys,
)
from .jordan import (
    PRIME, characteristic_sequences, gerstenhaber_element,
    gerstenhaber_partition, generic_orbit_partition, kreweras_partition,
)
from .moves import coarse_move_report, equivalence_classes, normalize_to_parabolic
from .stats import (
    antidiagonal_report, index_corank_check, joint_table, kreweras_number,
    n_lambda_table, narayana_check, tally,
)
from .uio import graph_invariants, indifference_graph, poset_from_ideal

EXIT_FALSIFIED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _emit_csv(rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerows(rows)


def _emit_json(obj, out):
    json.dump(obj, out, indent=2, sort_keys=False)
    out.write("\n")


def _text_table(rows, out):
    widths = [max(len(str(r[k])) for r in rows) for k in range(len(rows[0]))]
    for r in rows:
        out.write("  ".join(str(c).rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _ideal_arg(args) -> object:
    if args.rank is None:
        raise UsageError("an ideal literal needs --rank")
    try:
        return parse_ideal(args.ideal, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _rank_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise UsageError(f"bad rank range {text!r}; use N or N..M") from None
    if lo_i < 0 or hi_i < lo_i:
        raise UsageError(f"bad rank range {text!r}")
    return range(lo_i, hi_i + 1)


# subcommands

def cmd_enumerate(args, out):
    rows = []
    for k, I in enumerate(enumerate_ideals(args.n)):
        rows.append({"index": k, "ideal": format_ideal(I),
                     "ballot": ideal_to_ballot(I).bits,
                     "lambda": format_partition(gerstenhaber_partition(I)),
                     "valleys": len(I.roots)})
    if args.format == "json":
        _emit_json({"rank": args.n, "count": len(rows), "ideals": rows}, out)
    elif args.format == "csv":
        _emit_csv([list(rows[0])] + [list(r.values()) for r in rows], out)
    else:
        for r in rows:
            out.write(f"{r['index']:>6}  {r['ballot']}  {r['lambda']:<14} {r['ideal']}\n")
    return 0


def cmd_classes(args, out):
    table = equivalence_classes(args.n, args.moves, args.jobs)
    rows = [{"class": k, "size": len(c),
             "label": format_partition(c.label) if c.label is not None else "",
             "representative": format_ideal(c.representative)}
            for k, c in enumerate(table.classes)]
    report = coarse_move_report(table) if args.moves != "basic" else None
    if args.format == "json":
        obj = {"rank": args.n, "moves": args.moves, "count": len(rows), "classes": rows}
        if report:
            obj["report"] = report
        _emit_json(obj, out)
    elif args.format == "csv":
        _emit_csv([["class", "size", "label", "representative"]]
                  + [list(r.values()) for r in rows], out)
    else:
        out.write(f"A_{args.n}: {len(rows)} {args.moves}-move classes over "
                  f"{catalan(args.n + 1)} ideals\n")
        for r in rows:
            out.write(f"{r['class']:>4}  size {r['size']:>6}  {r['label']:<14} {r['representative']}\n")
        if report:
            out.write(f"{report['statistic']} constant on components: "
                      f"{report['statistic_constant_on_components']}; "
                      f"components equal fibers: {report['components_equal_fibers']} "
                      f"({report['components']} components, {report['fibers']} values)\n")
    return 0


def cmd_orbit(args, out):
    I = _ideal_arg(args)
    lam = gerstenhaber_partition(I)
    seqs = characteristic_sequences(I)
    oracle = generic_orbit_partition(I, args.trials, args.seed, args.prime)
    x = gerstenhaber_element(I)
    obj = {"rank": I.n, "ideal": format_ideal(I),
           "lambda": format_partition(lam),
           "sequences": [list(s) for s in seqs.sequences],
           "element": [list(k) for k in sorted(x.entries)],
           "oracle": format_partition(oracle),
           "oracle_agrees": oracle == lam,
           "kreweras": format_partition(kreweras_partition(I)),
           "valleys": len(I.roots), "dim": I.dim()}
    if args.format == "json":
        _emit_json(obj, out)
    elif args.format == "csv":
        _emit_csv([["ideal", "lambda", "sequences", "oracle", "kreweras"],
                   [obj["ideal"], obj["lambda"], str(seqs), obj["oracle"], obj["kreweras"]]], out)
    else:
        out.write(f"ideal      {obj['ideal']}  (A_{I.n}, dim {obj['dim']})\n")
        out.write(f"lambda     {obj['lambda']}\n")
        out.write(f"sequences  {seqs}\n")
        out.write("element    " + " + ".join(f"t{a},{b}" for a, b in sorted(x.entries)) + "\n")
        out.write(f"oracle     {obj['oracle']} ({args.trials} trials, seed {args.seed}): "
                  f"{'agrees' if oracle == lam else 'DISAGREES'}\n")
        out.write(f"kreweras   {obj['kreweras']}\n")
    return 0 if oracle == lam else EXIT_FALSIFIED


def cmd_normalize(args, out):
    I = _ideal_arg(args)
    P, moves = normalize_to_parabolic(I)
    cuts = [r.i for r in P.roots]
    if args.format == "json":
        _emit_json({"source": format_ideal(I), "target": format_ideal(P),
                    "cuts": cuts, "moves": [str(m) for m in moves]}, out)
    elif args.format == "csv":
        _emit_csv([["kind", "side", "root", "direction"]]
                  + [[m.kind, m.side, format_root(m.root), m.direction] for m in moves], out)
    else:
        out.write(f"# {format_ideal(I)} -> {format_ideal(P)}\n")
        for m in moves:
            out.write(f"{m}\n")
    return 0


def cmd_convert(args, out):
    text = args.ideal.strip()
    if text and set(text) <= {"0", "1"}:
        try:
            b = BallotSequence(text)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.rank is not None and args.rank != b.rank:
            raise UsageError(f"ballot word has rank {b.rank}, not {args.rank}")
        I = ballot_to_ideal(b)
    else:
        I = _ideal_arg(args)
        b = ideal_to_ballot(I)
    obj = {"rank": I.n, "ideal": format_ideal(I), "ballot": b.bits,
           "heights": b.heights(), "valleys": valleys(b), "max_height": max_height(b),
           "roots": [format_root(r) for r in sorted(closure(I))]}
    if args.format == "json":
        _emit_json(obj, out)
    elif args.format == "csv":
        _emit_csv([["rank", "ideal", "ballot", "valleys", "max_height"],
                   [I.n, obj["ideal"], b.bits, obj["valleys"], obj["max_height"]]], out)
    else:
        out.write(f"ideal       {obj['ideal']}  (A_{I.n})\n")
        out.write(f"ballot      {b.bits}\n")
        out.write(f"heights     {' '.join(map(str, obj['heights']))}\n")
        out.write(f"valleys     {obj['valleys']}\n")
        out.write(f"max height  {obj['max_height']}\n")
    return 0


def table1_rows(ranks) -> list[list]:
    rows = [["rank", "lambda", "N_lambda"]]
    for n in ranks:
        t = n_lambda_table(n)
        for p, c in t.rows():
            rows.append([n, format_partition(p), c])
        rows.append([n, "sum", sum(t.counts.values())])
    return rows


def cmd_table1(args, out):
    ranks = _rank_range(args.ranks)
    if args.format == "csv":
        _emit_csv(table1_rows(ranks), out)
        return 0
    tables = {n: n_lambda_table(n, args.jobs) for n in ranks}
    if args.format == "json":
        _emit_json({str(n): {format_partition(p): c for p, c in t.rows()}
                    for n, t in tables.items()}, out)
    else:
        for n, t in tables.items():
            out.write(f"A_{n}\n")
            _text_table([[format_partition(p), c] for p, c in t.rows()], out)
    return 0


def table2_rows(n: int, stats=None) -> list[list]:
    jt = joint_table(n, stats=stats)
    head = ["lambda_1/m_I", *range(n, -1, -1), "sum"]
    rows = [head]
    for r, (cells, total) in enumerate(zip(jt.matrix(), jt.row_sums()), 1):
        rows.append([r, *cells, total])
    rows.append(["sum", *jt.column_sums(), sum(jt.row_sums())])
    return rows


def _table2_comment(n: int) -> str:
    cols = ",".join(str(k) for k in range(n + 1))
    return f"# dual reading: rows (lambda_I*)_1, columns m_I = {cols}\n"


def cmd_table2(args, out):
    stats = tally(args.n, args.jobs)
    rows = table2_rows(args.n, stats)
    if args.format == "csv":
        out.write(_table2_comment(args.n))
        _emit_csv(rows, out)
    elif args.format == "json":
        jt = joint_table(args.n, stats=stats)
        _emit_json({
            "rank": args.n,
            "cells": {str(r): {str(s): jt.cell(r, s) for s in range(args.n, -1, -1)}
                      for r in range(1, args.n + 2)},
            "row_sums": {str(r): v for r, v in enumerate(jt.row_sums(), 1)},
            "column_sums": {str(s): v for s, v in zip(range(args.n, -1, -1), jt.column_sums())},
            "total": sum(jt.row_sums()),
        }, out)
    else:
        out.write(_table2_comment(args.n))
        _text_table(rows, out)
    return 0


def cmd_kreweras(args, out):
    stats = tally(args.n, args.jobs)
    rows = []
    ok = True
    for p in partitions(args.n + 1):
        counted = stats.by_kreweras.get(p, 0)
        formula = kreweras_number(p, args.n)
        ok &= counted == formula
        rows.append([format_partition(p), formula, counted])
    if args.format == "json":
        _emit_json({"rank": args.n, "kreweras": {r[0]: {"formula": r[1], "enumerated": r[2]}
                                                  for r in rows}}, out)
    elif args.format == "csv":
        _emit_csv([["lambda", "formula", "enumerated"], *rows], out)
    else:
        _text_table([["lambda", "formula", "enumerated"], *rows], out)
    return 0 if ok else EXIT_FALSIFIED


def cmd_poset(args, out):
    I = _ideal_arg(args)
    P = poset_from_ideal(I)
    G = indifference_graph(P)
    try:
        inv = graph_invariants(G)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lam = gerstenhaber_partition(I)
    obj = {"ideal": format_ideal(I), "lambda": format_partition(lam),
           "relations": [list(r) for r in sorted(P.relations)],
           "edges": [list(e) for e in sorted(G.edges)], **inv}
    if args.format == "json":
        _emit_json(obj, out)
    elif args.format == "csv":
        _emit_csv([["ideal", "lambda", "independence_number", "clique_number", "chromatic_number"],
                   [obj["ideal"], obj["lambda"], inv["independence_number"],
                    inv["clique_number"], inv["chromatic_number"]]], out)
    else:
        out.write(f"ideal        {obj['ideal']}  (A_{I.n})\n")
        out.write("relations    " + " ".join(f"{a}<{b}" for a, b in sorted(P.relations)) + "\n")
        out.write("edges        " + " ".join(f"{a}{b}" for a, b in sorted(G.edges)) + "\n")
        out.write(f"independence {inv['independence_number']}\n")
        out.write(f"clique       {inv['clique_number']}\n")
        out.write(f"chromatic    {inv['chromatic_number']}\n")
        out.write(f"lambda       {obj['lambda']}\n")
    return 0


def cmd_report(args, out):
    n = args.n
    stats = tally(n, args.jobs)
    status = 0
    obj = {"rank": n}
    try:
        obj["narayana"] = {str(k): v for k, v in narayana_check(n, stats).items()}
        obj["index_corank"] = {str(k): v for k, v in index_corank_check(n, stats).items()}
    except ConsistencyError as exc:
        obj["failure"] = str(exc)
        status = EXIT_FALSIFIED
    obj["antidiagonal"] = antidiagonal_report(n, joint_table(n, stats=stats))
    pairs = Counter({(format_partition(a), format_partition(b)): c
                     for (a, b), c in stats.by_pair.items()})
    obj["lambda_kreweras_pairs"] = [
        {"lambda": a, "kreweras": b, "count": c} for (a, b), c in sorted(pairs.items())]
    if args.format == "json":
        _emit_json(obj, out)
    elif args.format == "csv":
        _emit_csv([["lambda", "kreweras", "count"]]
                  + [[d["lambda"], d["kreweras"], d["count"]]
                     for d in obj["lambda_kreweras_pairs"]], out)
    else:
        if "failure" in obj:
            out.write(f"FAILED: {obj['failure']}\n")
        else:
            out.write("valleys    " + " ".join(f"{k}:{v}" for k, v in obj["narayana"].items())
                      + "  (Narayana numbers)\n")
            out.write("index      " + " ".join(f"{k}:{v}" for k, v in obj["index_corank"].items())
                      + "  (equal to corank counts)\n")
        out.write("anti-diagonal (lambda_1, m_I): observed vs binomial(n+m, n-m)\n")
        for d in obj["antidiagonal"]:
            out.write(f"  ({d['lambda_1']},{d['valleys']}) {d['observed']} {d['binomial']} "
                      f"{'match' if d['match'] else 'MISMATCH'}\n")
    return status


def cmd_verify(args, out):
    from .checks import run_checks
    results = run_checks(args.n, args.seed, args.trials, args.jobs, args.prime)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        _emit_json({"rank": args.n, "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail,
             "witness": repr(r.witness) if r.witness is not None else None}
            for r in results]}, out)
    else:
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name}\n")
            if not r.passed:
                out.write(f"      {r.detail}\n")
                if r.witness is not None:
                    w = format_ideal(r.witness) if hasattr(r.witness, "roots") else r.witness
                    out.write(f"      witness: {w}\n")
    return EXIT_FALSIFIED if failed else 0


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommands re-declare the global flags without defaults so that a flag
    # given before the subcommand is not overwritten
    def d(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=d("text"))
    common.add_argument("--seed", type=int, default=d(0), help="seed for random oracle trials")
    common.add_argument("--trials", type=int, default=d(5), help="oracle trials per ideal")
    common.add_argument("--jobs", type=int, default=d(1), help="worker processes")
    common.add_argument("--prime", type=int, default=d(PRIME), help="oracle field size")
    common.add_argument("--rank", type=int, default=d(None), help="rank n of A_n for ideal literals")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    parser = argparse.ArgumentParser(
        prog="adnil", parents=[_common(suppress=False)],
        description="Ad-nilpotent ideals of type A: moves, orbits and statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, func):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    add("enumerate", "list all ideals of A_n", cmd_enumerate).add_argument("n", type=int)
    p = add("classes", "move-equivalence classes", cmd_classes)
    p.add_argument("n", type=int)
    p.add_argument("--moves", choices=("basic", "inner", "outer"), default="basic")
    add("orbit", "Gerstenhaber partition and oracle", cmd_orbit).add_argument("ideal")
    add("normalize", "basic-move path to a parabolic", cmd_normalize).add_argument("ideal")
    add("convert", "ideal <-> ballot word", cmd_convert).add_argument("ideal", metavar="ideal|ballot")
    add("table1", "class sizes N_lambda for ranks N..M", cmd_table1).add_argument("ranks")
    add("table2", "joint (largest part, valleys) table", cmd_table2).add_argument("n", type=int)
    add("kreweras", "Kreweras numbers: formula vs enumeration", cmd_kreweras).add_argument("n", type=int)
    add("poset", "unit interval order and indifference graph", cmd_poset).add_argument("ideal")
    add("report", "Narayana, index/corank and anti-diagonal report", cmd_report).add_argument("n", type=int)
    add("verify", "run the invariant suite at rank n", cmd_verify).add_argument("n", type=int)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("n",):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            parser.error("rank must be non-negative")
    if args.trials < 1 or args.jobs < 1:
        parser.error("--trials and --jobs must be positive")
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.error(str(exc))


def run(argv=None) -> tuple[int, str]:
    """Run the CLI in-process; returns ``(exit status, output)``."""
    buf = io.StringIO()
    try:
        status = main(argv, buf)
    except SystemExit as exc:
        status = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return status, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
