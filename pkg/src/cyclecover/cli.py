"""Command line: cover, verify, oracle, gen, corpus.

Exit status 0 on success, 1 when a cover fails validation, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import generators as gen
from .corpus import CorpusSpec, cover_document, run_corpus, run_cover, summary_table
from .cover.core import CycleCover
from .errors import (CycleCoverError, GraphFormatError, Infeasible, InvalidInput, InvalidParameter,
                     NotBridgeless, TooLarge)
from .oracle import shortest_cover, shortest_cover_bruteforce, shortest_cover_milp, verify_cover
from .textformat import dumps, read_graph

INPUT_ERRORS = (GraphFormatError, InvalidInput, InvalidParameter, NotBridgeless, Infeasible, TooLarge,
                OSError, json.JSONDecodeError, KeyError, ValueError)


def _cmd_cover(a) -> int:
    g = read_graph(a.input)
    report = run_cover(g, a.method)
    doc = cover_document(report, a.graph_id or Path(a.input).stem)
    text = json.dumps(doc, indent=1)
    if a.out:
        Path(a.out).write_text(text + "\n")
    else:
        print(text)
    check = verify_cover(g, report.cover)
    b = report.bound
    within = b.denominator * check.length <= b.numerator * report.m
    print(f"method {report.construction}, length {check.length}, m {report.m}, bound {b}, "
          f"length/m {Fraction(check.length, report.m or 1)}, won {report.won}", file=sys.stderr)
    return 0 if check.ok and within else 1


def _cmd_verify(a) -> int:
    g = read_graph(a.input)
    doc = json.loads(Path(a.cover).read_text())
    cycles = [frozenset(c) for c in doc["cycles"]]
    cover = CycleCover(cycles, int(doc["total_length"]))
    check = verify_cover(g, cover)
    problems = list(check.problems)
    m = g.total_weight()
    if int(doc.get("m", m)) != m:
        problems.append({"kind": "m_mismatch", "stored": doc["m"], "actual": m})
    bound = doc.get("bound")
    if bound and int(bound["den"]) * check.length > int(bound["num"]) * m:
        problems.append({"kind": "over_bound", "length": check.length, "bound": f"{bound['num']}/{bound['den']}"})
    for p in problems:
        print(json.dumps(p), file=sys.stderr)
    print("valid" if not problems else f"invalid: {len(problems)} problem(s)")
    return 0 if not problems else 1


def _cmd_oracle(a) -> int:
    g = read_graph(a.input)
    solver = {"auto": shortest_cover, "brute": shortest_cover_bruteforce, "milp": shortest_cover_milp}[a.solver]
    cover = solver(g, a.max_cycles)
    print(json.dumps({"optimum": cover.total_length, "cycles": [sorted(c) for c in cover.cycles]}))
    return 0


def _cmd_gen(a) -> int:
    k = a.kind
    if k == "named":
        if a.name not in gen.NAMED:
            raise InvalidParameter(f"unknown graph {a.name!r}; choose from {', '.join(gen.NAMED)}")
        g = gen.NAMED[a.name]()
    elif k == "cubic":
        g = gen.gen_cubic_bridgeless(a.n, a.seed)
    elif k == "pairing":
        g = gen.gen_cubic_pairing(a.n, a.seed)
    elif k == "mindeg3":
        g = gen.gen_mindeg3(a.n, a.m, a.seed)
    elif k == "planted":
        g = gen.gen_planted(a.n, a.m, a.seed)
    else:
        g = gen.gen_bridgeless(a.n, a.m, a.seed, a.max_degree)
    text = dumps(g)
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_corpus(a) -> int:
    rows = []
    for s in a.spec:
        rows += run_corpus(CorpusSpec.parse(s), a.method, None if a.no_oracle else a.oracle_max_dim, a.workers)
    rows.sort(key=lambda r: r.graph_id)
    sys.stdout.write(summary_table(rows))
    bad = [r for r in rows if not r.ok or (r.optimum is not None and r.optimum > r.length)]
    return 0 if not bad else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclecover", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cover", help="cover a graph by at most three cycles")
    c.add_argument("--input", required=True)
    c.add_argument("--method", default="auto", choices=["auto", "general", "cubic", "mindeg3"])
    c.add_argument("--out")
    c.add_argument("--graph-id", default="")
    c.set_defaults(func=_cmd_cover)

    v = sub.add_parser("verify", help="check a cover document against its graph")
    v.add_argument("--input", required=True)
    v.add_argument("--cover", required=True)
    v.set_defaults(func=_cmd_verify)

    o = sub.add_parser("oracle", help="exact shortest cover on a small graph")
    o.add_argument("--input", required=True)
    o.add_argument("--max-cycles", type=int, default=3, choices=[1, 2, 3])
    o.add_argument("--solver", default="auto", choices=["auto", "brute", "milp"])
    o.set_defaults(func=_cmd_oracle)

    gp = sub.add_parser("gen", help="write a generated graph")
    gp.add_argument("--kind", default="cubic", choices=["cubic", "pairing", "mindeg3", "planted", "general", "named"])
    gp.add_argument("--n", type=int, default=10)
    gp.add_argument("--m", type=int, default=0, help="edge target (mindeg3, planted) or extra edges (general)")
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--name", default="petersen")
    gp.add_argument("--max-degree", type=int, default=8)
    gp.add_argument("--out")
    gp.set_defaults(func=_cmd_gen)

    k = sub.add_parser("corpus", help="run a corpus and print the summary table")
    k.add_argument("--spec", action="append", required=True,
                   help="kind:key=value,... e.g. random-cubic:n=10,count=20,seed=1 (repeatable)")
    k.add_argument("--method", default="auto", choices=["auto", "general", "cubic", "mindeg3"])
    k.add_argument("--oracle-max-dim", type=int, default=12)
    k.add_argument("--no-oracle", action="store_true")
    k.add_argument("--workers", type=int, default=1)
    k.set_defaults(func=_cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CycleCoverError as exc:
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
