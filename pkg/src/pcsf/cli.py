"""``pcsf`` command line: solve, exact, verify, gen, ratio-test.

Exit codes: 0 success, 1 infeasible or violation, 2 usage or parse error,
3 oracle limit.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .core import PcsfError
from .formats import format_instance, format_solution, parse_instance, parse_solution
from .harness import generate_instance, run_ratio_test
from .ipcsf import IterationRecord, ipcsf_solve
from .oracle import OracleLimitError, exact_solve, verify_solution
from .pcsf3 import GrowthTrace, pcsf3_solve
from .rational import format_rat

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


def _pairs_text(pairs) -> str:
    return ",".join(f"{i + 1}-{j + 1}" for i, j in sorted(pairs)) or "-"


def record_line(rec: IterationRecord) -> str:
    cost2 = "-" if rec.cost2 is None else format_rat(rec.cost2)
    return f"record {rec.depth} q1 {_pairs_text(rec.q1)} cost1 {format_rat(rec.cost1)} cost2 {cost2} chosen {rec.chosen}"


def trace_text(levels: Sequence[GrowthTrace], records: Sequence[IterationRecord] = ()) -> str:
    out = []
    for depth, trace in enumerate(levels):
        out.append(f"level {depth}")
        out.extend(trace.to_lines())
    out.extend(record_line(r) for r in records)
    return "\n".join(out) + "\n"


def read_trace_levels(text: str) -> list[GrowthTrace]:
    """Split a ``--trace`` file back into one GrowthTrace per level."""
    chunks: list[list[str]] = []
    for line in text.splitlines():
        word = line.split()[:1]
        if word == ["level"]:
            chunks.append([])
        elif word and word != ["record"]:
            if not chunks:
                chunks.append([])
            chunks[-1].append(line)
    return [GrowthTrace.from_lines(c) for c in chunks]


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    if args.algorithm == "pcsf3":
        res = pcsf3_solve(inst)
        sol, levels, records = res.solution, [res.trace], []
    else:
        sol, records = ipcsf_solve(inst)
        levels = [r.result.trace for r in records]
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(trace_text(levels, records))
    sys.stdout.write(format_solution(inst, sol))
    problems = verify_solution(inst, sol)
    for p in problems:
        print(f"violation: {p}", file=sys.stderr)
    return EXIT_VIOLATION if problems else EXIT_OK


def cmd_exact(args) -> int:
    inst = parse_instance(_read(args.instance))
    sys.stdout.write(format_solution(inst, exact_solve(inst)))
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.instance))
    sol = parse_solution(_read(args.solution), inst)
    problems = verify_solution(inst, sol)
    for p in problems:
        print(f"violation: {p}")
    if not problems:
        print("ok")
    return EXIT_VIOLATION if problems else EXIT_OK


def cmd_gen(args) -> int:
    inst = generate_instance(args.nodes, args.edges, args.pairs, args.max_cost, args.max_penalty, args.seed)
    sys.stdout.write(format_instance(inst))
    return EXIT_OK


def cmd_ratio_test(args) -> int:
    report = run_ratio_test(args.trials, args.max_nodes, args.seed)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcsf", description="Prize-collecting Steiner forest solver.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="approximate solution of an instance file")
    p.add_argument("instance")
    p.add_argument("--algorithm", choices=("ipcsf", "pcsf3"), default="ipcsf")
    p.add_argument("--trace", metavar="FILE", help="write the growth events to FILE")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="optimal solution by enumeration (small instances)")
    p.add_argument("instance")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a random instance to stdout")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--pairs", type=int, required=True)
    p.add_argument("--max-cost", type=int, required=True)
    p.add_argument("--max-penalty", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("ratio-test", help="compare against the exact optimum on random instances")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--max-nodes", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_ratio_test)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OracleLimitError as exc:
        print(f"pcsf: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (OSError, ValueError) as exc:  # ParseError included
        print(f"pcsf: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PcsfError as exc:
        print(f"pcsf: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
