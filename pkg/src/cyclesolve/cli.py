"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import derangement_value
from .driver import PHASE_CHOICES, solve_instance
from .errors import SolverError, TooLarge
from .instances import gen_instance, load_example2, parse_matrix, render_matrix
from .oracle import held_karp_tsp, hungarian_ap


def _load(path: str):
    if path == "example2.mat" and not Path(path).exists():
        return load_example2()
    return parse_matrix(Path(path).read_text())


def _add_solve_flags(p: argparse.ArgumentParser):
    p.add_argument("--phases", choices=PHASE_CHOICES, default="123")
    p.add_argument("--trace", choices=("text", "json", "off"), default="off")
    p.add_argument("--format", choices=("text", "json"), default="text",
                   help="report format on stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--keep-equal-paths", action="store_true",
                   help="record every equal-valued predecessor in path tables")
    p.add_argument("--budget-cap", type=int, default=3, metavar="X",
                   help="patching budget cap as a multiple of the mean reduced row value")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings in the report")


def _emit_trace(report, mode: str):
    if mode == "off":
        return
    for ev in report.events:
        if mode == "json":
            print(json.dumps(ev, sort_keys=True))
        else:
            parts = [f"{k}={v}" for k, v in ev.items() if k != "event"]
            print(f"[{ev['event']}] " + " ".join(parts))


def _run_solve(M, args) -> "SolveReport":
    return solve_instance(
        M,
        phases=args.phases,
        seed=args.seed,
        restarts=args.restarts,
        keep_equal=args.keep_equal_paths,
        budget_cap_mult=args.budget_cap,
    )


def cmd_solve(args) -> int:
    M = _load(args.file)
    report = _run_solve(M, args)
    _emit_trace(report, args.trace)
    if args.format == "json":
        print(report.to_json(include_timings=args.timings))
    else:
        print(report.to_text(include_timings=args.timings), end="")
    return 0


def cmd_verify(args) -> int:
    M = _load(args.file)
    report = _run_solve(M, args)
    ok = True
    ap_oracle, _ = hungarian_ap(M)
    ap_ok = report.ap_value == ap_oracle
    ok &= ap_ok
    print(f"ap: solver={report.ap_value} oracle={ap_oracle} "
          f"{'OK' if ap_ok else 'MISMATCH'}")
    try:
        tsp_oracle, _ = held_karp_tsp(M)
    except TooLarge:
        print(f"tsp: solver={report.tour_value} oracle=skipped (n={M.n} too large)")
    else:
        tsp_ok = report.tour_value == tsp_oracle
        ok &= tsp_ok
        print(f"tsp: solver={report.tour_value} oracle={tsp_oracle} "
              f"{'OK' if tsp_ok else 'MISMATCH'}")
    print("solver == oracle" if ok else "verification mismatch")
    return 0 if ok else 1


def cmd_gen(args) -> int:
    M = gen_instance(args.n, args.max, args.seed)
    text = render_matrix(M)
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="")
    return 0


def cmd_replay_example2(args) -> int:
    M = load_example2()
    report = solve_instance(M, phases="123", seed=0)
    _emit_trace(report, "text")
    print(report.to_text(), end="")
    expected = (212, 213, "certified_optimal")
    got = (report.ap_value, report.tour_value, report.exactness)
    if got != expected:
        print(f"replay mismatch: expected {expected}, got {got}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclesolve",
        description="Assignment-problem and TSP solving by permutation-cycle search",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("file")
    _add_solve_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="solve and cross-check against exact oracles")
    p.add_argument("file")
    _add_solve_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("replay-example2", help="solve the bundled 20-vertex instance")
    p.set_defaults(func=cmd_replay_example2)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SolverError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
