"""Command line entry point: ``combnet <command> ...``.

Exit status is 0 on success, 1 when a verification or simulation fails and
2 for usage or parameter errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Sequence

from .analyze import gap_table, scalar_max_r, table_csv, table_text
from .network import NetworkSpec, read_network
from .solver import METHODS, iter_assignment_text, read_assignment, solve_network, vector_from_cover_code
from .subspace import alpha_cover_check, greedy_cover_search, paper51_code, read_certificate, write_certificate
from .verify import check_all, simulate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _int_range(text: str) -> list[int]:
    """``3``, ``2:6`` (inclusive) or ``1,2,5``."""
    try:
        if ":" in text:
            a, b = text.split(":", 1)
            return list(range(int(a), int(b) + 1))
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use N, A:B or A,B,C") from None


# -- commands ------------------------------------------------------------------------


def cmd_build(args) -> int:
    spec = read_network(_read(args.network))
    print(f"{spec.name()}: h={spec.h} r={spec.r} ell={spec.ell} eps={spec.eps} alpha={spec.alpha} s={spec.s}")
    print(f"receivers {spec.n_receivers}")
    print(f"classification {spec.classification}")
    return EXIT_OK


def cmd_solve(args) -> int:
    spec = read_network(_read(args.network))
    cover = read_certificate(_read(args.cover_file)) if args.cover_file else None
    a = solve_network(spec, args.method, cover)
    with open(args.out, "w") as fh:
        for chunk in iter_assignment_text(a):
            fh.write(chunk)
    print(f"{a.spec.name()} over GF({a.q}) t={a.t}: wrote {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    a = read_assignment(_read(args.assignment))
    report = check_all(a, sample=args.sample, seed=args.seed)
    print(report.summary())
    if args.lines:
        for line in report.lines():
            print(line)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_simulate(args) -> int:
    a = read_assignment(_read(args.assignment))
    rng = random.Random(args.seed)
    spec, bad = a.spec, 0
    for trial in range(args.trials):
        msgs = [[rng.randrange(a.q) for _ in range(a.t)] for _ in range(spec.h)]
        wrong = [d for d in simulate(a, msgs) if not d.ok]
        bad += len(wrong)
        for d in wrong[:5]:
            print(f"trial {trial}: receiver {d.receiver} {d.nodes} decoded {d.decoded}" +
                  (f" ({d.error})" if d.error else ""))
    total = args.trials * spec.n_receivers
    print(f"seed {args.seed}: {total - bad}/{total} decodes correct over {args.trials} trials")
    return EXIT_OK if bad == 0 else EXIT_FAIL


def cmd_search(args) -> int:
    code = greedy_cover_search(args.n, args.k, args.alpha, args.dim, args.q, args.strategy,
                               budget=args.budget, seed=args.seed)
    Path(args.out).write_text(write_certificate(code))
    status = "complete" if code.complete else "budget exhausted"
    print(f"{args.strategy} seed {args.seed}: {len(code)} subspaces ({status}, {code.evaluations} evaluations)"
          f" -> {args.out}")
    return EXIT_OK


def cmd_checkcover(args) -> int:
    code = read_certificate(_read(args.file))
    res = alpha_cover_check(code.members, code.alpha, code.dim)
    n = len(code)
    if res:
        print(f"cover {n}/{n} OK (alpha={code.alpha}, D={code.dim})")
        return EXIT_OK
    print(f"cover FAIL: members {res.violation} span dimension {res.dim} < {code.dim}")
    return EXIT_FAIL


def cmd_analyze(args) -> int:
    rows = gap_table(args.h_range, args.q, args.t_range)
    sys.stdout.write(table_csv(rows) if args.csv else table_text(rows))
    return EXIT_OK


def cmd_demo51(args) -> int:
    code = paper51_code()
    res = code.check()
    n = len(code)
    spec = NetworkSpec(3, n, ell=1, eps=1, alpha=3, q=2, t=2)
    a = vector_from_cover_code(spec, code, 2, 2)
    report = check_all(a)
    bound = scalar_max_r("(1,1)-N3", 4)
    cover = f"cover {n if res else 0}/{n} {'OK' if res else 'FAIL'}"
    recv = f"receivers {report.passed}/{report.total} {'OK' if report.ok else 'FAIL'}"
    print(f"{cover}, {recv}, scalar max r at q_s=4 is {bound}")
    return EXIT_OK if res and report.ok and n > bound else EXIT_FAIL


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="combnet", description="Network codes for generalized combination networks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build", help="validate and classify a network file")
    s.add_argument("--network", required=True)
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("solve", help="build an assignment for a network")
    s.add_argument("--network", required=True)
    s.add_argument("--method", required=True, choices=METHODS)
    s.add_argument("--cover-file")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="rank-check every receiver of an assignment")
    s.add_argument("--assignment", required=True)
    s.add_argument("--sample", type=int, help="check a seeded sample of this many receivers")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--lines", action="store_true", help="also print one line per receiver")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="send random messages and decode at every receiver")
    s.add_argument("--assignment", required=True)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("search", help="search for an alpha-cover subspace code")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--alpha", type=int, required=True)
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--strategy", choices=("greedy", "randomized", "exhaustive"), default="greedy")
    s.add_argument("--budget", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("checkcover", help="independently check a cover certificate")
    s.add_argument("--file", required=True)
    s.set_defaults(func=cmd_checkcover)

    s = sub.add_parser("analyze", help="vector/scalar field size gap table")
    s.add_argument("--h-range", type=_int_range, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--t-range", type=_int_range, required=True)
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("demo51", help="the 51-subspace code for three messages")
    s.set_defaults(func=cmd_demo51)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad usage
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
