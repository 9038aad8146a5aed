"""Command-line entry point: ``balanced-words <subcommand> ...``."""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import asymptotics, counting, farey, geometry, words
from ._rational import to_fraction
from .exceptions import DomainError, ResourceLimitError

WORKERS_ENV = "BALANCED_WORDS_WORKERS"


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _workers(args) -> int:
    if args.workers is not None:
        return args.workers
    return int(os.environ.get(WORKERS_ENV, "1"))


# ---------------------------------------------------------------------------


def cmd_count(args) -> int:
    n, t, u = args.n, args.t, args.u
    th = counting.Threshold(t, u)
    if args.method == "theorem":
        value = counting.count_B_theorem(n, th, _workers(args))
    elif args.method == "fast":
        value = counting.count_B_fast(n, th, _workers(args))
    elif args.method == "oracle":
        value = geometry.count_B_oracle(n, geometry.ParamRegion(th.u, th.t))
    else:
        if th.t != 1 or th.u != 1:
            raise DomainError("method 'classic' only counts the full square (t = u = 1)")
        value = counting.count_B_classic(n)
    print(value)
    return 0


def cmd_scan(args) -> int:
    table = counting.scan(args.n_max, counting.Threshold(args.t, args.u), _workers(args))
    _emit(table.to_json() + "\n" if args.format == "json" else table.to_csv(), args.out)
    return 0


def _verify_checks(n_max: int):
    """Yield ``(name, passed)`` for the cross-oracle identity suite."""
    reference = counting.Threshold(Fraction(7, 10), Fraction(59, 100))
    yield "theorem(n,1,1) == classic(n) == 1 + sum Phi(m)", all(
        counting.count_B_theorem(n, (1, 1)) == counting.count_B_classic(n)
        == 1 + sum(farey.totient_summatory(m) for m in range(1, n + 1))
        for n in range(1, n_max + 1))
    yield "|balanced words of length n| == classic(n)", all(
        len(words.enumerate_balanced(n)) == counting.count_B_classic(n)
        for n in range(1, min(n_max, 18) + 1))
    grid = [counting.Threshold(t, u) for t in (Fraction(1, 3), Fraction(2, 3), 1)
            for u in (Fraction(1, 2), 1)] + [reference]
    yield "oracle == theorem == fast on a threshold grid", all(
        geometry.count_B_oracle(n, geometry.ParamRegion(th.u, th.t))
        == counting.count_B_theorem(n, th) == counting.count_B_fast(n, th)
        for n in range(1, min(n_max, geometry.ORACLE_MAX_LENGTH) + 1) for th in grid)
    yield "fast == theorem at the reference thresholds (7/10, 59/100)", (
        counting.count_B_fast(n_max, reference) == counting.count_B_theorem(n_max, reference))
    yield "theorem A column == direct pair count", (
        counting.theorem_A_column(n_max, reference).tolist()
        == [counting.count_A_naive(m, reference) for m in range(1, n_max + 1)])
    slopes = [Fraction(k, 7) for k in range(1, 7)] + [Fraction(1, 2), Fraction(9, 10)]
    yield "Moebius floor-sum A(m,t,1) == direct pair count", all(
        counting.count_A_fast_u1(m, t) == counting.count_A_naive(m, (t, 1))
        for m in range(1, n_max + 1) for t in slopes)
    yield "|Farey(m)| == Phi(m)", all(
        len(farey.farey_sequence(m)) == farey.totient_summatory(m) for m in range(1, n_max + 1))
    yield "Farey exponential sum == Mertens", all(
        abs(z - M) < 1e-6 * farey.totient_summatory(m)
        for m, z, M in asymptotics.farey_exponential_series(n_max))
    t = Fraction(2, 7)
    yield "B(n,t,1) == 1 - t + n + t B(n,1,1) - sum mu(k)<bt>", all(
        counting.count_B_theorem(n, (t, 1))
        == 1 - t + n + t * counting.count_B_classic(n) - asymptotics.mu_frac_sum(n, t)
        for n in range(1, n_max + 1))


def cmd_verify(args) -> int:
    failed = 0
    for name, passed in _verify_checks(args.n_max):
        print(f"{'PASS' if passed else 'FAIL'}  {name}")
        failed += not passed
    return 1 if failed else 0


def cmd_farey(args) -> int:
    _emit(farey.farey_sequence(args.m).to_csv(), args.out)
    return 0


def cmd_franel(args) -> int:
    _emit(asymptotics.franel_csv(args.m_max), args.out)
    return 0


def cmd_expsum(args) -> int:
    _emit(asymptotics.expsum_csv(args.m_max), args.out)
    return 0


def cmd_gcdsum(args) -> int:
    reports = [asymptotics.gcd_box_sum(2 ** k, 2 ** k)[1] for k in range(0, args.k_max + 1)]
    _emit(asymptotics.error_reports_csv(reports), args.out)
    return 0


def cmd_errors(args) -> int:
    reports = asymptotics.error_B11_series(args.n_max, args.exponent)
    _emit(asymptotics.error_reports_csv(reports), args.out)
    return 0


def cmd_partition(args) -> int:
    region = geometry.ParamRegion(args.u, args.t)
    _emit(geometry.partition_svg(args.m, region), args.out)
    return 0


def cmd_systems(args) -> int:
    _emit(geometry.systems_json(words.enumerate_balanced(args.n)) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balanced-words",
        description="Exact counts of balanced words in a slope/intercept box, "
                    "with cross-checks and asymptotic diagnostics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def thresholds(p):
        p.add_argument("--t", type=_rational, default=Fraction(1),
                       help="slope threshold, decimal or p/q (default 1)")
        p.add_argument("--u", type=_rational, default=Fraction(1),
                       help="intercept threshold, decimal or p/q (default 1)")

    def output(p):
        p.add_argument("--out", help="output file (default stdout)")

    def workers(p):
        p.add_argument("--workers", type=_positive,
                       help=f"worker processes (default ${WORKERS_ENV} or 1)")

    p = sub.add_parser("count", help="print B(n, t, u)")
    p.add_argument("--n", type=_positive, required=True)
    thresholds(p)
    p.add_argument("--method", choices=["theorem", "fast", "oracle", "classic"], default="fast")
    workers(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("scan", help="per-m table of A, B, main term, error")
    p.add_argument("--n-max", type=_positive, required=True)
    thresholds(p)
    output(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    workers(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run the cross-oracle identity suite")
    p.add_argument("--n-max", type=_positive, default=10)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("farey", help="Farey sequence as CSV")
    p.add_argument("--m", type=_positive, required=True)
    output(p)
    p.set_defaults(func=cmd_farey)

    p = sub.add_parser("franel", help="exact Franel integrals")
    p.add_argument("--m-max", type=_positive, required=True)
    output(p)
    p.set_defaults(func=cmd_franel)

    p = sub.add_parser("expsum", help="Farey exponential sums against Mertens")
    p.add_argument("--m-max", type=_positive, required=True)
    output(p)
    p.set_defaults(func=cmd_expsum)

    p = sub.add_parser("gcdsum", help="gcd box sums at H = M = 2^k")
    p.add_argument("--k-max", type=int, required=True)
    output(p)
    p.set_defaults(func=cmd_gcdsum)

    p = sub.add_parser("errors", help="B(n,1,1) error scan")
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--exponent", type=float, default=1.5,
                   help="normalize the error by n**exponent (default 1.5)")
    output(p)
    p.set_defaults(func=cmd_errors)

    p = sub.add_parser("partition", help="SVG of the parameter partition")
    p.add_argument("--m", type=_positive, required=True)
    thresholds(p)
    output(p)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("systems", help="JSON dump of the word constraint systems")
    p.add_argument("--n", type=_positive, required=True)
    output(p)
    p.set_defaults(func=cmd_systems)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "k_max", 0) < 0:
        print("error: --k-max must be nonnegative", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (DomainError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
