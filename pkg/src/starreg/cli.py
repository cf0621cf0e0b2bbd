"""Command line: ``starreg verify --suite NAME [...]``.

Exit status is 0 when every instance passes, 1 when any fails or errors and 2
for a bad selection of flags.
"""

from __future__ import annotations

import argparse
import sys

from .catalog import CatalogError
from .fplinalg import is_prime
from .report import emit_report
from .star import IdealContext
from .suites import DEFAULT_PRIMES, Options, Suite, SuiteError, default_catalog, run_suite


def _primes(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated list of integers: {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("no primes given")
    bad = [p for p in out if not is_prime(p)]
    if bad:
        raise argparse.ArgumentTypeError(f"not prime: {bad}")
    return out


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="starreg", description="Verify isomorphism theorems on finite algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run one theorem suite over a catalog")
    v.add_argument("--suite", required=True, choices=[s.value for s in Suite])
    v.add_argument("--context", default="pointed", choices=[c.value for c in IdealContext])
    v.add_argument("--groups-max", type=_positive, default=None, help="largest group order (default 12, 8 for hopf suites)")
    v.add_argument("--rings-max", type=_positive, default=None, help="largest ring size (default 12)")
    v.add_argument("--primes", type=_primes, default=DEFAULT_PRIMES, help="field primes for hopf suites, e.g. 2,3,5")
    v.add_argument("--no-dedup", action="store_true", help="keep isomorphic catalog duplicates")
    v.add_argument("--report", default=None, help="write the report to this path")
    v.add_argument("--format", default="json", choices=["json", "csv"])
    v.add_argument("--jobs", type=_positive, default=1)
    v.add_argument("--quiet", action="store_true", help="print only the summary line")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        catalog = default_catalog(args.suite, args.context, args.groups_max, args.rings_max, not args.no_dedup)
        options = Options(primes=args.primes, jobs=args.jobs, trace=None if args.quiet else sys.stderr)
        report = run_suite(args.suite, args.context, catalog, options)
    except (SuiteError, CatalogError) as exc:
        print(f"starreg: error: {exc}", file=sys.stderr)
        return 2
    if args.report:
        try:
            emit_report(report, args.report, args.format)
        except OSError as exc:
            print(f"starreg: cannot write report: {exc}", file=sys.stderr)
            return 2
    s = report.summary
    print(
        f"{report.suite} [{report.context}, {report.catalog}]: "
        f"{s['pass']} pass, {s['fail']} fail, {s['error']} error, {s['total']} total"
    )
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
