"""Command-line front end.

Subcommands: bounds, region, convert, verify, facets.  Every command is
deterministic given its arguments (and seed where applicable).  Exit codes:
0 success, 2 argument error, 3 infeasible input, 4 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from fractions import Fraction

from .bounds import sharp_bounds
from .exact import format_sig, sqrt_rational
from .geometry import (
    BRUTE_FORCE_MAX_N,
    brute_force_facets,
    lower_facets,
    upper_facets,
)
from .moments import (
    BahadurParams,
    DeFinettiParams,
    FactorialMoments,
    InfeasibleMomentsError,
    MomentTriple,
    RawMoments,
    bahadur_to_definetti,
    definetti_to_bahadur,
    definetti_to_factorial,
    denormalize,
    factorial_to_definetti,
    factorial_to_raw,
    normalize,
    raw_to_factorial,
)
from .oracle import compare_reports, lp_bounds, random_distribution
from .region import feasible_interval, rows_to_csv, sweep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_VERIFY = 4

WORKERS_ENV = "MOMENTBOUNDS_WORKERS"


def _rational(text: str) -> Fraction:
    """Accepts p/q and decimal literals; both parse exactly."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momentbounds",
        description=(
            "Sharp bounds on P(S >= k) for a count variable on {0,..,n} "
            "with three known moments."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser(
        "bounds", help="bounds and extremal distributions for one query"
    )
    p_bounds.add_argument("--n", type=int, required=True)
    p_bounds.add_argument("--k", type=int, required=True)
    query = p_bounds.add_mutually_exclusive_group(required=True)
    query.add_argument("--mu", nargs=3, type=_rational, metavar=("MU1", "MU2", "MU3"))
    query.add_argument("--raw", nargs=3, type=_rational, metavar=("M1", "M2", "M3"))
    query.add_argument("--w", nargs=3, type=_rational, metavar=("W1", "W2", "W3"))
    query.add_argument(
        "--bahadur", nargs=3, type=_rational, metavar=("W1", "RHO2", "RHO3")
    )

    p_region = sub.add_parser(
        "region", help="sweep w1 with fixed correlations, CSV output"
    )
    p_region.add_argument("--n", type=int, required=True)
    p_region.add_argument("--k", type=int, required=True)
    p_region.add_argument("--rho2", type=_rational, default=None)
    p_region.add_argument("--rho3", type=_rational, default=None)
    p_region.add_argument("--steps", type=int, default=101)
    p_region.add_argument(
        "--csv", default="-", help="output path, - for stdout (default)"
    )
    p_region.add_argument(
        "--plot", default=None, help="also render the band to this image file"
    )

    p_convert = sub.add_parser(
        "convert", help="translate between moment parameterizations"
    )
    names = ["raw", "normalized", "factorial", "definetti", "bahadur"]
    p_convert.add_argument("--n", type=int, required=True)
    p_convert.add_argument("--from", dest="source", choices=names, required=True)
    p_convert.add_argument("--to", dest="target", choices=names, required=True)
    p_convert.add_argument(
        "--values", nargs=3, type=_rational, required=True, metavar=("A", "B", "C")
    )

    p_verify = sub.add_parser(
        "verify", help="closed form vs exhaustive oracle over a random sweep"
    )
    p_verify.add_argument("--n-min", type=int, default=3)
    p_verify.add_argument("--n-max", type=int, default=10)
    p_verify.add_argument(
        "--k", type=int, default=None, help="single k (default: every k)"
    )
    p_verify.add_argument("--cases", type=int, default=5)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument(
        "--inject-fault", action="store_true", help=argparse.SUPPRESS
    )

    p_facets = sub.add_parser(
        "facets", help="upper/lower facet families of the tail prismatoid"
    )
    p_facets.add_argument("--n", type=int, required=True)
    p_facets.add_argument("--k", type=int, required=True)
    p_facets.add_argument(
        "--brute",
        action="store_true",
        help="cross-check against brute-force enumeration",
    )
    return parser


def _query_from_args(args):
    if args.mu is not None:
        return MomentTriple(n=args.n, mu1=args.mu[0], mu2=args.mu[1], mu3=args.mu[2])
    if args.raw is not None:
        return RawMoments(n=args.n, values=tuple(args.raw))
    if args.w is not None:
        return DeFinettiParams(n=args.n, w=tuple(args.w))
    return BahadurParams(
        n=args.n, w1=args.bahadur[0], rho2=args.bahadur[1], rho3=args.bahadur[2]
    )


def cmd_bounds(args) -> int:
    result = sharp_bounds(_query_from_args(args), args.k)
    print(result.to_text())
    return EXIT_OK


def cmd_region(args) -> int:
    if args.steps < 2:
        raise ValueError("--steps must be at least 2")
    if args.rho3 is not None and args.rho2 is None:
        raise ValueError("--rho3 requires --rho2")
    rows = sweep(args.n, args.k, args.rho2, args.rho3, steps=args.steps)
    interval = feasible_interval(args.n, args.rho2, args.rho3)
    csv = rows_to_csv(rows)
    to_stdout = args.csv == "-"
    if to_stdout:
        sys.stdout.write(csv)
    else:
        with open(args.csv, "w", newline="") as fh:
            fh.write(csv)
    info = sys.stderr if to_stdout else sys.stdout
    if interval is None:
        print("feasible w1 interval: empty", file=info)
    else:
        lo, hi = interval
        print(
            f"feasible w1 interval: [{float(lo):.6f}, {float(hi):.6f}]",
            file=info,
        )
    if args.plot is not None:
        from .plotting import plot_region

        plot_region(rows, args.plot, args.n, args.k, interval)
        print(f"plot written to {args.plot}", file=info)
    return EXIT_OK


_CONVERT_FIELDS = {
    "raw": ("m1", "m2", "m3"),
    "normalized": ("mu1", "mu2", "mu3"),
    "factorial": ("f1", "f2", "f3"),
    "definetti": ("w1", "w2", "w3"),
    "bahadur": ("w1", "rho2", "rho3"),
}


def _to_factorial(source: str, n: int, values) -> tuple[FactorialMoments, bool]:
    """Parse source values into factorial moments; bool flags exactness."""
    if source == "raw":
        return raw_to_factorial(RawMoments(n=n, values=tuple(values))), True
    if source == "normalized":
        triple = MomentTriple(n=n, mu1=values[0], mu2=values[1], mu3=values[2])
        return raw_to_factorial(denormalize(triple)), True
    if source == "factorial":
        return FactorialMoments(n=n, values=tuple(values)), True
    if source == "definetti":
        return definetti_to_factorial(DeFinettiParams(n=n, w=tuple(values))), True
    params = BahadurParams(n=n, w1=values[0], rho2=values[1], rho3=values[2])
    _, exact = sqrt_rational(params.w1 * (1 - params.w1))
    return definetti_to_factorial(bahadur_to_definetti(params)), exact


def cmd_convert(args) -> int:
    fm, exact = _to_factorial(args.source, args.n, args.values)
    if args.target == "raw":
        out = factorial_to_raw(fm).values
    elif args.target == "normalized":
        out = normalize(factorial_to_raw(fm)).coords
    elif args.target == "factorial":
        out = fm.values
    elif args.target == "definetti":
        out = factorial_to_definetti(fm).w
    else:
        params = definetti_to_bahadur(factorial_to_definetti(fm))
        out = (params.w1, params.rho2, params.rho3)
        exact = exact and params.exact
    print(f"target = {args.target}")
    print(f"n = {args.n}")
    for name, value in zip(_CONVERT_FIELDS[args.target], out):
        print(f"{name} = {value} ~ {format_sig(value)}")
    print(f"exact = {'true' if exact else 'false'}")
    return EXIT_OK


def _verify_case(task) -> tuple[bool, str]:
    n, k, seed, inject = task
    dist = random_distribution(n, seed)
    closed = sharp_bounds(dist, k)
    if inject:
        closed = replace(closed, max=closed.max + Fraction(1, 1000))
    oracle = lp_bounds(closed.query, k)
    report = compare_reports(closed, oracle, k)
    return report.ok, report.to_text()


def cmd_verify(args) -> int:
    if args.n_min < 3 or args.n_max < args.n_min:
        raise ValueError("need 3 <= n-min <= n-max")
    tasks = []
    for n in range(args.n_min, args.n_max + 1):
        ks = [args.k] if args.k is not None else list(range(0, n + 1))
        for k in ks:
            if not 0 <= k <= n:
                raise ValueError(f"k={k} out of range for n={n}")
            for case in range(args.cases):
                tasks.append((n, k, args.seed + case, args.inject_fault))

    started = time.perf_counter()
    workers = int(os.environ.get(WORKERS_ENV, "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_verify_case, tasks, chunksize=8))
    else:
        outcomes = [_verify_case(t) for t in tasks]
    elapsed = time.perf_counter() - started

    failures = [text for ok, text in outcomes if not ok]
    print(
        f"checked {len(tasks)} cases in {elapsed:.2f}s: "
        f"{len(tasks) - len(failures)} passed, {len(failures)} failed"
    )
    if failures:
        print("first failure:")
        print(failures[0])
        return EXIT_VERIFY
    return EXIT_OK


def cmd_facets(args) -> int:
    n, k = args.n, args.k
    if n < 3:
        raise ValueError("facet listing needs n >= 3")
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    upper = upper_facets(k, n)
    lower = lower_facets(k, n)
    for side, facets in (("upper", upper), ("lower", lower)):
        print(f"{side}: {len(facets)} simplexes")
        present = {s.block for s in facets}
        for block in range(1, 5):
            if block not in present:
                print(f"  block {block}: empty")
        for simplex in facets:
            print(f"  {simplex.line()}")
    if not args.brute:
        return EXIT_OK
    if not 4 <= n <= BRUTE_FORCE_MAX_N:
        raise ValueError(
            f"--brute supports 4 <= n <= {BRUTE_FORCE_MAX_N}"
        )
    closed = {s.key() for s in upper} | {s.key() for s in lower}
    brute = {s.key() for s in brute_force_facets(k, n)}
    if closed == brute:
        print("brute-force cross-check: identical")
        return EXIT_OK
    print("brute-force cross-check: MISMATCH")
    for side, indices in sorted(brute - closed):
        print(f"  only-brute: {side} {' '.join(map(str, sorted(indices)))}")
    for side, indices in sorted(closed - brute):
        print(f"  only-closed: {side} {' '.join(map(str, sorted(indices)))}")
    return EXIT_VERIFY


_COMMANDS = {
    "bounds": cmd_bounds,
    "region": cmd_region,
    "convert": cmd_convert,
    "verify": cmd_verify,
    "facets": cmd_facets,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InfeasibleMomentsError as exc:
        print(f"infeasible moments: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
