"""Command-line entry point.

Results go to stdout as bare decimals or small tables; diagnostics go to
stderr and the log file. Exit status is 0 on success, 1 on a domain or
I/O error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd
import yaml

from bench.harness import BenchConfig, format_table, run_bench, write_report_csv
from cf_stats.distributions import bn1_cdf_table, emit_proba_dat, gauss_kuzmin_pmf
from cf_stats.file_funcs import write_histogram_csv
from cf_stats.monte_carlo import empirical_bn1, empirical_quotients
from cli.config import AppConfig, load_config
from logger.logger import build_logger
from ostrowski.cf_engine import cf_expand
from ostrowski.errors import OstrowskiError
from ostrowski.modular_ops import METHODS, THEOREM2, modinv, modmul, moddiv_trace
from ostrowski.number_systems import (
    Scale,
    eta_encode,
    format_digits,
    ostrowski_encode,
    theta_encode,
    validate_markovian,
)

KHINCHIN = 2.6854520010653062
GAUSS_KUZMIN_ROWS = 10


def parse_big_int(text: str) -> int:
    """Decimal or 0x-prefixed hex, optional sign, any size."""
    s = text.strip()
    sign = 1
    if s[:1] in ("+", "-"):
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    try:
        if s[:2].lower() == "0x":
            value = int(s[2:], 16)
        else:
            value = int(s, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    return sign * value


def parse_ctx(text: str) -> Tuple[int, int]:
    a, sep, d = text.partition("/")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected a/d, got {text!r}")
    return parse_big_int(a), parse_big_int(d)


def parse_bits(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated bit sizes, got {text!r}") from None


def _join(values: Sequence[int]) -> str:
    return ",".join(str(v) for v in values)


def cmd_cf(args: argparse.Namespace, config: AppConfig, logger: logging.Logger) -> None:
    ctx = cf_expand(args.a, args.d)
    print(f"n: {ctx.n}")
    print(f"k: {_join(ctx.k)}")
    print(f"p: {_join(ctx.p)}")
    print(f"q: {_join(ctx.q)}")
    print(f"theta': {_join(ctx.theta_p)}")
    print(f"eta': {_join(ctx.eta_sequence())}")
    print(f"gcd: {ctx.g}")
    print("convergents: " + ",".join(f"{p}/{q}" for p, q in zip(ctx.p, ctx.q)))


def cmd_modmul(args: argparse.Namespace, config: AppConfig, logger: logging.Logger) -> None:
    print(modmul(args.a, args.b, args.d, logger=logger))


def cmd_moddiv(args: argparse.Namespace, config: AppConfig, logger: logging.Logger) -> None:
    trace = moddiv_trace(args.a, args.b, args.d, method=args.method, logger=logger)
    print(trace.result)
    if args.verbose:
        if not trace.corrected:
            print("correction: none")
        elif trace.method == THEOREM2:
            print("correction: +d")
        else:
            print("correction: reduced mod d")


def cmd_inv(args: argparse.Namespace, config: AppConfig, logger: logging.Logger) -> None:
    print(modinv(args.a, args.d))


_ENCODERS: Dict[str, Callable] = {
    Scale.Q_SCALE.value: ostrowski_encode,
    Scale.THETA_SCALE.value: theta_encode,
    Scale.ETA_SCALE.value: eta_encode,
}


def cmd_decompose(args: argparse.Namespace, config: AppConfig, logger: logging.Logger) -> None:
    a, d = args.ctx
    ctx = cf_expand(a, d)
    ds = _ENCODERS[args.scale](args.N, ctx)
    print(format_digits(ds))
    print(f"markovian: {str(validate_markovian(ds, ctx)).lower()}")


def cmd_gauss_kuzmin(args: argparse.Namespace, config: AppConfig, logger: logging.Logger) -> None:
    gk = config.stats.gauss_kuzmin
    hist = empirical_quotients(
        bits=args.bits if args.bits is not None else gk.bits,
        samples=args.samples if args.samples is not None else gk.samples,
        seed=args.seed if args.seed is not None else config.stats.seed,
        workers=args.workers if args.workers is not None else config.stats.workers,
        max_bucket=gk.max_bucket,
        logger=logger,
    )
    rows = min(GAUSS_KUZMIN_ROWS, hist.max_bucket)
    df = pd.DataFrame({
        "k": list(range(1, rows + 1)),
        "empirical": [hist.pmf(k) for k in range(1, rows + 1)],
        "gauss_kuzmin": [gauss_kuzmin_pmf(k) for k in range(1, rows + 1)],
    })
    print(df.to_string(index=False, float_format=lambda v: f"{v:.6f}"))
    print(f"quotients: {hist.total}")
    print(f"geometric mean: {hist.geometric_mean:.6f} (Khinchin {KHINCHIN:.6f})")
    print(f"arithmetic mean: {hist.mean:.6f}")
    if args.csv:
        write_histogram_csv(hist, args.csv)
        logger.info("Wrote quotient histogram to %s", args.csv)


def cmd_bn1(args: argparse.Namespace, config: AppConfig, logger: logging.Logger) -> None:
    bn1 = config.stats.bn1
    kmax = args.kmax if args.kmax is not None else bn1.kmax
    closed = bn1_cdf_table(kmax)
    df = pd.DataFrame({"k": list(range(kmax + 1)), "closed_form": list(closed.cdf)})
    if args.empirical:
        empirical = empirical_bn1(
            N=args.N if args.N is not None else bn1.N,
            samples=args.samples if args.samples is not None else bn1.samples,
            seed=args.seed if args.seed is not None else config.stats.seed,
            kmax=kmax,
            workers=args.workers if args.workers is not None else config.stats.workers,
            logger=logger,
        )
        df["empirical"] = list(empirical.cdf)
        df["deviation"] = (df["empirical"] - df["closed_form"]).abs()
        logger.info("bn1 max deviation closed form vs empirical: %.6f", df["deviation"].max())
    print(df.to_string(index=False, float_format=lambda v: f"{v:.6f}"))
    if args.out:
        emit_proba_dat(kmax, args.out)
        logger.info("Wrote %s", args.out)


def cmd_bench(args: argparse.Namespace, config: AppConfig, logger: logging.Logger) -> None:
    base = config.bench
    bench_config = BenchConfig(
        bits=args.bits if args.bits is not None else list(base.bits),
        reps=args.reps if args.reps is not None else base.reps,
        seed=args.seed if args.seed is not None else base.seed,
        batches=args.batches if args.batches is not None else base.batches,
        subtractive=args.subtractive,
        subtraction_threshold=base.subtraction_threshold,
    )
    report = run_bench(bench_config, logger=logger)
    print(format_table(report))
    if args.csv:
        write_report_csv(report, args.csv)
        logger.info("Wrote bench report to %s", args.csv)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ostrowski",
        description="Modular multiplication and division through continued fractions",
    )
    parser.add_argument("--log-file", help="Log file (default from config or OSTROWSKI_LOG_PATH)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cf", help="Print the continued-fraction sequences of a/d")
    p.add_argument("a", type=parse_big_int)
    p.add_argument("d", type=parse_big_int)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("modmul", help="a*b mod d")
    p.add_argument("a", type=parse_big_int)
    p.add_argument("b", type=parse_big_int)
    p.add_argument("d", type=parse_big_int)
    p.set_defaults(func=cmd_modmul)

    p = sub.add_parser("moddiv", help="b/a mod d")
    p.add_argument("a", type=parse_big_int)
    p.add_argument("b", type=parse_big_int)
    p.add_argument("d", type=parse_big_int)
    p.add_argument("--method", choices=METHODS, default=THEOREM2)
    p.add_argument("--verbose", action="store_true", help="Report whether a correction fired")
    p.set_defaults(func=cmd_moddiv)

    p = sub.add_parser("inv", help="a^-1 mod d")
    p.add_argument("a", type=parse_big_int)
    p.add_argument("d", type=parse_big_int)
    p.set_defaults(func=cmd_inv)

    p = sub.add_parser("decompose", help="Digits of N in a scale bound to a/d")
    p.add_argument("N", type=parse_big_int)
    p.add_argument("--ctx", type=parse_ctx, required=True, help="a/d")
    p.add_argument("--scale", choices=list(_ENCODERS), default=Scale.Q_SCALE.value)
    p.set_defaults(func=cmd_decompose)

    stats = sub.add_parser("stats", help="Monte Carlo and closed-form statistics")
    stats_sub = stats.add_subparsers(dest="stats_command", required=True)

    p = stats_sub.add_parser("gauss-kuzmin", help="Partial quotient frequencies against Gauss-Kuzmin")
    p.add_argument("--bits", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--csv", help="Write the full histogram to this CSV")
    p.set_defaults(func=cmd_gauss_kuzmin)

    p = stats_sub.add_parser("bn1", help="Distribution of the overflow digit b_{n+1}")
    p.add_argument("--kmax", type=int)
    p.add_argument("--out", help="Write 'k cdf' lines (proba.dat) to this path")
    p.add_argument("--empirical", action="store_true", help="Also sample the distribution")
    p.add_argument("--N", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_bn1)

    p = sub.add_parser("bench", help="Time the modular operations")
    p.add_argument("--bits", type=parse_bits, help="Comma-separated bit sizes")
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--batches", type=int)
    p.add_argument("--subtractive", action="store_true", help="Quotients by bounded subtraction")
    p.add_argument("--csv", help="Write the report to this CSV")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        config = load_config()
        logger = build_logger(args.log_file or config.logging.path, config.logging.level)
    except (OSError, ValueError, yaml.YAMLError) as exc:
        # yaml parser messages span several lines
        print("error: " + " ".join(str(exc).split()), file=sys.stderr)
        return 1

    logger.info("Running %s", " ".join(argv if argv is not None else sys.argv[1:]))
    try:
        args.func(args, config, logger)
    except (OstrowskiError, OSError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
