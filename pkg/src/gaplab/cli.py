"""Command line front end.

Thin client over the library: census building and persistence, moment
tables, expansion coefficients, constants, and fits. Exit codes: 0 success,
2 usage, 3 I/O trouble, 4 domain or validation failure. All output is
deterministic for fixed inputs; timing chatter goes to stderr.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
import time
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

from .analysis import (
    EXPANSION_VARIANTS,
    expansion_coefficients,
    fit_dkn,
    fit_error_term,
)
from .census import build_census, export_census, import_census, load_series
from .moments import DEFAULT_PREDICTORS, PREDICTOR_IDS, moment_report
from .sieve import DEFAULT_SEGMENT_BITS
from .singular import TWIN_CONSTANT, bd_partial_sum, twin_prime_constant

DATA_DIR_ENV = "GAPLAB_DATA_DIR"

_POW_RE = re.compile(r"^2\^(\d+)$")
_RANGE_RE = re.compile(r"^pow2:(\d+)\.\.(\d+)$")


class _UsageError(Exception):
    pass


def parse_amount(text: str) -> int:
    """Integer amounts as 123, 2^26, or 1e7."""
    m = _POW_RE.match(text)
    if m:
        return 1 << int(m.group(1))
    try:
        return int(text)
    except ValueError:
        pass
    value = float(text)
    if not value.is_integer():
        raise ValueError(f"expected an integer amount, got {text!r}")
    return int(value)


def parse_checkpoints(text: str) -> list[int]:
    """Checkpoint exponent ranges written pow2:A..B (inclusive)."""
    m = _RANGE_RE.match(text)
    if not m:
        raise ValueError(f"checkpoint range must look like pow2:A..B, got {text!r}")
    a, b = int(m.group(1)), int(m.group(2))
    if a < 1 or a > b:
        raise ValueError(f"need 1 <= A <= B in pow2:A..B, got {text!r}")
    return list(range(a, b + 1))


def parse_k_list(text: str) -> list[float]:
    items = [part for part in text.split(",") if part.strip()]
    if not items:
        raise ValueError("empty k list")
    return [float(part) for part in items]


def parse_predictor_list(text: str) -> list[str]:
    items = [part.strip() for part in text.split(",") if part.strip()]
    if not items:
        raise ValueError("empty predictor list")
    for name in items:
        if name not in PREDICTOR_IDS:
            raise ValueError(f"unknown predictor {name!r}; known: {', '.join(PREDICTOR_IDS)}")
    return items


def round_half_away(value: float, digits: int) -> str:
    """Fixed-point decimal string with ties rounded away from zero."""
    quantum = Decimal(1).scaleb(-digits)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def _data_dir(flag_value: str | None, what: str) -> Path:
    if flag_value:
        return Path(flag_value)
    from_env = os.environ.get(DATA_DIR_ENV)
    if from_env:
        return Path(from_env)
    raise _UsageError(f"{what} not given and ${DATA_DIR_ENV} is unset")


def _fmt_k(k: float) -> str:
    return str(int(k)) if float(k).is_integer() else f"{k:g}"


def _fmt_exact(value) -> str:
    return str(value) if isinstance(value, int) else f"{value:.6f}"


def cmd_census(args: argparse.Namespace) -> int:
    out_dir = _data_dir(args.out, "--out")
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    series = build_census(
        args.limit, args.checkpoints, segment_bits=args.segment_bits, threads=args.threads
    )
    elapsed = time.perf_counter() - started
    for census in series:
        census.validate()
        path = out_dir / f"census_{census.x}.txt"
        export_census(census, path)
        print(
            f"x={census.x} pi={census.pi_x} p_last={census.p_last} "
            f"max_gap={census.max_gap} file={path}"
        )
    print(
        f"sieved to {args.limit} in {elapsed:.2f}s "
        f"({args.limit / max(elapsed, 1e-9):.3g} numbers/s)",
        file=sys.stderr,
    )
    return 0


def _collect_censuses(raw_paths: list[str] | None) -> list:
    if raw_paths:
        paths = [Path(p) for p in raw_paths]
    else:
        paths = [_data_dir(None, "--census")]
    censuses = []
    for p in paths:
        if p.is_dir():
            censuses.extend(import_census(f) for f in sorted(p.glob("*.txt")))
        else:
            censuses.append(import_census(p))
    if not censuses:
        raise FileNotFoundError(f"no census files found under {', '.join(map(str, paths))}")
    censuses.sort(key=lambda c: c.x)
    return censuses


def cmd_moments(args: argparse.Namespace) -> int:
    censuses = _collect_censuses(args.census)
    sep = "," if args.format == "csv" else "\t"
    header = ["x", "k", "exact"]
    for name in args.predictors:
        header += [f"pred_{name}", f"ratio_{name}"]
    print(sep.join(header))
    for census in censuses:
        for k in args.k:
            report = moment_report(census, k, args.predictors)
            row = [str(census.x), _fmt_k(k), _fmt_exact(report.exact)]
            for name in args.predictors:
                row.append(f"{report.predictions[name]:.6e}")
                row.append(round_half_away(report.ratios[name], args.digits))
            print(sep.join(row))
    return 0


def cmd_expand(args: argparse.Namespace) -> int:
    series = expansion_coefficients(args.variant, args.k, args.order)
    sep = "," if args.format == "csv" else "\t"
    print(sep.join(["n", "coefficient", "decimal"]))
    for n, c in enumerate(series.coeffs):
        print(sep.join([str(n), str(c), f"{float(c):.10g}"]))
    return 0


def cmd_constants(args: argparse.Namespace) -> int:
    if not args.c2 and args.bd is None:
        raise _UsageError("nothing to compute: pass --c2 and/or --bd N")
    if args.c2:
        result = twin_prime_constant(args.prime_limit)
        print(f"c2\t{result.value:.15f}")
        print(f"prime_limit\t{result.prime_limit}")
        print(f"tail_bound\t{result.tail_bound:.3e}")
        print(f"reference\t{TWIN_CONSTANT:.15f}")
    if args.bd is not None:
        average = bd_partial_sum(args.bd)
        reldev = abs(average.sum - average.predicted) / average.predicted
        print(f"bd_n\t{args.bd}")
        print(f"bd_sum\t{average.sum:.6f}")
        print(f"bd_predicted\t{average.predicted:.6f}")
        print(f"bd_reldev\t{reldev:.3e}")
    return 0


def cmd_fit(args: argparse.Namespace) -> int:
    source = args.series if args.series else str(_data_dir(None, "--series"))
    series = load_series(source)
    x_min = x_max = None
    if args.window:
        exps = args.window
        x_min, x_max = 1 << exps[0], 1 << exps[-1]
    if args.dkn is not None:
        if not float(args.k).is_integer():
            raise ValueError(f"the inverse-log fit needs integer k, got {args.k}")
        windowed = series.window(x_min, x_max)
        fit = fit_dkn(windowed, int(args.k), args.dkn)
        print(f"k\t{fit.k}")
        print(f"order\t{fit.order}")
        for n, value in enumerate(fit.coefficients):
            print(f"d_{n}\t{value:.12g}")
        print(f"condition_number\t{fit.condition_number:.6e}")
        return 0
    fit = fit_error_term(series, args.k, args.predictor, x_min=x_min, x_max=x_max)
    print(f"k\t{_fmt_k(fit.k)}")
    print(f"predictor\t{fit.predictor}")
    print(f"alpha\t{fit.alpha:.12g}")
    print(f"amplitude\t{fit.amplitude:.12g}")
    print(f"pointwise_amplitude\t{fit.pointwise_amplitude:.12g}")
    print(f"residual_rms\t{fit.residual_rms:.6e}")
    print("window\t" + ",".join(str(x) for x in fit.window))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("gaplab.service.app:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaplab",
        description="prime-gap census laboratory: sieve, census, moments, fits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="sieve and persist gap censuses at 2^j checkpoints")
    c.add_argument("--limit", type=parse_amount, required=True,
                   help="inclusive sieve bound (accepts 2^26, 67108864, 1e6)")
    c.add_argument("--checkpoints", type=parse_checkpoints, required=True,
                   help="exponent range pow2:A..B")
    c.add_argument("--out", default=None,
                   help=f"output directory (default ${DATA_DIR_ENV})")
    c.add_argument("--segment-bits", type=parse_amount, default=DEFAULT_SEGMENT_BITS,
                   help="odd numbers per sieve segment, power of two")
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(func=cmd_census)

    m = sub.add_parser("moments", help="exact moments, predictions, and ratios")
    m.add_argument("--census", nargs="+", default=None,
                   help=f"census files or directories (default ${DATA_DIR_ENV})")
    m.add_argument("--k", type=parse_k_list, required=True,
                   help="comma-separated moment orders, e.g. 2,3,4 or 2.5")
    m.add_argument("--predictors", type=parse_predictor_list,
                   default=list(DEFAULT_PREDICTORS),
                   help="comma-separated ids: " + ", ".join(PREDICTOR_IDS))
    m.add_argument("--format", choices=("tsv", "csv"), default="tsv")
    m.add_argument("--digits", type=int, default=4, help="ratio display digits")
    m.set_defaults(func=cmd_moments)

    e = sub.add_parser("expand", help="predictor expansion coefficients in 1/log x")
    e.add_argument("--variant", choices=EXPANSION_VARIANTS, required=True)
    e.add_argument("--k", type=float, required=True)
    e.add_argument("--order", type=int, default=4)
    e.add_argument("--format", choices=("tsv", "csv"), default="tsv")
    e.set_defaults(func=cmd_expand)

    n = sub.add_parser("constants", help="twin-pair constant and weight averages")
    n.add_argument("--c2", action="store_true", help="compute the twin-pair constant")
    n.add_argument("--prime-limit", type=parse_amount, default=10**7)
    n.add_argument("--bd", type=parse_amount, default=None,
                   help="average the per-gap weights up to N")
    n.set_defaults(func=cmd_constants)

    f = sub.add_parser("fit", help="error-term and inverse-log fits over a census series")
    f.add_argument("--series", default=None,
                   help=f"directory of census files (default ${DATA_DIR_ENV})")
    f.add_argument("--k", type=float, required=True)
    f.add_argument("--predictor", choices=PREDICTOR_IDS, default="hb")
    f.add_argument("--window", type=parse_checkpoints, default=None,
                   help="restrict to thresholds in pow2:A..B")
    f.add_argument("--dkn", type=int, default=None,
                   help="fit a degree-N polynomial in 1/log x instead")
    f.set_defaults(func=cmd_fit)

    s = sub.add_parser("serve", help="run the HTTP service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8000)
    s.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 4


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
