"""Command-line driver for the experiment scans.

Exit code 0 means every verdict row passed.  Witness lines (first failing
cell of an identity, per-level constants of a failed flatness test) go to
stdout; reports go to --out in CSV or JSON.
"""

from __future__ import annotations

import argparse
import sys

from .experiments import COMMANDS, ExperimentConfig, SamplingPolicy, write_report

_SUBCOMMANDS = ("identities", "growth", "pointwise", "atoms", "opnorm", "all")


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(",") if t.strip())


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t.strip())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="walshfejer",
        description="Exact and ratio-based scans of triangular summability kernels",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name in _SUBCOMMANDS:
        sp = sub.add_parser(name, help=f"run the {name} scan")
        sp.add_argument("--resolution", type=int, default=None, metavar="M",
                        help="grid levels (default chosen per command)")
        sp.add_argument("--p", default="", metavar="LIST",
                        help="comma-separated exponents, e.g. 0.85,1.0")
        sp.add_argument("--levels", default="", metavar="LIST",
                        help="comma-separated N values")
        sp.add_argument("--samples", type=int, default=32,
                        help="seeded sample size per level (default 32)")
        sp.add_argument("--seed", type=int, default=1729)
        sp.add_argument("--mode", choices=("exact", "float"), default="exact")
        sp.add_argument("--factor", type=float, default=4.0,
                        help="ratio bound factor for verdicts (default 4.0)")
        sp.add_argument("--sampling", default="auto",
                        choices=("auto", "all", "dyadic_endpoints", "seeded"))
        sp.add_argument("--format", dest="out_format", choices=("csv", "json"),
                        default="csv")
        sp.add_argument("--out", default=None, metavar="PATH")
        sp.add_argument("--exploratory", action="store_true",
                        help="also run out-of-range exponents (report-only)")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = ExperimentConfig(
            resolution=args.resolution,
            p_grid=_float_list(args.p),
            level_grid=_int_list(args.levels),
            sampling=SamplingPolicy(args.sampling, args.samples, args.seed),
            mode=args.mode,
            factor=args.factor,
            exploratory=args.exploratory,
        )
        report = COMMANDS[args.command](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.out:
        write_report(report.rows, args.out_format, args.out)

    for row in report.rows:
        if row.status in ("pass", "fail"):
            tag = row.status.upper()
            extra = f"p={row.p:g} " if row.p is not None else ""
            print(f"[{tag}] {row.experiment} {extra}"
                  f"measured={row.measured:.6g} bound={row.normalizer:.6g}")
    for line in report.witnesses:
        print(f"  witness: {line}")
    verdicts = sum(1 for r in report.rows if r.status in ("pass", "fail"))
    fails = sum(1 for r in report.rows if r.status == "fail")
    print(f"{args.command}: {verdicts - fails}/{verdicts} verdicts passed")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
