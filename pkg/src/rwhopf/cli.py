"""Command-line driver: ``rwhopf <command> [flags]``.

Exit codes: 0 when every checked identity holds, 1 on an identity failure,
2 on bad input, 3 when a size cap stops an exact computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from rwhopf import reports
from rwhopf.bar_tor import PresentedAlgebra
from rwhopf.errors import InputError, SizeCapExceeded
from rwhopf.hopf_core import load_model

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_CAP = 3

RANGE_FLAGS = {"--k", "--m", "--n", "--ell"}


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            a, b = int(lo), int(hi)
            if a > b:
                raise InputError(f"empty range {text!r}")
            return list(range(a, b + 1))
        return [int(text)]
    except ValueError as exc:
        raise InputError(f"bad integer range {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad integer list {text!r}") from exc


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse reads "-4..8" as an option; pass it as "--k=-4..8" instead
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in RANGE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rwhopf", description="Exact checks on F2 Hopf algebras and Ravenel-Wilson dimension counts.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--workers", type=int, default=1, help="worker processes for grid commands")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("partitions", parents=[common], help="partition numbers p(n)")
    c.add_argument("--n", default="10", help="n or a..b")

    c = sub.add_parser("series", parents=[common], help="R', H' or K series of the model")
    c.add_argument("--which", choices=sorted(reports.SERIES), default="k")
    c.add_argument("--k", default="1")
    c.add_argument("--trunc", type=int, default=10)

    c = sub.add_parser("hopf-check", parents=[common], help="Hopf axioms of a model file or a built-in algebra")
    c.add_argument("--model", help="JSON model file")
    c.add_argument("--algebra", default="A1", help="A1, A2, ... when no model file is given")
    c.add_argument("--k", default="1")
    c.add_argument("--trunc", type=int, default=16)

    c = sub.add_parser("verschiebung", parents=[common], help="Verschiebung of A1(k) onto A1(2k)")
    c.add_argument("--k", default="1..3")
    c.add_argument("--trunc", type=int, default=24)

    c = sub.add_parser("tor", parents=[common], help="Tor of a polynomial algebra, analytic vs bar homology")
    c.add_argument("--degrees", default="", help="comma-separated generator degrees")
    c.add_argument("--k", help="use the model RWModel(k) instead of --degrees")
    c.add_argument("--torus", type=int, default=0)
    c.add_argument("--s-max", type=int, default=4)
    c.add_argument("--trunc", type=int, default=8)
    c.add_argument("--cap", type=int, default=200000, help="max bar words in one bidegree")
    c.add_argument("--no-bar", action="store_true")

    c = sub.add_parser("edge", parents=[common], help="injectivity of Q -> Tor_1 for the model")
    c.add_argument("--k", default="2")
    c.add_argument("--ell", default="4")
    c.add_argument("--cap", type=int, default=2000)

    c = sub.add_parser("verify-eq46", parents=[common], help="K * H' == R' over a k range")
    c.add_argument("--k", default="-4..8")
    c.add_argument("--trunc", type=int, default=20)

    c = sub.add_parser("verify-tor-k", parents=[common], help="total Tor series == K(k+1) over a k range")
    c.add_argument("--k", default="-3..6")
    c.add_argument("--trunc", type=int, default=16)

    c = sub.add_parser("verify-induction", parents=[common], help="induction dimension count over an (m, k) grid")
    c.add_argument("--m", default="1..6")
    c.add_argument("--k", default=None, help="restrict k (default -2..m+1)")
    c.add_argument("--trunc", type=int, default=16)
    c.add_argument("--bar-cap", type=int, default=5000)

    sub.add_parser("report-all", parents=[common], help="every grid verification at default size")
    return p


def _single(values: list[int], flag: str) -> int:
    if len(values) != 1:
        raise InputError(f"{flag} takes a single value here")
    return values[0]


def _check_trunc(trunc: int) -> None:
    if trunc < 1:
        raise InputError("--trunc must be at least 1")


def dispatch(args: argparse.Namespace) -> reports.Report:
    cmd = args.command
    if cmd == "partitions":
        return reports.partitions_report(parse_range(args.n))
    if cmd == "series":
        _check_trunc(args.trunc)
        return reports.series_report(args.which, parse_range(args.k), args.trunc)
    if cmd == "hopf-check":
        if args.model:
            try:
                text = Path(args.model).read_text()
            except OSError as exc:
                raise InputError(f"cannot read model: {exc}") from exc
            h = load_model(text)
        else:
            _check_trunc(args.trunc)
            h = reports.standard_algebra(args.algebra, _single(parse_range(args.k), "--k"), args.trunc)
        return reports.hopf_check_report(h)
    if cmd == "verschiebung":
        _check_trunc(args.trunc)
        return reports.verschiebung_report(parse_range(args.k), args.trunc, args.workers)
    if cmd == "tor":
        _check_trunc(args.trunc)
        if args.k is not None:
            from rwhopf.rw_model import RWModel

            a = RWModel(_single(parse_range(args.k), "--k"), args.trunc).presented()
        else:
            a = PresentedAlgebra(tuple(_int_list(args.degrees)), args.torus, args.trunc)
        return reports.tor_report(a, args.s_max, args.trunc, cap=args.cap, bar=not args.no_bar)
    if cmd == "edge":
        return reports.edge_report(
            _single(parse_range(args.k), "--k"), _single(parse_range(args.ell), "--ell"), args.cap
        )
    if cmd == "verify-eq46":
        _check_trunc(args.trunc)
        return reports.eq46_report(parse_range(args.k), args.trunc, args.workers)
    if cmd == "verify-tor-k":
        _check_trunc(args.trunc)
        return reports.tor_k_report(parse_range(args.k), args.trunc, args.workers)
    if cmd == "verify-induction":
        _check_trunc(args.trunc)
        ks = None if args.k is None else parse_range(args.k)
        return reports.induction_report(parse_range(args.m), ks, args.trunc, args.workers, args.bar_cap)
    if cmd == "report-all":
        return reports.report_all(args.workers)
    raise InputError(f"unknown command {cmd!r}")


def render(report: reports.Report, output: str) -> str:
    if output == "json":
        return json.dumps(report.to_json(), sort_keys=True, indent=2)
    return report.text


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    raw = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_glue_negative_values(raw))
    if args.workers < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = dispatch(args)
    except SizeCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(render(report, args.output))
    return EXIT_OK if report.ok else EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
