"""Command-line interface.

Exit statuses: 0 when every check passes, 1 when a numerical check fails,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import cascade
from .circle_space import CircleFunction
from .filters import (
    BUILTIN_NAMES,
    LAURENT,
    QMF_TOLERANCE,
    Filter,
    FilterError,
    builtin_filter,
    conjugate_filter,
    dc_value,
    load_filter,
    qmf_residual,
    require_scaling_filter,
)
from .mra import build_system, inverse_transform
from .scaling import LineGrid, format_line_function
from .verify import PROFILES, run_verification

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_step(text: str) -> Fraction:
    """Accept ``1/2^p``, ``2^-p``, ``1/N`` or a decimal, provided the value is ``2^-p``."""
    s = text.strip().replace(" ", "")
    m = re.fullmatch(r"1/2\^(\d+)", s) or re.fullmatch(r"2\^\(?-(\d+)\)?", s)
    if m:
        return Fraction(1, 2 ** int(m.group(1)))
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"step {text!r} is not a number") from None
    if q.numerator != 1 or q.denominator & (q.denominator - 1):
        raise UsageError(f"step {text!r} is not of the form 2^-p")
    return q


def parse_extent(text: str) -> Fraction:
    try:
        q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"extent {text!r} is not a number") from None
    if q <= 0:
        raise UsageError("extent must be positive")
    return q


def _filter_from(args) -> tuple[Filter, str]:
    if args.builtin:
        try:
            return builtin_filter(args.builtin), args.builtin
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    try:
        return load_filter(args.file), args.file
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    except FilterError as exc:
        raise UsageError(f"{args.file}: {exc}") from None


def _describe(filt: Filter) -> str:
    if filt.kind == LAURENT:
        return "\n".join(
            f"  h[{filt.offset + i}] = {c.real:.17g} {c.imag:+.17g}j" for i, c in enumerate(filt.coefficients)
        )
    arcs = ", ".join(f"[{a:g}, {b:g})" for a, b in filt.arcs)
    return f"  {filt.sign:+d} * e^(2 pi i {filt.twist} x) on {arcs}"


def cmd_filters_check(args) -> int:
    m0, label = _filter_from(args)
    if args.grid <= 0 or args.grid % 2:
        raise UsageError("--grid must be a positive even integer")
    res = qmf_residual(m0, args.grid)
    dev = abs(dc_value(m0) - 1)
    print(f"filter: {label}")
    print(f"qmf_residual: {res:.17g}")
    print(f"m0(1) deviation: {dev:.17g}")
    print("conjugate filter m1:")
    print(_describe(conjugate_filter(m0)))
    ok = res <= QMF_TOLERANCE and dev <= QMF_TOLERANCE
    print("status: " + ("ok" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _grid_from(args) -> LineGrid:
    step = parse_step(args.step)
    extent = parse_extent(args.extent)
    if (extent / step).denominator != 1:
        raise UsageError(f"extent {args.extent} is not a multiple of step {args.step}")
    return LineGrid(float(step), float(extent))


def cmd_build(args) -> int:
    m0, label = _filter_from(args)
    grid = _grid_from(args)
    if args.depth < 1:
        raise UsageError("--depth must be positive")
    try:
        require_scaling_filter(m0)
        system = build_system(m0, grid, args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fn = system.phi if args.target == "scaling" else system.psi
    if args.time_domain:
        try:
            fn = inverse_transform(fn)
        except ValueError as exc:
            raise UsageError(f"time-domain grid: {exc}") from None
    Path(args.out).write_text(format_line_function(fn), encoding="utf-8")
    domain = "time" if args.time_domain else "frequency"
    print(
        f"{args.target} ({label}, depth {args.depth}, {domain} domain): "
        f"{fn.grid.size} samples, step {fn.grid.step:.17g}, extent {fn.grid.extent:.17g} -> {args.out}"
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    m0, label = _filter_from(args)
    report = run_verification(m0, PROFILES[args.profile], args.seed, label)
    print(report.to_table())
    if args.report:
        Path(args.report).write_text(report.to_lines(), encoding="utf-8")
    if not report.passed:
        for c in report.failures():
            print(f"FAILED {c.name}: residual {c.residual:.3e} > tolerance {c.tolerance:.1e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_cascade(args) -> int:
    m0, _ = _filter_from(args)
    if m0.kind != LAURENT:
        raise UsageError("the pyramid needs a laurent filter")
    m1 = conjugate_filter(m0)
    try:
        text = Path(args.inp).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.inp}: {exc.strerror}") from None
    try:
        if args.direction == "analyze":
            if args.levels is None or args.levels < 1:
                raise UsageError("--levels must be at least 1")
            signal: CircleFunction = cascade.parse_signal(text)
            out = cascade.format_pyramid(cascade.analyze(m0, m1, signal, args.levels))
        else:
            pyr = cascade.parse_pyramid(text)
            out = cascade.format_signal(cascade.synthesize(m0, m1, pyr, args.levels))
    except (ValueError, FilterError) as exc:
        raise UsageError(str(exc)) from None
    Path(args.out).write_text(out, encoding="utf-8")
    return EXIT_OK


def _add_filter_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME", help=f"one of {', '.join(BUILTIN_NAMES)}")
    src.add_argument("--file", metavar="PATH", help="filter file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="filterwave", description="Wavelets from quadrature mirror filters.")
    sub = parser.add_subparsers(dest="command", required=True)

    filters = sub.add_parser("filters", help="filter utilities")
    fsub = filters.add_subparsers(dest="action", required=True)
    check = fsub.add_parser("check", help="validate the QMF identity")
    _add_filter_source(check)
    check.add_argument("--grid", type=int, default=4096)
    check.set_defaults(func=cmd_filters_check)

    build = sub.add_parser("build", help="sample the scaling function or wavelet")
    build.add_argument("target", choices=["scaling", "wavelet"])
    _add_filter_source(build)
    build.add_argument("--depth", type=int, default=30)
    build.add_argument("--step", default="1/64")
    build.add_argument("--extent", default="64")
    build.add_argument("--out", required=True)
    build.add_argument("--time-domain", action="store_true")
    build.set_defaults(func=cmd_build)

    verify = sub.add_parser("verify", help="run the verification suite")
    _add_filter_source(verify)
    verify.add_argument("--profile", choices=sorted(PROFILES), default="fast")
    verify.add_argument("--seed", type=int, default=7)
    verify.add_argument("--report", metavar="PATH")
    verify.set_defaults(func=cmd_verify)

    casc = sub.add_parser("cascade", help="multilevel pyramid transforms")
    casc.add_argument("direction", choices=["analyze", "synthesize"])
    _add_filter_source(casc)
    casc.add_argument("--levels", type=int)
    casc.add_argument("--in", dest="inp", required=True)
    casc.add_argument("--out", required=True)
    casc.set_defaults(func=cmd_cascade)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
