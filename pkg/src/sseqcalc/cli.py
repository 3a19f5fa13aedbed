"""Command-line front end.  Exit codes: 0 success, 1 domain failure, 2 usage."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import k1local, vline
from .chart import Bidegree
from .dsl import parse, serialize
from .errors import SseqError
from .periodic import PATTERNS, tile
from .render import Guide, RenderOptions, render_svg


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit; keep control of codes
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, data: bytes | str) -> None:
    if path is None or path == "-":
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
        else:
            sys.stdout.write(data)
        return
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(path, mode, **({} if mode == "wb" else {"encoding": "utf-8"})) as fh:
        fh.write(data)


def _guide(text: str) -> Guide:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (2, 3):
        raise UsageError(f"--guide expects m,c[,style], got {text!r}")
    try:
        slope, intercept = vline.to_fraction(parts[0]), vline.to_fraction(parts[1])
        return Guide(slope, intercept, parts[2] if len(parts) == 3 else "solid")
    except (ValueError, SseqError) as exc:
        raise UsageError(f"bad --guide {text!r}: {exc}") from None


def _params(text: str) -> vline.VlParams:
    try:
        return vline.parse_params(text)
    except SseqError as exc:
        raise UsageError(str(exc)) from None


def cmd_parse(args) -> int:
    chart = parse(_read(args.file))
    sys.stdout.write(serialize(chart))
    return 0


def cmd_render(args) -> int:
    chart = parse(_read(args.file))
    xr = yr = None
    if args.range is not None:
        x0, x1, y0, y1 = args.range
        xr, yr = (x0, x1), (y0, y1)
    opts = RenderOptions(
        page=args.page,
        page_max=args.page_max,
        x_range=xr,
        y_range=yr,
        scale=args.scale,
        guides=tuple(_guide(g) for g in args.guide),
        show_names=args.names,
    )
    _write(args.output, render_svg(chart, opts))
    return 0


def cmd_vline(args) -> int:
    if args.vcmd == "suspend":
        print(vline.suspend(_params(args.params), args.dstem, args.dfil))
    elif args.vcmd == "combine":
        print(vline.combine_cofiber(_params(args.a), _params(args.c)))
    else:
        ok = vline.dominates(_params(args.p1), _params(args.p2))
        print("true" if ok else "false")
    return 0


def cmd_k1(args) -> int:
    if args.kcmd == "sphere":
        print(k1local.k1_sphere(args.i))
    elif args.kcmd == "moore-orders":
        orders = k1local.moore_orders()
        print(",".join(str(orders[r]) for r in range(8)))
    elif args.kcmd == "moore-groups":
        for r, g in k1local.moore_groups().items():
            print(f"residue={r} group={g.machine()}  # {g.note}")
    else:
        if args.to < args.from_:
            raise UsageError("--to must be >= --from")
        print(k1local.format_table(args.from_, args.to))
    return 0


def cmd_tile(args) -> int:
    pattern = PATTERNS[args.pattern]()
    if args.to < args.from_:
        raise UsageError("--to must be >= --from")
    chart = tile(pattern, Bidegree(0, 0), (args.from_, args.to))
    _write(args.output, serialize(chart, period=pattern.period))
    return 0


def cmd_verify(args) -> int:
    chart = parse(_read(args.file))
    p = _params(args.params)
    try:
        orders = [int(x) for x in args.orders.split(",")]
    except ValueError:
        raise UsageError(f"--orders expects comma-separated integers, got {args.orders!r}") from None
    period = len(orders)
    stems = sorted({r.stem for r in chart.classes})
    if args.stems is not None:
        lo, hi = args.stems
    elif stems:
        lo, hi = stems[0], stems[-1]
    else:
        lo, hi = 0, -1
    report = vline.verify_banded(chart, p, (lo, hi), dict(enumerate(orders)), period=period)
    print(report.format())
    return 0 if report.passed else 1


def cmd_verify_mahowald(args) -> int:
    steps = vline.mahowald_pipeline()
    for step in steps:
        print(f"{step.label}: computed={step.computed} stated={step.stated} verdict={step.verdict}")
    ok = all(s.passed for s in steps)
    print("all verdicts pass" if ok else "some verdicts FAIL", file=sys.stderr)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sseqcalc", description="Spectral sequence chart engine.")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("parse", help="validate a chart and print its canonical form")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("render", help="render one page to SVG")
    sp.add_argument("file")
    sp.add_argument("--page", type=int, required=True)
    sp.add_argument("--page-max", type=int)
    sp.add_argument("--range", type=int, nargs=4, metavar=("X0", "X1", "Y0", "Y1"))
    sp.add_argument("--guide", action="append", default=[], metavar="M,C[,STYLE]")
    sp.add_argument("--scale", type=float, default=40.0)
    sp.add_argument("--names", action="store_true", help="draw class names")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("vline", help="vanishing-line parameter arithmetic")
    vs = sp.add_subparsers(dest="vcmd", parser_class=_Parser)
    vs.required = True
    q = vs.add_parser("suspend")
    q.add_argument("params")
    q.add_argument("dstem", type=int)
    q.add_argument("dfil", type=int)
    q = vs.add_parser("combine")
    q.add_argument("a", help="parameters of the fiber A")
    q.add_argument("c", help="parameters of the cofiber C")
    q = vs.add_parser("dominates")
    q.add_argument("p1")
    q.add_argument("p2")
    sp.set_defaults(func=cmd_vline)

    sp = sub.add_parser("k1", help="K(1)-local homotopy")
    ks = sp.add_subparsers(dest="kcmd", parser_class=_Parser)
    ks.required = True
    q = ks.add_parser("sphere")
    q.add_argument("i", type=int)
    ks.add_parser("moore-orders")
    ks.add_parser("moore-groups")
    q = ks.add_parser("table")
    q.add_argument("--from", dest="from_", type=int, required=True)
    q.add_argument("--to", type=int, required=True)
    sp.set_defaults(func=cmd_k1)

    sp = sub.add_parser("tile", help="materialize a periodic pattern")
    sp.add_argument("--pattern", choices=sorted(PATTERNS), required=True)
    sp.add_argument("--from", dest="from_", type=int, required=True)
    sp.add_argument("--to", type=int, required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_tile)

    sp = sub.add_parser("verify", help="check a chart against a banded vanishing line")
    sp.add_argument("file")
    sp.add_argument("--params", required=True)
    sp.add_argument("--orders", required=True)
    sp.add_argument("--stems", type=int, nargs=2, metavar=("N0", "N1"))
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("verify-mahowald", help="reproduce the vanishing-line pipeline")
    sp.set_defaults(func=cmd_verify_mahowald)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SseqError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
