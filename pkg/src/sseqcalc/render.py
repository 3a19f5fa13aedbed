"""Deterministic SVG rendering of one page of a chart.

All styling is inline.  Classes sharing a position are spread horizontally
by a fixed offset pattern; differentials end in a marker arrowhead; guide
lines s = slope*n + intercept are clipped to the plotted rectangle with
exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from xml.sax.saxutils import escape, quoteattr

from .chart import Chart, ClassRef
from .errors import EmptyRange, InvalidPage, TooManyClasses

# x-offsets in chart units for 1..6 classes at one position
STACK_OFFSETS: dict[int, tuple[float, ...]] = {
    1: (0.0,),
    2: (-0.13, 0.13),
    3: (-0.2, 0.0, 0.2),
    4: (-0.3, -0.1, 0.1, 0.3),
    5: (-0.4, -0.2, 0.0, 0.2, 0.4),
    6: (-0.5, -0.3, -0.1, 0.1, 0.3, 0.5),
}
DASHES = {"solid": None, "dashed": "0.3 0.2", "dotted": "0.05 0.12"}
MARGIN = 1  # chart units around the plotted range


@dataclass(frozen=True)
class Guide:
    slope: Fraction
    intercept: Fraction
    style: str = "solid"

    def __post_init__(self) -> None:
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "intercept", Fraction(self.intercept))
        if self.style not in DASHES:
            raise ValueError(f"unknown guide style {self.style!r}")


@dataclass(frozen=True)
class RenderOptions:
    page: int = 2
    page_max: int | None = None
    x_range: tuple[int, int] | None = None
    y_range: tuple[int, int] | None = None
    scale: float = 40.0
    guides: tuple[Guide, ...] = ()
    spacing: dict[int, tuple[float, ...]] = field(default_factory=lambda: dict(STACK_OFFSETS))
    show_names: bool = False
    dotted_labels: tuple[str, ...] = ("2",)

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ValueError("scale must be positive")


def _num(x: float | Fraction) -> str:
    text = f"{float(x):.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def clip_guide(
    g: Guide, x0: int, x1: int, y0: int, y1: int
) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] | None:
    """Segment of y = slope*x + intercept inside [x0,x1] x [y0,y1], or None."""
    lo, hi = Fraction(x0), Fraction(x1)
    if g.slope == 0:
        if not y0 <= g.intercept <= y1:
            return None
    else:
        ya, yb = (Fraction(y0) - g.intercept) / g.slope, (Fraction(y1) - g.intercept) / g.slope
        lo, hi = max(lo, min(ya, yb)), min(hi, max(ya, yb))
    if lo > hi:
        return None
    return (lo, g.slope * lo + g.intercept), (hi, g.slope * hi + g.intercept)


def _auto_range(chart: Chart) -> tuple[tuple[int, int], tuple[int, int]]:
    if not chart.classes:
        raise EmptyRange("chart has no classes and no range was given")
    stems = [r.stem for r in chart.classes]
    fils = [r.filtration for r in chart.classes]
    return (min(stems), max(stems)), (min(fils), max(fils))


def render_svg(chart: Chart, options: RenderOptions | None = None) -> bytes:
    opts = options or RenderOptions()
    if opts.page < 2:
        raise InvalidPage(f"page {opts.page} < 2")
    if opts.x_range is None or opts.y_range is None:
        auto_x, auto_y = _auto_range(chart)
    (x0, x1) = opts.x_range if opts.x_range is not None else auto_x
    (y0, y1) = opts.y_range if opts.y_range is not None else auto_y
    if x1 < x0 or y1 < y0:
        raise EmptyRange(f"empty range x {x0}..{x1}, y {y0}..{y1}")

    sc = opts.scale
    width = (x1 - x0 + 2 * MARGIN) * sc
    height = (y1 - y0 + 2 * MARGIN) * sc

    def px(x: float | Fraction) -> str:
        return _num((float(x) - x0 + MARGIN) * sc)

    def py(y: float | Fraction) -> str:
        return _num((y1 - float(y) + MARGIN) * sc)

    visible = chart.visible_classes(opts.page)
    diffs, lines = chart.visible_edges(opts.page, opts.page_max)

    # stacked offsets among the classes visible on this page
    by_pos: dict[tuple[int, int], list[ClassRef]] = {}
    for ref, _ in visible:
        by_pos.setdefault((ref.stem, ref.filtration), []).append(ref)
    where: dict[ClassRef, tuple[float, int]] = {}
    for pos, refs in by_pos.items():
        pattern = opts.spacing.get(len(refs))
        if pattern is None:
            raise TooManyClasses(f"{len(refs)} classes at {pos}; at most {max(opts.spacing)}")
        for ref, dx in zip(sorted(refs), pattern):
            where[ref] = (ref.stem + dx, ref.filtration)
    # differential endpoints that are not visible on the first page still get a spot
    for d in diffs:
        for ref in (d.source, d.target):
            where.setdefault(ref, (ref.stem, ref.filtration))

    def inside(ref: ClassRef) -> bool:
        return x0 <= ref.stem <= x1 and y0 <= ref.filtration <= y1

    r = _num(0.08 * sc)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(width)}" '
        f'height="{_num(height)}" viewBox="0 0 {_num(width)} {_num(height)}">',
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" '
        'markerHeight="6" orient="auto"><path d="M 0 0 L 10 5 L 0 10 z" fill="black"/></marker>',
        "</defs>",
        f'<rect x="0" y="0" width="{_num(width)}" height="{_num(height)}" fill="white"/>',
    ]

    # axes with a tick and label for every integer
    out.append('<g class="axes" stroke="black" stroke-width="1">')
    out.append(f'<line x1="{px(x0 - 0.5)}" y1="{py(y0 - 0.5)}" x2="{px(x1 + 0.5)}" y2="{py(y0 - 0.5)}"/>')
    out.append(f'<line x1="{px(x0 - 0.5)}" y1="{py(y0 - 0.5)}" x2="{px(x0 - 0.5)}" y2="{py(y1 + 0.5)}"/>')
    for x in range(x0, x1 + 1):
        out.append(f'<line x1="{px(x)}" y1="{py(y0 - 0.5)}" x2="{px(x)}" y2="{py(y0 - 0.6)}"/>')
    for y in range(y0, y1 + 1):
        out.append(f'<line x1="{px(x0 - 0.5)}" y1="{py(y)}" x2="{px(x0 - 0.6)}" y2="{py(y)}"/>')
    out.append("</g>")
    font = _num(0.3 * sc)
    out.append(f'<g class="labels" font-family="sans-serif" font-size="{font}">')
    for x in range(x0, x1 + 1):
        out.append(f'<text x="{px(x)}" y="{py(y0 - 0.9)}" text-anchor="middle">{x}</text>')
    for y in range(y0, y1 + 1):
        out.append(f'<text x="{px(x0 - 0.7)}" y="{py(y - 0.1)}" text-anchor="end">{y}</text>')
    out.append("</g>")

    for g in opts.guides:
        seg = clip_guide(g, x0, x1, y0, y1)
        if seg is None:
            continue
        (ax, ay), (bx, by) = seg
        dash = DASHES[g.style]
        dash_attr = f' stroke-dasharray="{" ".join(_num(float(v) * sc) for v in dash.split())}"' if dash else ""
        out.append(
            f'<line class="guide" x1="{px(ax)}" y1="{py(ay)}" x2="{px(bx)}" y2="{py(by)}" '
            f'stroke="gray" stroke-width="1"{dash_attr}/>'
        )

    for s in sorted(lines, key=lambda s: s.sort_key()):
        if not (inside(s.source) and inside(s.target)):
            continue
        (ax, ay), (bx, by) = where[s.source], where[s.target]
        dash = ""
        if s.label in opts.dotted_labels:
            dash = f' stroke-dasharray="{_num(0.05 * sc)} {_num(0.1 * sc)}"'
        out.append(
            f'<line class="structline" x1="{px(ax)}" y1="{py(ay)}" x2="{px(bx)}" y2="{py(by)}" '
            f'stroke="black" stroke-width="1"{dash}/>'
        )

    for d in diffs:
        if not (inside(d.source) and inside(d.target)):
            continue
        (ax, ay), (bx, by) = where[d.source], where[d.target]
        out.append(
            f'<line class="differential" x1="{px(ax)}" y1="{py(ay)}" x2="{px(bx)}" y2="{py(by)}" '
            f'stroke="black" stroke-width="1" marker-end="url(#arrow)"/>'
        )

    for ref, gen in visible:
        if not inside(ref):
            continue
        x, y = where[ref]
        cls = chart.classes[ref]
        fill = gen.options.get("fill") or cls.options.get("fill")
        if fill is None:
            fill = "white" if cls.options.get("origin") == "quot" else "black"
        out.append(
            f'<circle class="class" cx="{px(x)}" cy="{py(y)}" r="{r}" '
            f"fill={quoteattr(fill)} stroke=\"black\" stroke-width=\"1\"/>"
        )
        if opts.show_names and cls.name:
            out.append(
                f'<text class="name" x="{px(x + 0.12)}" y="{py(y + 0.12)}" '
                f'font-family="sans-serif" font-size="{font}">{escape(cls.name)}</text>'
            )

    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
