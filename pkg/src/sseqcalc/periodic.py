"""Periodic chart patterns, tiling, cofiber overlays and band census."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable

from .chart import Bidegree, Chart, ClassRef, Generation
from .dsl import parse, read_period, serialize
from .errors import GradingMismatch, SseqError
from .vline import VlParams, band_counts

BASE_RE = re.compile(r"#\s*base\s*\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)")


@dataclass(frozen=True, order=True)
class PatternClass:
    dstem: int
    dfil: int
    index: int = 0


@dataclass(frozen=True, order=True)
class PatternLine:
    """A structure line; the target lives ``periods`` periods after the source."""

    source: PatternClass
    target: PatternClass
    periods: int = 0
    label: str | None = None


@dataclass(frozen=True)
class PeriodicPattern:
    classes: tuple[PatternClass, ...]
    lines: tuple[PatternLine, ...]
    period: tuple[int, int]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        dn = self.period[0]
        if dn <= 0:
            raise ValueError(f"stem period must be positive, got {dn}")
        for cls in self.classes:
            if not 0 <= cls.dstem < dn:
                raise ValueError(f"offset {cls} outside stems [0, {dn})")
        known = set(self.classes)
        for line in self.lines:
            if line.source not in known or line.target not in known:
                raise ValueError(f"line {line} refers to a class outside the pattern")
        object.__setattr__(self, "classes", tuple(sorted(self.classes)))
        object.__setattr__(self, "lines", tuple(sorted(self.lines, key=_line_key)))

    def __len__(self) -> int:
        return len(self.classes)


def _line_key(line: PatternLine) -> tuple:
    return (line.source, line.target, line.periods, line.label or "")


def _range(bounds: tuple[int, int] | None) -> tuple[float, float]:
    if bounds is None:
        return (float("-inf"), float("inf"))
    return bounds


def tile(
    pattern: PeriodicPattern,
    base: Bidegree | tuple[int, int],
    stem_range: tuple[int, int],
    s_range: tuple[int, int] | None = None,
) -> Chart:
    """Translate the pattern by every period multiple landing in the ranges (inclusive)."""
    base = base if isinstance(base, Bidegree) else Bidegree(*base)
    n0, n1 = stem_range
    s0, s1 = _range(s_range)
    dn, ds = pattern.period
    chart = Chart()
    if n1 < n0:
        return chart.seal()

    def position(cls: PatternClass, j: int) -> tuple[int, int]:
        return (base.stem + cls.dstem + j * dn, base.filtration + cls.dfil + j * ds)

    j_lo = (n0 - base.stem - dn) // dn
    j_hi = (n1 - base.stem) // dn + 1
    placed: dict[tuple[PatternClass, int], ClassRef] = {}
    # Visit positions in sorted order so indices are deterministic.
    cells = []
    for j in range(j_lo, j_hi + 1):
        for cls in pattern.classes:
            n, s = position(cls, j)
            if n0 <= n <= n1 and s0 <= s <= s1:
                cells.append(((n, s, cls.index), cls, j))
    for (n, s, _), cls, j in sorted(cells, key=lambda c: c[0]):
        placed[(cls, j)] = chart.add_class((n, s))
    for j in range(j_lo, j_hi + 1):
        for line in pattern.lines:
            a = placed.get((line.source, j))
            b = placed.get((line.target, j + line.periods))
            if a is not None and b is not None:
                chart.add_structline(a, b, label=line.label)
    return chart.seal()


def pattern_from_chart(
    chart: Chart, base: Bidegree, period: tuple[int, int], name: str = ""
) -> PeriodicPattern:
    """Read a pattern off a chart covering at least one full period from ``base``."""
    dn, ds = period

    def locate(ref: ClassRef) -> tuple[PatternClass, int]:
        j = (ref.stem - base.stem) // dn
        return (
            PatternClass(ref.stem - base.stem - j * dn, ref.filtration - base.filtration - j * ds, ref.index),
            j,
        )

    classes = set()
    for ref in chart.classes:
        cls, j = locate(ref)
        if j == 0:
            classes.add(cls)
    lines = set()
    for s in chart.structlines:
        src, js = locate(s.source)
        tgt, jt = locate(s.target)
        if src in classes and tgt in classes:
            lines.add(PatternLine(src, tgt, jt - js, s.label))
    return PeriodicPattern(tuple(classes), tuple(lines), period, name)


def load_pattern(text: str, name: str = "") -> PeriodicPattern:
    period = read_period(text)
    if period is None:
        raise SseqError("pattern file has no '# period (dn,ds)' header")
    base = Bidegree(0, 0)
    for raw in text.splitlines():
        m = BASE_RE.search(raw)
        if m:
            base = Bidegree(int(m.group(1)), int(m.group(2)))
            break
    return pattern_from_chart(parse(text), base, period, name)


def c2_periodic_pattern() -> PeriodicPattern:
    """The shipped period-(8,4) band pattern of C(2), offsets from (8k, 4k)."""
    text = resources.files("sseqcalc").joinpath("data/c2_periodic.sseq").read_text("utf-8")
    return load_pattern(text, "c2")


def y_periodic_pattern(depth: int = 3) -> PeriodicPattern:
    """Classes of C tau tensor Y-tilde near its band, period (2,1).

    Positions are {(n, s) : s = 2n mod 3, s <= n/2}, truncated to ``depth``
    classes per stem.  The lowest band classes (odd stems, s = (n-3)/2) are
    joined by lines to their translates.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    classes = [PatternClass(0, -3 * j) for j in range(depth)]
    classes += [PatternClass(1, -1 - 3 * j) for j in range(depth)]
    lines = [PatternLine(PatternClass(1, -1), PatternClass(1, -1), 1)]
    return PeriodicPattern(tuple(classes), tuple(lines), (2, 1), "y")


PATTERNS = {"c2": c2_periodic_pattern, "y": y_periodic_pattern}


def cofiber_overlay(chart_a: Chart, shift_a: tuple[int, int], chart_c: Chart) -> Chart:
    """Upper bound for B in A -> B -> C: shifted A (origin=sub) plus C (origin=quot).

    Indices are reassigned per position, sub classes first, so marks never
    collide.  No cancellation is applied.
    """
    if chart_a.grading != chart_c.grading:
        raise GradingMismatch(
            f"cannot overlay {chart_a.grading.kind.value} on {chart_c.grading.kind.value}"
        )
    out = Chart(chart_a.grading, strict_degree=chart_a.strict_degree and chart_c.strict_degree)
    moved = chart_a.shift(*shift_a)
    remap: dict[tuple[str, ClassRef], ClassRef] = {}
    for origin, src in (("sub", moved), ("quot", chart_c)):
        for ref in sorted(src.classes):
            cls = src.classes[ref]
            name = cls.name if cls.name is not None and out.find_name(cls.name) is None else None
            new = out.add_class(cls.position, name=name, tag=cls.tag)
            gens = [Generation(g.born, g.died, dict(g.options)) for g in cls.generations]
            gens[0].options["origin"] = origin
            out.classes[new].generations = gens
            remap[(origin, ref)] = new
    for origin, src in (("sub", moved), ("quot", chart_c)):
        for d in src.differentials:
            out.differentials.append(
                type(d)(d.page, remap[(origin, d.source)], remap[(origin, d.target)])
            )
        for s in src.structlines:
            out.structlines.append(
                type(s)(remap[(origin, s.source)], remap[(origin, s.target)], s.label, s.born_page)
            )
    return out.seal()


def band_census(chart: Chart, p: VlParams, stem_range: tuple[int, int]) -> dict[int, int]:
    """Permanent InBand classes per stem over an inclusive stem range."""
    return band_counts(chart, p, range(stem_range[0], stem_range[1] + 1))


def serialize_pattern(pattern: PeriodicPattern, base: Bidegree = Bidegree(0, 0)) -> str:
    """Two periods from ``base`` with period and base headers; reloads to ``pattern``."""
    dn = pattern.period[0]
    chart = tile(pattern, base, (base.stem, base.stem + 2 * dn - 1))
    return f"# base ({base.stem},{base.filtration})\n" + serialize(chart, period=pattern.period)


def positions(chart: Chart, origin: str | None = None) -> list[tuple[int, int]]:
    out = []
    for ref in sorted(chart.classes):
        cls = chart.classes[ref]
        if origin is None or cls.options.get("origin") == origin:
            out.append((ref.stem, ref.filtration))
    return out


def window(
    pts: Iterable[tuple[int, int]], stems: tuple[int, int], fils: tuple[int, int]
) -> list[tuple[int, int]]:
    return sorted(
        (n, s) for n, s in pts if stems[0] <= n <= stems[1] and fils[0] <= s <= fils[1]
    )
