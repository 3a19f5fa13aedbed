"""Bigraded multi-page charts and their page-visibility rules.

Coordinates are (stem, filtration); the internal degree ``t`` is always
derived as ``stem + filtration``.  Pages start at 2.  A class lives through a
sequence of generations: a differential on page ``p`` ends the generation
alive at ``p``, and ``replace_class`` starts a fresh one on page ``p + 1``.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

from .errors import (
    ChartError,
    DeadClass,
    DegreeMismatch,
    DuplicateKill,
    InvalidPage,
    NotDead,
    SealedChart,
    UnknownClass,
)

INFINITY = math.inf
FIRST_PAGE = 2


class GradingKind(str, Enum):
    ADAMS = "adams"
    SERRE_COHOMOLOGICAL = "serre-cohomological"
    SERRE_HOMOLOGICAL = "serre-homological"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Grading:
    """Degree of a page-``r`` differential as an affine function of ``r``.

    ``custom`` holds ``(a, b, c, d)`` with displacement ``(a*r + b, c*r + d)``.
    """

    kind: GradingKind = GradingKind.ADAMS
    custom: tuple[int, int, int, int] | None = None

    def __post_init__(self) -> None:
        if (self.kind is GradingKind.CUSTOM) != (self.custom is not None):
            raise ValueError("custom coefficients are required exactly for CUSTOM grading")

    @property
    def coefficients(self) -> tuple[int, int, int, int]:
        if self.kind is GradingKind.ADAMS:
            return (0, -1, 1, 0)
        if self.kind is GradingKind.SERRE_COHOMOLOGICAL:
            return (1, 0, -1, 1)
        if self.kind is GradingKind.SERRE_HOMOLOGICAL:
            return (-1, 0, 1, -1)
        assert self.custom is not None
        return self.custom

    def displacement(self, page: int) -> tuple[int, int]:
        a, b, c, d = self.coefficients
        return (a * page + b, c * page + d)

    @classmethod
    def adams(cls) -> Grading:
        return cls(GradingKind.ADAMS)

    @classmethod
    def serre_cohomological(cls) -> Grading:
        return cls(GradingKind.SERRE_COHOMOLOGICAL)

    @classmethod
    def serre_homological(cls) -> Grading:
        return cls(GradingKind.SERRE_HOMOLOGICAL)

    @classmethod
    def from_coefficients(cls, a: int, b: int, c: int, d: int) -> Grading:
        return cls(GradingKind.CUSTOM, (a, b, c, d))


@dataclass(frozen=True, order=True)
class Bidegree:
    stem: int
    filtration: int

    @property
    def weight(self) -> int:
        return self.stem + self.filtration

    def shifted(self, dstem: int, dfil: int) -> Bidegree:
        return Bidegree(self.stem + dstem, self.filtration + dfil)

    def __iter__(self) -> Iterator[int]:
        yield self.stem
        yield self.filtration


@dataclass(frozen=True, order=True)
class ClassRef:
    """A class is addressed by its position and its index at that position."""

    stem: int
    filtration: int
    index: int = 0

    @property
    def position(self) -> Bidegree:
        return Bidegree(self.stem, self.filtration)

    def shifted(self, dstem: int, dfil: int) -> ClassRef:
        return ClassRef(self.stem + dstem, self.filtration + dfil, self.index)

    def __str__(self) -> str:
        return f"({self.stem},{self.filtration},{self.index})"


@dataclass
class Generation:
    born: int = FIRST_PAGE
    died: float = INFINITY
    options: dict[str, str] = field(default_factory=dict)

    def visible(self, page: int) -> bool:
        return self.born <= page <= self.died

    @property
    def permanent(self) -> bool:
        return self.died == INFINITY


@dataclass
class ChartClass:
    position: Bidegree
    index: int
    generations: list[Generation] = field(default_factory=lambda: [Generation()])
    name: str | None = None
    tag: str | None = None

    @property
    def ref(self) -> ClassRef:
        return ClassRef(self.position.stem, self.position.filtration, self.index)

    @property
    def latest(self) -> Generation:
        return self.generations[-1]

    @property
    def options(self) -> dict[str, str]:
        return self.generations[0].options

    def generation_at(self, page: int) -> Generation | None:
        for gen in self.generations:
            if gen.visible(page):
                return gen
        return None

    def visible(self, page: int) -> bool:
        return self.generation_at(page) is not None


@dataclass(frozen=True, order=True)
class Differential:
    page: int
    source: ClassRef
    target: ClassRef


@dataclass(frozen=True)
class StructLine:
    source: ClassRef
    target: ClassRef
    label: str | None = None
    born_page: int = FIRST_PAGE

    def sort_key(self) -> tuple:
        return (self.source, self.target, self.label or "", self.born_page)


def _as_position(position: Bidegree | tuple[int, int]) -> Bidegree:
    if isinstance(position, Bidegree):
        return position
    stem, fil = position
    return Bidegree(stem, fil)


def _as_ref(ref: ClassRef | tuple) -> ClassRef:
    if isinstance(ref, ClassRef):
        return ref
    return ClassRef(*ref)


@dataclass(eq=False)
class Chart:
    grading: Grading = field(default_factory=Grading.adams)
    classes: dict[ClassRef, ChartClass] = field(default_factory=dict)
    differentials: list[Differential] = field(default_factory=list)
    structlines: list[StructLine] = field(default_factory=list)
    strict_degree: bool = True
    sealed: bool = False

    # -- structural equality (ordering of edge lists is irrelevant) --

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chart):
            return NotImplemented
        return (
            self.grading == other.grading
            and self.strict_degree == other.strict_degree
            and self.classes == other.classes
            and sorted(self.differentials) == sorted(other.differentials)
            and sorted(self.structlines, key=StructLine.sort_key)
            == sorted(other.structlines, key=StructLine.sort_key)
        )

    def _check_mutable(self) -> None:
        if self.sealed:
            raise SealedChart("chart is sealed")

    def seal(self) -> Chart:
        self.sealed = True
        return self

    def copy(self, *, sealed: bool = False) -> Chart:
        dup = copy.deepcopy(self)
        dup.sealed = sealed
        return dup

    # -- lookup --

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[ChartClass]:
        return iter(self.classes.values())

    def __contains__(self, ref: object) -> bool:
        return ref in self.classes

    def get(self, ref: ClassRef | tuple) -> ChartClass:
        ref = _as_ref(ref)
        try:
            return self.classes[ref]
        except KeyError:
            raise UnknownClass(f"no class {ref}") from None

    def classes_at(self, position: Bidegree | tuple[int, int]) -> list[ChartClass]:
        pos = _as_position(position)
        return sorted(
            (c for c in self.classes.values() if c.position == pos), key=lambda c: c.index
        )

    def find_name(self, name: str) -> ClassRef | None:
        for cls in self.classes.values():
            if cls.name == name:
                return cls.ref
        return None

    # -- mutation --

    def add_class(
        self,
        position: Bidegree | tuple[int, int],
        *,
        name: str | None = None,
        tag: str | None = None,
        options: dict[str, str] | None = None,
    ) -> ClassRef:
        self._check_mutable()
        pos = _as_position(position)
        index = len(self.classes_at(pos))
        cls = ChartClass(pos, index, [Generation(options=dict(options or {}))], name, tag)
        self.classes[cls.ref] = cls
        return cls.ref

    def add_differential(
        self, page: int, source: ClassRef | tuple, target: ClassRef | tuple
    ) -> Differential:
        self._check_mutable()
        if page < FIRST_PAGE:
            raise InvalidPage(f"page {page} < {FIRST_PAGE}")
        source, target = _as_ref(source), _as_ref(target)
        if source == target:
            raise ChartError(f"differential from {source} to itself")

        if self.strict_degree:
            want = self.grading.displacement(page)
            got = (target.stem - source.stem, target.filtration - source.filtration)
            if got != want:
                raise DegreeMismatch(
                    f"d{page} {source} -> {target} has displacement {got}, expected {want}"
                )
        src_cls, tgt_cls = self.get(source), self.get(target)

        for d in self.differentials:
            if d.page != page:
                continue
            if d.source == source:
                raise DuplicateKill(f"{source} already supports a d{page}")
            if d.target == target:
                raise DuplicateKill(f"{target} already receives a d{page}")

        gens = []
        for ref, cls in ((source, src_cls), (target, tgt_cls)):
            gen = cls.generation_at(page)
            if gen is None:
                raise DeadClass(f"{ref} is not alive on page {page}")
            if gen.died != INFINITY and gen.died != page:
                raise DuplicateKill(f"{ref} is already killed on page {gen.died}")
            gens.append(gen)
        for gen in gens:
            gen.died = page

        diff = Differential(page, source, target)
        self.differentials.append(diff)
        return diff

    def replace_class(self, ref: ClassRef | tuple, page: int) -> None:
        self._check_mutable()
        cls = self.get(ref)
        if cls.latest.died != page:
            raise NotDead(
                f"{cls.ref} latest generation did not die on page {page} "
                f"(died: {cls.latest.died})"
            )
        cls.generations.append(Generation(born=page + 1))

    def add_structline(
        self,
        source: ClassRef | tuple,
        target: ClassRef | tuple,
        *,
        label: str | None = None,
        page: int | None = None,
    ) -> StructLine:
        self._check_mutable()
        source, target = _as_ref(source), _as_ref(target)
        a, b = self.get(source), self.get(target)
        if page is None:
            page = max(a.latest.born, b.latest.born)
        if page < FIRST_PAGE:
            raise InvalidPage(f"page {page} < {FIRST_PAGE}")
        line = StructLine(source, target, label, page)
        self.structlines.append(line)
        return line

    # -- page semantics --

    def visible_classes(self, page: int) -> list[tuple[ClassRef, Generation]]:
        if page < FIRST_PAGE:
            raise InvalidPage(f"page {page} < {FIRST_PAGE}")
        out = []
        for ref in sorted(self.classes):
            gen = self.classes[ref].generation_at(page)
            if gen is not None:
                out.append((ref, gen))
        return out

    def visible_edges(
        self, page: int, page_max: int | None = None
    ) -> tuple[list[Differential], list[StructLine]]:
        if page < FIRST_PAGE:
            raise InvalidPage(f"page {page} < {FIRST_PAGE}")
        if page_max is None:
            page_max = page
        if page_max < page:
            raise InvalidPage(f"page_max {page_max} < page {page}")
        diffs = sorted(d for d in self.differentials if page <= d.page <= page_max)
        lines = [
            s
            for s in self.structlines
            if page >= s.born_page
            and self.classes[s.source].visible(page)
            and self.classes[s.target].visible(page)
        ]
        return diffs, lines

    def permanent_classes(self) -> list[ChartClass]:
        """Classes whose latest generation survives every page."""
        return [self.classes[r] for r in sorted(self.classes) if self.classes[r].latest.permanent]

    def shift(self, dstem: int, dfil: int) -> Chart:
        out = Chart(self.grading, strict_degree=self.strict_degree)
        for ref in sorted(self.classes):
            cls = self.classes[ref]
            moved = ChartClass(
                cls.position.shifted(dstem, dfil),
                cls.index,
                copy.deepcopy(cls.generations),
                cls.name,
                cls.tag,
            )
            out.classes[moved.ref] = moved
        out.differentials = [
            Differential(d.page, d.source.shifted(dstem, dfil), d.target.shifted(dstem, dfil))
            for d in self.differentials
        ]
        out.structlines = [
            StructLine(
                s.source.shifted(dstem, dfil), s.target.shifted(dstem, dfil), s.label, s.born_page
            )
            for s in self.structlines
        ]
        out.sealed = self.sealed
        return out

    def positions(self) -> Iterable[Bidegree]:
        return sorted({c.position for c in self.classes.values()})
