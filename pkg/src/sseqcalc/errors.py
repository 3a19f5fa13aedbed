"""Exception hierarchy shared by every module."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    """Location of a statement in DSL text. Columns are 1-based, end exclusive."""

    line: int
    col_start: int
    col_end: int

    def __str__(self) -> str:
        return f"line {self.line}, columns {self.col_start}-{self.col_end}"


class SseqError(Exception):
    """Base class. ``span`` is filled in when the error comes from parsed text."""

    span: SourceSpan | None = None

    def __str__(self) -> str:
        msg = super().__str__()
        if self.span is not None:
            return f"{msg} ({self.span})"
        return msg


# chart-core
class ChartError(SseqError):
    pass


class DegreeMismatch(ChartError):
    pass


class DeadClass(ChartError):
    pass


class DuplicateKill(ChartError):
    pass


class NotDead(ChartError):
    pass


class UnknownClass(ChartError):
    pass


class InvalidPage(ChartError):
    pass


class SealedChart(ChartError):
    pass


# chart-dsl
class DSLSyntaxError(SseqError):
    pass


class UnknownGrading(SseqError):
    pass


class DuplicateName(SseqError):
    pass


# tau-synthetic
class UnsupportedChart(SseqError):
    pass


# vline-calculus
class SlopeMismatch(SseqError):
    pass


class InvalidParams(SseqError):
    pass


# k1-local
class ZeroValuation(SseqError):
    pass


# periodic
class GradingMismatch(SseqError):
    pass


class PositionClash(SseqError):
    """Never raised: overlay reassigns indices, so marks cannot collide."""


# render
class EmptyRange(SseqError):
    pass


class TooManyClasses(SseqError):
    pass
