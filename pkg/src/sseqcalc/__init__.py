"""Exact-arithmetic engine for Adams-style spectral sequence charts."""

from __future__ import annotations

from .chart import (
    Bidegree,
    Chart,
    ChartClass,
    ClassRef,
    Differential,
    Generation,
    Grading,
    GradingKind,
    StructLine,
)
from .dsl import parse, serialize

__all__ = [
    "Bidegree",
    "Chart",
    "ChartClass",
    "ClassRef",
    "Differential",
    "Generation",
    "Grading",
    "GradingKind",
    "StructLine",
    "parse",
    "serialize",
]

__version__ = "0.1.0"
