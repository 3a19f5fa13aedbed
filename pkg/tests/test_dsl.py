from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charts import load, random_chart
from sseqcalc import parse, serialize
from sseqcalc.chart import Chart, ClassRef, Grading, GradingKind
from sseqcalc.dsl import read_period
from sseqcalc.errors import (
    DeadClass,
    DegreeMismatch,
    DSLSyntaxError,
    DuplicateName,
    NotDead,
    SseqError,
    UnknownGrading,
)


def test_d2_example_matches_built_chart(d2_chart):
    built = Chart(Grading.adams())
    a, b = built.add_class((1, 0)), built.add_class((0, 2))
    built.add_differential(2, a, b)
    assert d2_chart == built
    assert d2_chart.sealed


def test_empty_input_is_missing_grading():
    with pytest.raises(DSLSyntaxError, match="missing grading") as info:
        parse("")
    assert info.value.span.line == 1


def test_first_statement_must_be_grading():
    with pytest.raises(DSLSyntaxError, match="missing grading") as info:
        parse("# comment\nclass (0,0)\n")
    assert info.value.span.line == 2


def test_degree_mismatch_reports_line():
    with pytest.raises(DegreeMismatch) as info:
        parse("grading adams\nclass (0,0)\nd 2 (0,0,0) (0,5,0)")
    assert info.value.span.line == 3
    assert "line 3" in str(info.value)


def test_chart_errors_carry_spans():
    with pytest.raises(DeadClass) as info:
        parse("grading adams\nclass (1,0)\nclass (0,2)\nclass (1,-1)\nd 2 (1,0) (0,2)\nd 3 (1,-1) (0,2)\n")
    assert info.value.span.line == 6
    with pytest.raises(NotDead) as info:
        parse("grading adams\nclass (0,0)\n  replaceclass (0,0) page=2\n")
    assert (info.value.span.line, info.value.span.col_start) == (3, 3)


def test_unknown_grading():
    with pytest.raises(UnknownGrading) as info:
        parse("grading motivic\n")
    assert info.value.span.col_start == 9


def test_duplicate_name():
    with pytest.raises(DuplicateName) as info:
        parse("grading adams\nclass (0,0) name=x\nclass (1,1) name=x\n")
    assert info.value.span.line == 3


@pytest.mark.parametrize(
    "text",
    [
        "grading adams\nclass 0,0\n",
        "grading adams\nclass (0,0,1)\n",
        "grading adams\nclass (0,a)\n",
        "grading adams\nd x (0,0) (1,1)\n",
        "grading adams\nfrobnicate\n",
        "grading adams\nclass (0,0) colour=red\n",
        "grading adams\nclass (0,0)\nlax\n",
        "grading adams\ngrading adams\n",
        "grading custom 1 2 3\n",
        "grading adams\nclass (0,0) name=bad!name\n",
        "grading adams\nclass (0,0) opt key\n",
        "grading adams\nclass (0,0) \"unterminated\n",
    ],
)
def test_syntax_errors_have_spans(text):
    with pytest.raises(SseqError) as info:
        parse(text)
    span = info.value.span
    assert span is not None
    line = text.split("\n")[span.line - 1]
    assert 1 <= span.col_start < span.col_end <= len(line) + 1


def test_grammar_features():
    text = """
    grading custom 0 -1 1 0   # same as adams
    lax
    class ( 0 , 0 ) name=h_1P^2c_0 tag=top opt fill=black label="two words"
    class (0,0)
    class (1,1)
    d 3 (1,1) (0,0,1)
    structline (0,0) (1,1) label="eta" page=3
    """
    chart = parse(text)
    assert chart.grading == Grading.from_coefficients(0, -1, 1, 0)
    assert not chart.strict_degree
    first = chart.get((0, 0, 0))
    assert first.name == "h_1P^2c_0" and first.tag == "top"
    assert first.options == {"fill": "black", "label": "two words"}
    assert chart.differentials[0].target == ClassRef(0, 0, 1)
    assert chart.structlines[0].born_page == 3


def test_serialize_intro_example(intro_chart):
    text = serialize(intro_chart)
    lines = text.splitlines()
    assert lines[0] == "grading serre-cohomological"
    assert sum(ln.startswith("class ") for ln in lines) == 4
    assert sum(ln.startswith("d ") for ln in lines) == 1


def test_names_emitted_as_options():
    chart = Chart()
    chart.add_class((0, 0))
    chart.add_class((1, 1), name="h_1")
    text = serialize(chart)
    assert "class (0,0)\n" in text
    assert "class (1,1) name=h_1\n" in text


def test_replacement_round_trip():
    text = (
        "grading adams\nclass (1,0)\nclass (0,2)\nclass (0,3)\n"
        "d 2 (1,0) (0,2)\nreplaceclass (1,0) page=2\nd 3 (1,0) (0,3)\n"
        "structline (1,0) (0,3)\n"
    )
    chart = parse(text)
    assert [(g.born, g.died) for g in chart.get((1, 0)).generations] == [(2, 2), (3, 3)]
    assert parse(serialize(chart)) == chart


def test_structline_default_page_is_preserved():
    chart = Chart(Grading.adams())
    a, b = chart.add_class((1, 0)), chart.add_class((0, 2))
    c = chart.add_class((2, 5))
    chart.add_structline(a, c)  # born on page 2, before the replacement
    chart.add_differential(2, a, b)
    chart.replace_class(a, 2)
    chart.add_structline(a, c)  # default: page 3
    text = serialize(chart)
    assert "structline (1,0,0) (2,5,0) page=2" in text
    assert "structline (1,0,0) (2,5,0)\n" in text
    assert parse(text) == chart


def test_quoting_of_awkward_values():
    chart = Chart()
    chart.add_class((0, 0), options={"k": 'a "quoted" # (value)=x \\ end'})
    b = chart.add_class((1, 1))
    chart.add_structline(ClassRef(0, 0), b, label="")
    assert parse(serialize(chart)) == chart


def test_bytes_input(d2_chart):
    assert parse(serialize(d2_chart).encode("utf-8")) == d2_chart


def test_period_header():
    assert read_period("# period (8,4)\ngrading adams\n") == (8, 4)
    assert read_period("grading adams\n# period (8,4)\n") is None


@pytest.mark.parametrize(
    "name",
    ["intro.sseq", "d2_example.sseq", "k1_sphere_k3.sseq", "y_tilde.sseq", "y2_overlay.sseq", "y2_shifted_overlay.sseq"],
)
def test_fixtures_round_trip(name):
    chart = load(name)
    assert parse(serialize(chart)) == chart


@settings(max_examples=300)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_round_trip_random(seed):
    chart = random_chart(random.Random(seed))
    text = serialize(chart)
    again = parse(text)
    assert again == chart
    assert serialize(again) == text


@pytest.mark.parametrize("kind", list(GradingKind))
def test_every_grading_serializes(kind):
    g = Grading.from_coefficients(1, 1, 1, 1) if kind is GradingKind.CUSTOM else Grading(kind)
    chart = Chart(g)
    assert parse(serialize(chart)).grading == g
