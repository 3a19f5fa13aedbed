"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line to the terminal,
even when pytest captures output.
"""

from __future__ import annotations

import random
import xml.etree.ElementTree as ET
from collections import Counter
from fractions import Fraction as F

import pytest

from charts import random_adams_chart, random_chart
from sseqcalc import parse, serialize
from sseqcalc.k1local import TwoLocalGroup, k1_sphere, les_order_bound, moore_groups, moore_orders
from sseqcalc.periodic import band_census, c2_periodic_pattern, tile
from sseqcalc.render import RenderOptions, render_svg
from sseqcalc.tau import bockstein_differentials, chart_to_tau, les_exactness_holds, tensor_with_ctau
from sseqcalc.vline import (
    Y2_IMPROVED,
    Y3_IMPROVED,
    Y_PARAMS,
    VlParams,
    combine_cofiber,
    dominates,
    suspend,
    verify_banded,
)

C2_TUPLE = VlParams(F(-3, 2), 1, 25, F(1, 5), 5, 3)


@pytest.fixture
def criterion(capsys):
    """Run a block of checks and print one verdict line for it."""

    class Reporter:
        def __init__(self):
            self.number = None
            self.title = ""

        def __call__(self, number: int, title: str):
            self.number, self.title = number, title
            return self

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            verdict = "PASS" if exc_type is None else "FAIL"
            with capsys.disabled():
                print(f"\ncriterion {self.number}: {verdict} ({self.title})")
            return False

    return Reporter()


def _val2(n: int) -> int:
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    return e


def test_criterion_01_k1_sphere_table(criterion):
    with criterion(1, "K(1)-local sphere table for i in [-1, 200]"):
        assert k1_sphere(-1) == TwoLocalGroup(free_rank=1)
        assert k1_sphere(0) == TwoLocalGroup((1,), 1)
        for k in range(1, 26):
            assert k1_sphere(8 * k - 1) == TwoLocalGroup((4 + _val2(k),))
        fixed = {0: (1,), 1: (1, 1), 2: (1,), 3: (3,), 4: (), 5: (), 6: ()}
        for i in range(1, 201):
            if i % 8 != 7:
                assert k1_sphere(i) == TwoLocalGroup(fixed[i % 8]), i


def test_criterion_02_moore_orders(criterion):
    with criterion(2, "Moore orders (4,8,8,4,2,1,1,2)"):
        orders = moore_orders()
        assert tuple(orders[r] for r in range(8)) == (4, 8, 8, 4, 2, 1, 1, 2)


def test_criterion_03_moore_groups(criterion):
    with criterion(3, "Moore groups table"):
        z = TwoLocalGroup
        want = (z((1, 1)), z((1, 2)), z((1, 2)), z((1, 1)), z((1,)), z(), z(), z((1,)))
        groups = moore_groups()
        assert tuple(groups[r] for r in range(8)) == want


def test_criterion_04_first_combine(criterion):
    with criterion(4, "combine(suspend(Y,1,1), Y) = (-5/2<=1/2,23,1/5,22/5,2)"):
        got = combine_cofiber(suspend(Y_PARAMS, 1, 1), Y_PARAMS)
        assert got == VlParams(F(-5, 2), F(1, 2), 23, F(1, 5), F(22, 5), 2)


def test_criterion_05_second_combine(criterion):
    with criterion(5, "second combine: b, d, r exact; computed tuple dominates stated tuple"):
        got = combine_cofiber(suspend(Y_PARAMS, 2, 2), Y2_IMPROVED)
        stated = VlParams(F(-5, 2), 1, 29, F(1, 5), F(31, 5), 3)
        assert (got.b, got.d, got.r) == (stated.b, stated.d, stated.r)
        assert (got.c, got.v) == (F(26, 5), F(77, 3))
        assert got.c <= stated.c and got.v <= stated.v
        assert dominates(got, stated)


def test_criterion_06_desuspension(criterion):
    with criterion(6, "suspend(Y3, -4, -2) = (-3/2<=1,25,1/5,5,3)"):
        assert Y3_IMPROVED == VlParams(F(-3, 2), 1, 29, F(1, 5), F(31, 5), 3)
        assert suspend(Y3_IMPROVED, -4, -2) == C2_TUPLE


def test_criterion_07_census_duality(criterion):
    with criterion(7, "C(2) census duality on stems 25..97 and verify_banded"):
        chart = tile(c2_periodic_pattern(), (24, 12), (25, 97))
        census = band_census(chart, C2_TUPLE, (25, 97))
        orders = moore_orders()
        for n in range(25, 98):
            assert 2 ** census[n] == orders[n % 8], n
        report = verify_banded(chart, C2_TUPLE, (25, 97), orders)
        assert [c.passed for c in report.conditions] == [True, True, True, True], report.format()


def test_criterion_08_order_budget(criterion):
    with criterion(8, "les_order_bound(2,8,2) false, (4,8,2) true"):
        assert les_order_bound(2, 8, 2) is False
        assert les_order_bound(4, 8, 2) is True


def test_criterion_09_tau_properties(criterion):
    with criterion(9, "1000 random charts: E2 recovery, Bockstein round trip, LES for k=1..5"):
        rng = random.Random(20240613)
        for _ in range(1000):
            chart = random_adams_chart(rng)
            module = chart_to_tau(chart)
            e2 = Counter((c.position.stem, c.position.weight) for c in chart)
            assert tensor_with_ctau(module, 1) == dict(e2)
            want = sorted((d.page, d.source.position, d.target.position) for d in chart.differentials)
            assert bockstein_differentials(module) == want
            for k in range(1, 6):
                assert les_exactness_holds(module, k)


def test_criterion_10_intro_golden(criterion, intro_chart):
    with criterion(10, "intro chart: 4 classes + 1 differential on page 3, 2 classes on page 4"):
        assert len(intro_chart.visible_classes(3)) == 4
        assert len(intro_chart.visible_edges(3)[0]) == 1
        assert len(intro_chart.visible_classes(4)) == 2
        assert intro_chart.visible_edges(4)[0] == []
        for page, circles, arrows in ((3, 4, 1), (4, 2, 0)):
            opts = RenderOptions(page=page, x_range=(0, 3), y_range=(0, 2))
            root = ET.fromstring(render_svg(intro_chart, opts))
            found = Counter(e.get("class") for e in root.iter())
            assert (found["class"], found["differential"]) == (circles, arrows)


def test_criterion_11_parser_round_trip(criterion):
    with criterion(11, "parse(serialize(c)) == c for tiled C(2) and 500 random charts"):
        big = tile(c2_periodic_pattern(), (24, 12), (0, 140))
        assert len({r.stem for r in big.classes}) >= 100
        corpus = [big]
        rng = random.Random(7)
        corpus += [random_chart(rng) for _ in range(500)]
        for chart in corpus:
            text = serialize(chart)
            again = parse(text)
            assert again == chart
            assert serialize(again) == text
