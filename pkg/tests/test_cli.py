from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from charts import FIXTURES
from sseqcalc import parse, serialize
from sseqcalc.cli import main
from sseqcalc.periodic import c2_periodic_pattern, tile


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def c2_file(tmp_path):
    path = tmp_path / "c2.sseq"
    path.write_text(serialize(tile(c2_periodic_pattern(), (0, 0), (25, 60))), encoding="utf-8")
    return path


class TestParse:
    def test_canonical_output(self, capsys):
        code, out, _ = run(capsys, "parse", str(FIXTURES / "intro.sseq"))
        assert code == 0
        assert parse(out) == parse((FIXTURES / "intro.sseq").read_text())

    def test_domain_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.sseq"
        bad.write_text("grading adams\nclass (0,0)\nd 2 (0,0,0) (0,5,0)\n")
        code, out, err = run(capsys, "parse", str(bad))
        assert code == 1 and out == ""
        assert "DegreeMismatch" in err and "line 3" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "parse", str(tmp_path / "nope.sseq"))
        assert code == 2 and "cannot read" in err


class TestRender:
    def test_writes_svg(self, capsys, tmp_path):
        out = tmp_path / "intro.svg"
        code, _, _ = run(capsys, "render", str(FIXTURES / "intro.sseq"), "--page", "3", "-o", str(out))
        assert code == 0
        root = ET.fromstring(out.read_bytes())
        circles = [e for e in root.iter() if e.tag.endswith("circle")]
        assert len(circles) == 4

    def test_guides_and_range(self, capsys, tmp_path, c2_file):
        out = tmp_path / "c2.svg"
        code, _, _ = run(
            capsys, "render", str(c2_file), "--page", "2", "--range", "25", "40", "10", "21",
            "--guide", "1/2,-1.5,dashed", "--guide", "0.2,5", "-o", str(out),
        )  # fmt: skip
        assert code == 0
        assert out.read_bytes().count(b'class="guide"') == 2

    def test_stdout(self, capsys):
        code, out, _ = run(capsys, "render", str(FIXTURES / "intro.sseq"), "--page", "4", "-o", "-")
        assert code == 0
        assert out.startswith("<?xml")

    @pytest.mark.parametrize("guide", ["1", "x,1", "1,2,wavy"])
    def test_bad_guide(self, capsys, guide):
        code, _, _ = run(capsys, "render", str(FIXTURES / "intro.sseq"), "--page", "2", "--guide", guide, "-o", "-")
        assert code == 2

    def test_missing_page(self, capsys):
        code, _, err = run(capsys, "render", str(FIXTURES / "intro.sseq"), "-o", "-")
        assert code == 2 and "--page" in err


class TestVline:
    def test_suspend(self, capsys):
        code, out, _ = run(capsys, "vline", "suspend", "(-1.5<=0,15,1/5,13/5,1)", "1", "1")
        assert (code, out) == (0, "(-1<=1/2,16,1/5,17/5,1)\n")

    def test_combine(self, capsys):
        code, out, _ = run(capsys, "vline", "combine", "(-1<=0.5,16,0.2,3.4,1)", "(-1.5<=0,15,0.2,2.6,1)")
        assert (code, out) == (0, "(-5/2<=1/2,23,1/5,22/5,2)\n")

    def test_combine_slope_mismatch(self, capsys):
        code, _, err = run(capsys, "vline", "combine", "(0<=0,0,0,0,1)", "(0<=0,0,1/5,0,1)")
        assert code == 1 and "SlopeMismatch" in err

    def test_dominates(self, capsys):
        assert run(capsys, "vline", "dominates", "(-1.5<=0.5,23,0.2,4.4,2)", "(-2.5<=0.5,23,0.2,4.4,2)")[:2] == (0, "true\n")
        assert run(capsys, "vline", "dominates", "(-2.5<=0.5,23,0.2,4.4,2)", "(-1.5<=0.5,23,0.2,4.4,2)")[:2] == (0, "false\n")

    def test_bad_tuple(self, capsys):
        code, _, _ = run(capsys, "vline", "suspend", "(1,2)", "1", "1")
        assert code == 2


class TestK1:
    def test_sphere(self, capsys):
        assert run(capsys, "k1", "sphere", "15")[:2] == (0, "Z/32\n")
        assert run(capsys, "k1", "sphere", "0")[:2] == (0, "Z/2+Z2\n")

    def test_moore(self, capsys):
        assert run(capsys, "k1", "moore-orders")[:2] == (0, "4,8,8,4,2,1,1,2\n")
        code, out, _ = run(capsys, "k1", "moore-groups")
        lines = out.splitlines()
        assert code == 0 and len(lines) == 8
        assert lines[1].startswith("residue=1 group=2^1+2^2")

    def test_table(self, capsys):
        code, out, _ = run(capsys, "k1", "table", "--from", "-1", "--to", "15")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 17
        assert lines[-1] == "i=15 group=2^5"

    def test_table_reversed(self, capsys):
        assert run(capsys, "k1", "table", "--from", "5", "--to", "1")[0] == 2

    def test_non_integer(self, capsys):
        assert run(capsys, "k1", "sphere", "x")[0] == 2


class TestTile:
    def test_c2(self, capsys):
        code, out, _ = run(capsys, "tile", "--pattern", "c2", "--from", "25", "--to", "40")
        assert code == 0
        assert out.startswith("# period (8,4)\n")
        assert len(parse(out)) == 2 * 12

    def test_to_file(self, capsys, tmp_path):
        path = tmp_path / "y.sseq"
        code, out, _ = run(capsys, "tile", "--pattern", "y", "--from", "27", "--to", "33", "-o", str(path))
        assert code == 0 and out == ""
        assert len(parse(path.read_text())) > 0

    def test_unknown_pattern(self, capsys):
        assert run(capsys, "tile", "--pattern", "ko", "--from", "0", "--to", "1")[0] == 2


class TestVerify:
    def test_pass(self, capsys, c2_file):
        code, out, _ = run(
            capsys, "verify", str(c2_file), "--params", "(-1.5<=1,25,1/5,5,3)",
            "--orders", "4,8,8,4,2,1,1,2", "--stems", "25", "60",
        )  # fmt: skip
        assert code == 0
        assert out.splitlines()[-2] == "result pass"

    def test_fail(self, capsys, c2_file):
        code, out, _ = run(
            capsys, "verify", str(c2_file), "--params", "(-0.5<=1,25,1/5,5,3)",
            "--orders", "4,8,8,4,2,1,1,2", "--stems", "25", "60",
        )  # fmt: skip
        assert code == 1
        assert "condition 2 FAIL" in out and "witness (25," in out

    def test_bad_orders(self, capsys, c2_file):
        code, _, _ = run(capsys, "verify", str(c2_file), "--params", "(0<=1,25,1/5,5,3)", "--orders", "4,x")
        assert code == 2


def test_verify_mahowald(capsys):
    code, out, err = run(capsys, "verify-mahowald")
    assert code == 0
    last = out.splitlines()[-1]
    assert last.startswith("C(2):")
    assert last.endswith("stated=(-3/2<=1,25,1/5,5,3) verdict=computed-dominates-paper")
    assert "all verdicts pass" in err


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["vline"], ["k1", "sphere"]])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err
