"""Tests for the command-line surface and its exit codes."""
import json
import re

import pytest
from click.testing import CliRunner

from cli import cli
from table_parser import parse_table
from tests.conftest import DATASETS_DIR, load_bundled

NODE_LINE = re.compile(r'^\s+"[^"]+";$')


def run(*args):
    runner = CliRunner()
    return runner.invoke(cli, ["--datasets-path", str(DATASETS_DIR), *args])


class TestVerifyCommand:
    def test_help(self):
        result = run("verify", "--help")
        assert result.exit_code == 0
        assert "--fano-index-override" in result.output

    def test_case2_holds(self):
        result = run("verify", "bundled:case2", "--json")
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["holds"] is True
        assert report["table"]["fano_index"] == 7
        assert report["schema_version"] == 1
        assert report["lemma_route"]["r_cycle"]["length"] == 7

    def test_p1_delta0(self):
        result = run("verify", "bundled:p1", "--json")
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["spectral_route"]["delta0"] == pytest.approx(2.0, abs=1e-10)

    def test_negative_control_exits_1(self):
        result = run("verify", "bundled:p1", "--fano-index-override", "3")
        assert result.exit_code == 1
        assert "Property O: fails" in result.stdout

    def test_human_report(self):
        result = run("verify", "bundled:case5")
        assert result.exit_code == 0
        assert "cycle of length 4: one -> h -> a1 -> a4 -> one" in result.stdout
        assert "recorded witness valid: True" in result.stdout
        assert "Property O: holds" in result.stdout

    def test_tolerance_flag(self):
        result = run("verify", "bundled:p2", "--json", "--tol", "1e-6")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["tolerance"] == 1e-6

    def test_missing_file_exits_2(self):
        result = run("verify", "missing.txt")
        assert result.exit_code == 2

    def test_ungraded_table_exits_2(self, write_table):
        path = write_table(
            "name broken\nfano_index 2\nc1_multiple 2\n"
            "basis one 0\nbasis h 1\n"
            "chev one : 1 q0 h\nchev h : 1 q0 one\n"
        )
        result = run("verify", path, "--json")
        assert result.exit_code == 2
        assert "h->one: wrote q0, expected 1" in result.output

    @pytest.mark.parametrize("override", ["0", "-3"])
    def test_non_positive_fano_index_override_exits_2(self, override):
        result = run("verify", "bundled:p1", "--fano-index-override", override)
        assert result.exit_code == 2
        assert "Invalid value" in result.output

    @pytest.mark.parametrize("tol", ["0", "1", "2.5"])
    def test_tolerance_outside_unit_interval_exits_2(self, tol):
        result = run("verify", "bundled:p1", "--tol", tol)
        assert result.exit_code == 2
        assert "Invalid value" in result.output

    def test_malformed_table_exits_2(self, write_table):
        result = run("verify", write_table("basis one zero\n"))
        assert result.exit_code == 2


class TestVerifyAllCommand:
    def test_all_bundled_hold(self):
        result = run("verify-all", "--json", "--workers", "2")
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        names = [entry["dataset"] for entry in payload["results"]]
        assert names == ["case1_n3", "case2", "case5", "p1", "p2", "p3", "p4", "p5"]
        assert all(entry["exit_code"] == 0 for entry in payload["results"])

    def test_worst_exit_code_wins(self, tmp_path):
        for name in ["p1", "p2"]:
            (tmp_path / f"{name}.txt").write_text(
                (DATASETS_DIR / f"{name}.txt").read_text(encoding="utf-8"), encoding="utf-8"
            )
        (tmp_path / "bad.txt").write_text("name bad\n", encoding="utf-8")
        result = CliRunner().invoke(cli, ["--datasets-path", str(tmp_path), "verify-all"])
        assert result.exit_code == 2
        assert re.search(r"^bad\s+error\s+exit 2", result.stdout, re.M)
        assert re.search(r"^p1\s+holds\s+exit 0", result.stdout, re.M)


class TestGraphCommand:
    def test_case5_dot(self):
        result = run("graph", "bundled:case5", "--dot")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert sum(1 for line in lines if NODE_LINE.match(line)) == 12

    def test_case1_highlight(self):
        result = run("graph", "bundled:case1_n3", "--dot", "--highlight", "a18,a11,a14,a15,a17,a18")
        assert result.exit_code == 0
        assert sum(1 for line in result.stdout.splitlines() if "style=bold" in line) == 5

    def test_invalid_highlight_exits_2(self):
        result = run("graph", "bundled:case5", "--dot", "--highlight", "one,a10,one")
        assert result.exit_code == 2

    def test_summary(self):
        result = run("graph", "bundled:case2")
        assert result.exit_code == 0
        assert "14 vertices, 21 edges" in result.stdout
        assert "period: 7" in result.stdout

    def test_missing_file_exits_2(self):
        result = run("graph", "missing.txt")
        assert result.exit_code == 2


class TestEigsCommand:
    def test_p2_json(self):
        result = run("eigs", "bundled:p2", "--json")
        assert result.exit_code == 0
        table = json.loads(result.stdout)
        assert table["delta0"] == pytest.approx(3.0)
        assert len(table["rows"]) == 3
        assert all(row["on_circle"] for row in table["rows"])
        assert sorted(row["nearest_k"] for row in table["rows"]) == [0, 1, 2]

    def test_zero_fano_index_override_exits_2(self):
        result = run("eigs", "bundled:p1", "--fano-index-override", "0")
        assert result.exit_code == 2
        assert "Invalid value" in result.output

    def test_case5_text(self):
        result = run("eigs", "bundled:case5")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0].startswith("dataset case5: r = 4")
        assert len(lines) == 13
        assert sum(1 for line in lines[1:] if line.startswith("*")) == 4


class TestDumpDatasetCommand:
    def test_dump_one(self, tmp_path):
        result = run("dump-dataset", "case5", "-o", str(tmp_path))
        assert result.exit_code == 0
        written = tmp_path / "case5.txt"
        assert parse_table(written.read_text(encoding="utf-8")) == load_bundled("case5")

    def test_dump_all(self, tmp_path):
        result = run("dump-dataset", "all", "--output-dir", str(tmp_path))
        assert result.exit_code == 0
        assert len(list(tmp_path.glob("*.txt"))) == 8

    def test_dump_unknown_exits_2(self, tmp_path):
        result = run("dump-dataset", "case9", "-o", str(tmp_path))
        assert result.exit_code == 2


def test_eigs_case1_has_five_on_circle():
    result = run("eigs", "bundled:case1_n3", "--json")
    assert result.exit_code == 0
    rows = json.loads(result.stdout)["rows"]
    assert len(rows) == 20
    assert sum(1 for row in rows if row["on_circle"]) == 5
