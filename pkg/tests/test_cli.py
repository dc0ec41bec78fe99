import json
import shutil
import subprocess
import sys

import pytest

from permgrid.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, UsageError, main, parse_basis, parse_perm, plot_ascii, plot_svg
from permgrid.perm import perm
from permgrid.classes.resources import ENV_VAR, resource_dir

FIB_TEXT = """\
alphabet: a b c
initial: s
accepting: a ab
s c c
c b b
b c c
b a a
a c c
a b ab
ab c c
ab a a
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    return code, json.loads(out)


class TestCount:
    def test_series(self, capsys):
        code, d = run_json(capsys, "count", "-b", "2143 4321", "-n", "8")
        assert code == EXIT_OK
        assert d["series"] == [1, 2, 6, 22, 86, 333, 1235, 4339]
        assert d["passed"] and d["command"].startswith("count")

    def test_text_matches_json(self, capsys):
        _, d = run_json(capsys, "count", "-b", "21", "-n", "6")
        code, out, _ = run(capsys, "count", "-b", "21", "-n", "6")
        assert code == EXIT_OK
        assert f"series: {','.join(map(str, d['series']))}" in out
        assert d["series"] == [1] * 6

    def test_empty_basis(self, capsys):
        _, d = run_json(capsys, "count", "-b", "", "-n", "4")
        assert d["series"] == [1, 2, 6, 24]

    @pytest.mark.parametrize("basis", ["21x3", "2143 4y21", "13", "0"])
    def test_bad_basis(self, capsys, basis):
        code, out, err = run(capsys, "count", "-b", basis)
        assert code == EXIT_USAGE and "error" in err and out == ""

    def test_bad_n(self, capsys):
        assert run(capsys, "count", "-b", "21", "-n", "0")[0] == EXIT_USAGE


class TestGf:
    def test_pipeline(self, capsys):
        code, d = run_json(capsys, "gf", "av1324_4312", "--terms", "12")
        assert code == EXIT_OK
        assert d["series"][5:11] == [335, 1266, 4598, 16016, 53579, 172663]
        assert d["series"][:4] == [1, 2, 6, 22]
        assert d["stages_checked"] > 50

    def test_dfa(self, capsys, tmp_path):
        path = tmp_path / "fib.dfa"
        path.write_text(FIB_TEXT)
        code, d = run_json(capsys, "gf", "--dfa", str(path), "--terms", "8")
        assert code == EXIT_OK
        assert d["gf"] == "x^3 / (1 - x - x^2)"
        assert d["series"] == [0, 0, 0, 1, 1, 2, 3, 5]

    def test_usage(self, capsys, tmp_path):
        assert run(capsys, "gf")[0] == EXIT_USAGE
        assert run(capsys, "gf", "av9999")[0] == EXIT_USAGE
        assert run(capsys, "gf", "--dfa", str(tmp_path / "missing.dfa"))[0] == EXIT_USAGE
        assert run(capsys, "gf", "av2143_4312", "--terms", "-1")[0] == EXIT_USAGE

    def test_stage_failure_exit_code(self, capsys, tmp_path, monkeypatch):
        copy = tmp_path / "res"
        shutil.copytree(resource_dir(), copy)
        (copy / "fixtures" / "av2143_4312" / "s_E.gf").write_text("x^4\n")
        monkeypatch.setenv(ENV_VAR, str(copy))
        code, d = run_json(capsys, "gf", "av2143_4312")
        assert code == EXIT_FAIL and not d["passed"]
        assert d["stages"][0]["name"] == "s_E"
        code, d = run_json(capsys, "gf", "av2143_4312", "--no-check")
        assert code == EXIT_OK


class TestVerify:
    def test_structure(self, capsys):
        code, d = run_json(capsys, "verify", "structure", "-n", "6")
        assert code == EXIT_OK
        assert len(d["stages"]) == 6 and all(s["passed"] for s in d["stages"])

    def test_all_text(self, capsys):
        code, out, _ = run(capsys, "verify", "-n", "5")
        assert code == EXIT_OK
        assert "passed: True" in out and "FAIL" not in out
        assert "[ok  ] encoding:X6x6" in out

    @pytest.mark.parametrize("n", ["0", "11"])
    def test_range(self, capsys, n):
        assert run(capsys, "verify", "-n", n)[0] == EXIT_USAGE

    def test_bad_scope(self, capsys):
        assert run(capsys, "verify", "everything")[0] == EXIT_USAGE


class TestPlot:
    def test_gridded(self, capsys):
        code, d = run_json(capsys, "plot", "15 13 16 11 17 10 8 7 12 3 2 14 9 6 5 4 1", "--grid", "G")
        assert code == EXIT_OK
        assert d["col_cuts"] == [5, 12] and d["row_cuts"] == [9, 14]
        assert d["diagram"].count("o") == 17

    def test_not_griddable(self, capsys):
        code, d = run_json(capsys, "plot", "2413", "--grid", "wedge")
        assert code == EXIT_OK and "not griddable" in d["note"]

    def test_svg(self, capsys):
        code, d = run_json(capsys, "plot", "132", "--grid", "wedge", "--format", "svg")
        assert d["diagram"].startswith("<svg") and d["diagram"].count("<circle") == 3
        assert d["diagram"].count("<line") == 1

    def test_bad_matrix(self, capsys, tmp_path):
        bad = tmp_path / "bad.matrix"
        bad.write_text("1 2\n")
        assert run(capsys, "plot", "12", "--grid", str(bad))[0] == EXIT_USAGE

    def test_ascii_layout(self):
        assert plot_ascii(perm("21")) == " o\n   o"
        assert plot_ascii(perm("132"), [1]) == "  |o\n  |  o\n o|"
        assert "<line" in plot_svg(perm("1"), [], [0])


class TestParsing:
    def test_perm(self):
        assert parse_perm("3 1 2") == perm("312")
        with pytest.raises(UsageError, match="position 2"):
            parse_perm("1x2")

    def test_basis(self):
        assert parse_basis("12, 21") == [perm("12"), perm("21")]
        with pytest.raises(UsageError, match="basis element 2.*column 4"):
            parse_basis("12 2x1")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "permgrid", "count", "-b", "12", "-n", "3"], capture_output=True, text=True)
    assert out.returncode == 0 and "series: 1,1,1" in out.stdout


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == EXIT_OK
