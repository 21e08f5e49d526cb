"""File format round trips and CLI behavior, including exit codes."""

import io
from fractions import Fraction

import pytest

from trigvee.catalog import catalog_get
from trigvee.cli import main
from trigvee.errors import DimensionMismatch, ParseError
from trigvee.veefile import (
    config_file_from_configuration,
    parse_config_file,
    render_config_file,
)

F = Fraction

A2_TEXT = """\
dim 2
vector 1 0 mult 1
vector 0 1 mult 1
vector 1 1 mult 1
"""


class TestFileFormat:
    def test_parse_canonical(self):
        cf = parse_config_file(A2_TEXT)
        assert cf.dim == 2
        assert len(cf.entries) == 3
        assert cf.entries[2].coords == (F(1), F(1))
        assert not cf.has_symbols()
        cfg = cf.build()
        assert cfg.gram_det == 3

    def test_symbolic_multiplicity(self):
        cf = parse_config_file("dim 2\nvector 1/2 3/2 mult ?b\nvector 1 0 mult 1\n")
        assert cf.entries[0].symbol == "b"
        assert cf.entries[0].coords == (F(1, 2), F(3, 2))
        assert cf.has_symbols()

    def test_comments_blanks_and_lambda2(self):
        text = "# configuration\n\ndim 2  # two dims\nvector 1 0 mult 1\nvector 0 1 mult 1\nlambda2 36\n"
        cf = parse_config_file(text)
        assert cf.lambda2 == 36

    def test_round_trip_parse_render(self):
        for name in ("A2", "Prop5", "TenVector"):
            cf = config_file_from_configuration(catalog_get(name).cfg, lambda2=None)
            assert parse_config_file(render_config_file(cf)) == cf
        symbolic = parse_config_file("dim 2\nvector 1 0 mult ?a\nvector 0 1 mult 2/3\n")
        assert parse_config_file(render_config_file(symbolic)) == symbolic

    def test_zero_covector_rejected_at_parse(self):
        with pytest.raises(ParseError) as err:
            parse_config_file("dim 2\nvector 0 0 mult 1\n")
        assert err.value.line == 2

    def test_errors(self):
        with pytest.raises(ParseError):
            parse_config_file("vector 1 0 mult 1\n")  # dim missing
        with pytest.raises(ParseError):
            parse_config_file("dim 2\ndim 2\nvector 1 0 mult 1\n")
        with pytest.raises(ParseError):
            parse_config_file("dim 2\nvector 1 0 mult 1\nfrobnicate 3\n")
        with pytest.raises(ParseError):
            parse_config_file("dim 2\nvector 1 0.5 mult 1\n")  # decimals not in grammar
        with pytest.raises(ParseError):
            parse_config_file("dim 2\nvector 1 1/0 mult 1\n")
        with pytest.raises(DimensionMismatch):
            parse_config_file("dim 2\nvector 1 0 1 mult 1\n")


@pytest.fixture
def a2_file(tmp_path):
    path = tmp_path / "a2.vee"
    path.write_text(A2_TEXT)
    return str(path)


@pytest.fixture
def b2bad_file(tmp_path):
    path = tmp_path / "b2bad.vee"
    path.write_text(
        "dim 2\nvector 1 0 mult 1\nvector 0 1 mult 2\nvector 1 1 mult 1\nvector 1 -1 mult 1\n"
    )
    return str(path)


@pytest.fixture
def b2sym_file(tmp_path):
    path = tmp_path / "b2sym.vee"
    path.write_text(
        "dim 2\nvector 1 0 mult ?c1\nvector 0 1 mult ?c2\nvector 1 1 mult ?cp\nvector 1 -1 mult ?cm\n"
    )
    return str(path)


class TestCli:
    def test_check_pass(self, a2_file, capsys):
        assert main(["check", a2_file]) == 0
        out = capsys.readouterr().out
        assert "trig-vee: PASS" in out
        assert "lambda2 = 36" in out

    def test_check_no_solution_exit_1(self, tmp_path, capsys):
        path = tmp_path / "pair.vee"
        path.write_text("dim 2\nvector 1 0 mult 1\nvector 0 1 mult 1\n")
        assert main(["check", str(path)]) == 1
        assert "NO SOLUTION" in capsys.readouterr().out

    def test_series_failure_prints_witness(self, b2bad_file, capsys):
        assert main(["series", b2bad_file]) == 1
        out = capsys.readouterr().out
        assert "residual" in out and "1/12" in out

    def test_lambda(self, a2_file, capsys):
        assert main(["lambda", a2_file, "--report-kv"]) == 0
        out = capsys.readouterr().out
        assert "lambda2 = 36" in out
        assert "lambda2_status = solved" in out

    def test_wdvv_pass_and_perturbed_fail(self, a2_file, tmp_path, capsys):
        assert main(["wdvv", a2_file, "--points", "10", "--seed", "7", "--tol", "1e-8"]) == 0
        perturbed = tmp_path / "a2wrong.vee"
        perturbed.write_text(A2_TEXT + "lambda2 35\n")
        assert main(["wdvv", str(perturbed), "--points", "10", "--seed", "7"]) == 1

    def test_cms(self, a2_file, capsys):
        assert main(["cms", a2_file, "--points", "10", "--seed", "2"]) == 0
        out = capsys.readouterr().out
        assert "cms identity" in out and "PASS" in out

    def test_cms_metric_file(self, a2_file, tmp_path, capsys):
        metric = tmp_path / "metric.txt"
        metric.write_text("1 0\n0 1\n")
        assert main(["cms", a2_file, "--metric", str(metric)]) == 1
        out = capsys.readouterr().out
        assert "metric series condition: FAIL" in out

    def test_constraints_and_family(self, b2sym_file, capsys):
        assert main(["constraints", b2sym_file]) == 0
        out = capsys.readouterr().out
        assert "nondegeneracy" in out
        assert main(["family", b2sym_file, "--set", "c1=t", "--set", "c2=t"]) == 0
        assert main(["family", b2sym_file, "--set", "c1=1", "--set", "c2=2"]) == 1

    def test_search(self, b2sym_file, capsys):
        assert main(["search", b2sym_file, "--fix", "cp", "--seed", "3", "--starts", "4"]) == 0
        out = capsys.readouterr().out
        assert "exactly-verified" in out

    def test_catalog_list_show_export(self, capsys):
        assert main(["catalog", "list"]) == 0
        assert "A2" in capsys.readouterr().out
        assert main(["catalog", "show", "Prop4"]) == 0
        out = capsys.readouterr().out
        assert "486/7" in out
        assert main(["catalog", "export", "A2"]) == 0
        out = capsys.readouterr().out
        assert parse_config_file(out).build().gram_det == 3

    def test_export_check_round_trip(self, tmp_path, capsys, monkeypatch):
        assert main(["catalog", "export", "B2"]) == 0
        exported = capsys.readouterr().out
        monkeypatch.setattr("sys.stdin", io.StringIO(exported))
        assert main(["check", "-"]) == 0
        piped = capsys.readouterr().out
        path = tmp_path / "b2.vee"
        path.write_text(exported)
        assert main(["check", str(path)]) == 0
        assert capsys.readouterr().out == piped

    def test_usage_errors_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.vee"
        bad.write_text("dim 2\nvector 0 0 mult 1\n")
        assert main(["check", str(bad)]) == 2
        assert main(["catalog", "show", "Nope"]) == 2
        assert main(["check", str(tmp_path / "missing.vee")]) == 2
        assert main(["nonsense"]) == 2
        sym = tmp_path / "sym.vee"
        sym.write_text("dim 2\nvector 1 0 mult ?a\nvector 0 1 mult 1\n")
        assert main(["check", str(sym)]) == 2

    def test_report_kv_deterministic(self, a2_file, capsys):
        assert main(["check", a2_file, "--report-kv"]) == 0
        first = capsys.readouterr().out
        assert main(["check", a2_file, "--report-kv"]) == 0
        assert capsys.readouterr().out == first
        assert "lambda2 = 36" in first
