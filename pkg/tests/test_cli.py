"""Command-line interface: parsing, output formats, determinism, exit codes."""

import csv
import io
import json

import numpy as np
import pytest

from spectralrisk import ExponentialSpectrum, QuadratureRule, STANDARD_NORMAL, srm
from spectralrisk.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _rows(text):
    reader = csv.DictReader(io.StringIO(text))
    return list(reader)


class TestCompute:
    def test_single_exponential_value(self, capsys):
        code, out, _ = _run(capsys, "compute", "--dist", "normal:0,1",
                            "--spectrum", "exp:5", "--rule", "simpson",
                            "--n", "10001")
        assert code == 0
        assert out.splitlines()[0] == "a,srm_value,rule,n,elapsed_seconds"
        rows = _rows(out)
        assert len(rows) == 1
        direct = srm(ExponentialSpectrum(5.0), STANDARD_NORMAL,
                     QuadratureRule.SIMPSON, 10001).value
        assert float(rows[0]["srm_value"]) == direct
        assert rows[0]["rule"] == "simpson"
        assert rows[0]["n"] == "10001"

    def test_sweep_is_monotone(self, capsys):
        code, out, _ = _run(capsys, "compute", "--spectrum", "exp:5",
                            "--sweep-a", "1:100:99", "--n", "10001")
        assert code == 0
        rows = _rows(out)
        assert len(rows) == 99
        values = [float(r["srm_value"]) for r in rows]
        assert all(x < y for x, y in zip(values, values[1:]))

    def test_es_closed_form(self, capsys):
        code, out, _ = _run(capsys, "compute", "--spectrum", "es:0.95",
                            "--mode", "closed-form")
        assert code == 0
        rows = _rows(out)
        assert float(rows[0]["srm_value"]) == pytest.approx(2.0627128, abs=1e-6)
        assert rows[0]["mode"] == "closed_form"
        assert rows[0]["rule"] == ""
        assert rows[0]["n"] == ""

    def test_es_quadrature(self, capsys):
        code, out, _ = _run(capsys, "compute", "--spectrum", "es:0.95",
                            "--mode", "quadrature", "--n", "10001")
        assert code == 0
        rows = _rows(out)
        assert float(rows[0]["srm_value"]) == pytest.approx(2.0627128, abs=2e-3)
        assert rows[0]["rule"] == "simpson"

    def test_sweep_rejected_for_es(self, capsys):
        code, _, err = _run(capsys, "compute", "--spectrum", "es:0.95",
                            "--sweep-a", "1:10:5")
        assert code == 3
        assert "error:" in err


class TestConverge:
    def test_bias_pattern_for_simpson(self, capsys):
        code, out, err = _run(capsys, "converge", "--rules", "simpson",
                              "--n-list", "1001,10001", "--spectrum", "exp:5")
        assert code == 0
        assert out.splitlines()[0] == "rule,n,estimate,pct_error,elapsed_seconds"
        assert "# reference_srm=" in err
        rows = _rows(out)
        pct = {int(r["n"]): float(r["pct_error"]) for r in rows}
        assert -1.55 * 2.5 <= pct[1001] <= -1.55 / 2.5
        assert -0.18 * 2.5 <= pct[10001] <= -0.18 / 2.5

    def test_elapsed_increases_with_n(self, capsys):
        code, out, _ = _run(capsys, "converge", "--rules", "simpson",
                            "--n-list", "1001,100001", "--spectrum", "exp:5")
        assert code == 0
        rows = _rows(out)
        assert float(rows[0]["elapsed_seconds"]) < float(rows[1]["elapsed_seconds"])

    def test_all_rules_converge(self, capsys):
        code, out, _ = _run(capsys, "converge", "--rules",
                            "trapezoid,simpson,niederreiter,weyl",
                            "--n-list", "101..20001:5", "--spectrum", "exp:5")
        assert code == 0
        rows = _rows(out)
        rules = {r["rule"] for r in rows}
        assert rules == {"trapezoid", "simpson", "niederreiter", "weyl"}
        for rule in rules:
            seq = [r for r in rows if r["rule"] == rule]
            assert len(seq) == 5
            # later estimates approach the reference: error shrinks overall
            assert abs(float(seq[-1]["pct_error"])) < abs(float(seq[0]["pct_error"]))

    def test_range_expansion_yields_odd_counts(self, capsys):
        code, out, _ = _run(capsys, "converge", "--rules", "simpson",
                            "--n-list", "101..1001:4", "--spectrum", "exp:5")
        assert code == 0
        ns = [int(r["n"]) for r in _rows(out)]
        assert ns == sorted(ns)
        assert all(n % 2 == 1 for n in ns)

    def test_requires_exponential_spectrum(self, capsys):
        code, _, err = _run(capsys, "converge", "--rules", "simpson",
                            "--n-list", "1001", "--spectrum", "es:0.95")
        assert code == 3
        assert "exp" in err


class TestCi:
    ARGS = ("ci", "--spectrum", "exp:5", "--n", "1001", "--b", "200",
            "--confidence", "0.90", "--seed", "42")

    def test_output_fields_and_determinism(self, capsys):
        code1, out1, err1 = _run(capsys, *self.ARGS)
        code2, out2, _ = _run(capsys, *self.ARGS)
        assert code1 == code2 == 0
        assert out1 == out2
        header = out1.splitlines()[0].split(",")
        assert header[:8] == ["lower", "upper", "std_lower", "std_upper",
                              "estimates_mean", "b", "n", "seed"]
        assert "elapsed" not in out1
        assert "# elapsed_seconds=" in err1
        row = _rows(out1)[0]
        assert float(row["lower"]) <= float(row["estimates_mean"]) <= float(row["upper"])

    @pytest.mark.parametrize("workers", ["1", "4"])
    def test_worker_count_does_not_change_output(self, capsys, workers):
        base_code, base_out, _ = _run(capsys, *self.ARGS, "--workers", "1")
        code, out, _ = _run(capsys, *self.ARGS, "--workers", workers)
        assert base_code == code == 0
        assert out == base_out

    def test_b_floor_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["ci", "--spectrum", "exp:5", "--b", "1"])
        assert exc.value.code == 2

    def test_out_file_bytes_identical(self, tmp_path, capsys):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main([*self.ARGS, "--out", str(p1)]) == 0
        assert main([*self.ARGS, "--out", str(p2)]) == 0
        capsys.readouterr()
        assert p1.read_bytes() == p2.read_bytes()


class TestValidate:
    def test_exponential_passes(self, capsys):
        code, out, _ = _run(capsys, "validate", "--spectrum", "exp:5")
        assert code == 0
        row = _rows(out)[0]
        assert row["all_ok"] == "True"
        assert float(row["normalisation_value"]) == pytest.approx(1.0, abs=1e-8)

    def test_es_passes_at_step_tolerance(self, capsys):
        code, out, _ = _run(capsys, "validate", "--spectrum", "es:0.95",
                            "--tolerance", "1e-3")
        assert code == 0
        assert _rows(out)[0]["all_ok"] == "True"

    def test_zero_risk_aversion_rejected_at_parse(self, capsys):
        code, _, err = _run(capsys, "validate", "--spectrum", "exp:0")
        assert code == 3
        assert "error:" in err

    def test_failing_spectrum_sets_exit_status(self, capsys):
        code, out, _ = _run(capsys, "validate", "--spectrum", "es:0.95",
                            "--tolerance", "1e-12")
        assert code == 1
        assert _rows(out)[0]["all_ok"] == "False"

    def test_weights_out_emits_curve(self, tmp_path, capsys):
        path = tmp_path / "weights.csv"
        code, _, _ = _run(capsys, "validate", "--spectrum", "exp:5",
                          "--grid-size", "101", "--weights-out", str(path))
        assert code == 0
        rows = _rows(path.read_text())
        assert len(rows) == 101
        weights = [float(r["weight"]) for r in rows]
        assert all(x < y for x, y in zip(weights, weights[1:]))
        assert float(rows[0]["p"]) == 0.0
        assert float(rows[-1]["p"]) == 1.0


class TestOutputPlumbing:
    def test_json_round_trips_csv_exactly(self, capsys):
        args = ("compute", "--spectrum", "exp:5", "--n", "1001")
        _, csv_out, _ = _run(capsys, *args, "--format", "csv")
        _, json_out, _ = _run(capsys, *args, "--format", "json")
        csv_row = _rows(csv_out)[0]
        json_row = json.loads(json_out)[0]
        assert float(csv_row["srm_value"]) == json_row["srm_value"]
        assert float(csv_row["a"]) == json_row["a"]
        assert json_row["n"] == 1001

    def test_json_booleans_and_nulls(self, capsys):
        code, out, _ = _run(capsys, "validate", "--spectrum", "exp:5",
                            "--format", "json")
        assert code == 0
        row = json.loads(out)[0]
        assert row["all_ok"] is True
        assert row["positivity_ok"] is True
        _, out2, _ = _run(capsys, "compute", "--spectrum", "es:0.95",
                          "--mode", "closed-form", "--format", "json")
        row2 = json.loads(out2)[0]
        assert row2["rule"] is None
        assert row2["n"] is None

    def test_default_range_expansion(self, capsys):
        code, out, _ = _run(capsys, "converge", "--rules", "weyl",
                            "--n-list", "101..2001", "--spectrum", "exp:5")
        assert code == 0
        ns = [int(r["n"]) for r in _rows(out)]
        assert 10 <= len(ns) <= 20
        assert ns == sorted(ns) and all(n % 2 == 1 for n in ns)

    def test_out_flag_writes_file(self, tmp_path, capsys):
        path = tmp_path / "table.csv"
        code = main(["compute", "--spectrum", "exp:5", "--n", "1001",
                     "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        assert path.read_text().startswith("a,srm_value,rule,n,elapsed_seconds")

    def test_unknown_rule_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["compute", "--spectrum", "exp:5", "--rule", "gauss"])
        assert exc.value.code == 2

    def test_unknown_subcommand_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["explode"])
        assert exc.value.code == 2

    def test_bad_distribution_is_domain_error(self, capsys):
        code, _, err = _run(capsys, "compute", "--spectrum", "exp:5",
                            "--dist", "cauchy:0,1")
        assert code == 3
        assert "cauchy" in err

    def test_even_simpson_n_is_domain_error(self, capsys):
        code, _, err = _run(capsys, "compute", "--spectrum", "exp:5", "--n", "1000")
        assert code == 3
        assert "odd" in err
