"""Command-line interface: verbs, formats, exit codes, determinism."""

import json

import pytest

from heckezeros import cli, tables


def run(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestZfr:
    def test_order234(self, capsys):
        code, out, _ = run(["zfr", "--case", "order234", "--lambda", "0.9421"], capsys)
        assert code == 0
        assert "lambda_1 >= 0.122742" in out
        assert "side condition OK" in out

    def test_principal_json(self, capsys):
        code, out, _ = run(["zfr", "--case", "principal", "--lambda", "1.291",
                            "--json"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert 0.0873 <= payload["lambda1"] <= 0.0878
        assert payload["side_ok"] and payload["side_limited"]

    def test_order5(self, capsys):
        code, out, _ = run(["zfr", "--case", "order5"], capsys)
        assert code == 0
        assert "0.148882" in out

    def test_missing_lambda_is_computation_error(self, capsys):
        code, _, err = run(["zfr", "--case", "order234"], capsys)
        assert code == 1
        assert "needs --lambda" in err


class TestDh:
    def test_poly_case(self, capsys):
        code, out, _ = run(["dh", "--case", "cc-lp-nonprincipal", "--b", "0.1227",
                            "--lambda", "1.097", "--J", "0.7788"], capsys)
        assert code == 0
        assert "lambda* = 0.739121" in out

    def test_smoothed_case_with_family(self, capsys):
        code, out, _ = run(["dh", "--case", "sz-lp-principal", "--b", "0.05",
                            "--family", "triangle", "--params", "x0=1.5"], capsys)
        assert code == 0
        assert "lambda* =" in out

    def test_family_file(self, capsys, tmp_path):
        path = tmp_path / "weight.cfg"
        path.write_text("# substitute weight\nfamily = autocorrelation\n"
                        "alpha = -0.5\ns = 1.4\n")
        code, out, _ = run(["dh", "--case", "sz-lp-principal", "--b", "0.05",
                            "--family-file", str(path)], capsys)
        assert code == 0
        assert "alpha=-0.5" in out

    def test_no_bound_exit_code(self, capsys):
        code, _, err = run(["dh", "--case", "sz-lp-quadratic", "--b", "0.01",
                            "--family", "triangle", "--params", "x0=2"], capsys)
        assert code == 1
        assert "NoBoundError" in err

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["dh", "--case", "not-a-case", "--b", "0.1"])
        assert exc.value.code == 2


class TestZd:
    def test_direct_family(self, capsys):
        code, out, _ = run(["zd", "--lambda", "0.2", "--family", "triangle",
                            "--params", "x0=6"], capsys)
        assert code == 0
        assert "N <= 4" in out

    def test_precondition_failure(self, capsys):
        code, _, err = run(["zd", "--lambda", "1.5", "--family", "triangle",
                            "--params", "x0=0.2"], capsys)
        assert code == 1
        assert "BoundUnavailableError" in err


class TestTable:
    def test_listing(self, capsys):
        code, out, _ = run(["table"], capsys)
        assert code == 0
        assert "T2:quadratic" in out

    def test_markdown(self, capsys):
        code, out, _ = run(["table", "--name", "T4"], capsys)
        assert code == 0
        assert out.splitlines()[0].startswith("| b |")

    def test_regress_pass(self, capsys):
        code, out, _ = run(["table", "--regress", "T4"], capsys)
        assert code == 0
        assert "36/36 rows pass" in out

    def test_json_round_trips_through_loader(self, capsys):
        code, out, _ = run(["table", "--name", "T4", "--json"], capsys)
        assert code == 0
        clone = tables.from_json(out)
        assert tables.regress(clone) == tables.regress(tables.load_table("T4"))

    def test_csv_round_trip_values(self, capsys):
        code, out, _ = run(["table", "--name", "T2:quadratic", "--csv"], capsys)
        assert code == 0
        assert out.splitlines()[1] == "1e-10,11.51,10.99,.8010"


class TestVerify:
    def test_p4_suite(self, capsys):
        code, out, _ = run(["verify", "--suite", "p4"], capsys)
        assert code == 0
        assert "checks pass" in out


class TestDeterminism:
    def test_byte_identical_output(self, capsys):
        _, out1, _ = run(["optimize", "--case", "sz-lp-quadratic-medium",
                          "--b", "0.1227"], capsys)
        _, out2, _ = run(["optimize", "--case", "sz-lp-quadratic-medium",
                          "--b", "0.1227"], capsys)
        assert out1 == out2

    def test_precision_flag(self, capsys):
        _, out, _ = run(["zfr", "--case", "order234", "--lambda", "0.9421",
                         "--precision", "10"], capsys)
        assert "0.1227420581" in out
