"""Command-line interface: exit codes, envelopes, output formats."""

import json
import subprocess
import sys

import pytest

from heckezero.cli import main

LVALUE_ARGS = ["lvalue", "--d", "5", "--delta", "3,1,2",
               "--ideal", "1,0,1,1", "--chi", "q=3;gens=2:1"]


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def run_json(args, capsys):
    code, out = run_cli(args, capsys)
    return code, json.loads(out)


class TestExitCodes:
    def test_success(self, capsys):
        code, _ = run_cli(["field", "--d", "5"], capsys)
        assert code == 0

    def test_validation_error(self, capsys):
        code, _ = run_cli(["field", "--d", "12"], capsys)
        assert code == 2

    def test_bad_ideal(self, capsys):
        code, _ = run_cli(["lvalue", "--d", "5", "--delta", "3,1,2",
                           "--ideal", "3,0,3,1", "--chi", "q=3;gens=2:1"],
                          capsys)
        assert code == 2


class TestEnvelope:
    def test_fields(self, capsys):
        code, doc = run_json(["field", "--d", "5"], capsys)
        assert code == 0
        assert doc["tool"] == "hecke-zero"
        assert doc["subcommand"] == "field"
        assert "elapsed_s" in doc
        assert doc["inputs"]["d"] == 5

    def test_inputs_sorted(self, capsys):
        _, doc = run_json(LVALUE_ARGS, capsys)
        keys = list(doc["inputs"].keys())
        assert keys == sorted(keys)


class TestField:
    def test_d3(self, capsys):
        _, doc = run_json(["field", "--d", "3"], capsys)
        res = doc["results"]
        assert res["class_number"] == 1
        assert res["narrow_class_number"] == 2
        assert res["fundamental_unit"] == {"a": 2, "b": 1, "c": 1, "d": 3}

    def test_d79(self, capsys):
        _, doc = run_json(["field", "--d", "79"], capsys)
        assert doc["results"]["class_number"] == 3
        assert doc["results"]["narrow_class_number"] == 6


class TestLValue:
    def test_oracle(self, capsys):
        code, doc = run_json(LVALUE_ARGS, capsys)
        assert code == 0
        assert doc["results"]["value"]["value"] == "2/3"

    def test_decimal_display(self, capsys):
        _, doc = run_json(LVALUE_ARGS, capsys)
        approx = doc["results"]["value"]["display_decimal_approx"]
        assert approx.startswith("0.6666666666")


class TestCF:
    def test_convert(self, capsys):
        _, doc = run_json(["cf", "convert", "--plus", "2,3"], capsys)
        res = doc["results"]
        assert res["minus_period"] == [4, 2, 2]
        assert res["special_positions"] == [0]

    def test_determinism(self, capsys):
        _, a = run_cli(["cf", "convert", "--plus", "2,3"], capsys)
        _, b = run_cli(["cf", "convert", "--plus", "2,3"], capsys)
        ja, jb = json.loads(a), json.loads(b)
        ja.pop("elapsed_s"), jb.pop("elapsed_s")
        assert ja == jb


class TestLinearity:
    def test_verify(self, capsys):
        code, doc = run_json(["linearity", "verify", "--family", "yokoi",
                              "--chi", "q=3;gens=2:1", "--r", "1",
                              "--k", "0,1,2,3,4,5,6,7"], capsys)
        assert code == 0
        v = doc["results"]["verdicts"]
        assert v["affine_exact"] and v["closed_form_match"]


class TestBiro:
    def test_search(self, capsys):
        code, doc = run_json(["biro", "search", "--q-max", "5",
                              "--p-max", "5"], capsys)
        assert code == 0
        pairs = doc["results"]["pairs"]
        assert len(pairs) == 2
        assert all(p["q"] == 5 and p["p"] == 5 for p in pairs)

    def test_oracle(self, capsys):
        code, doc = run_json(["biro", "oracle", "--family", "yokoi",
                              "--n", "1", "--chi", "q=3;gens=2:1"], capsys)
        assert code == 0
        assert doc["results"]["equal"] is True


class TestOutputOptions:
    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "out.json"
        code = main(["field", "--d", "5", "--out", str(target)])
        capsys.readouterr()
        assert code == 0
        doc = json.loads(target.read_text().splitlines()[0])
        assert doc["results"]["class_number"] == 1

    def test_global_flags_before_subcommand(self, tmp_path, capsys):
        target = tmp_path / "o.json"
        code = main(["--out", str(target), "field", "--d", "5"])
        capsys.readouterr()
        assert code == 0
        assert target.exists()

    def test_csv(self, capsys):
        code, out = run_cli(["biro", "search", "--q-max", "5", "--p-max", "5",
                             "--format", "csv"], capsys)
        assert code == 0
        lines = [l for l in out.strip().splitlines() if l]
        assert len(lines) == 3          # header + two pairs
        assert "q" in lines[0]


class TestFamilyFile:
    def test_json_family(self, tmp_path, capsys):
        spec = {
            "name": "yokoi-file",
            "f_coeffs": [4, 0, 1],
            "delta": {"u_coeffs": [2, 1], "v_coeffs": [1], "w": 2},
            "acf": [{"alpha": 1, "beta": 0}],
            "n_constraints": {"parity": "odd", "forbidden_residues": []},
        }
        f = tmp_path / "fam.json"
        f.write_text(json.dumps(spec))
        code, doc = run_json(["linearity", "verify", "--family", str(f),
                              "--chi", "q=3;gens=2:1", "--r", "1",
                              "--k", "0,1,2,3,4,5,6,7"], capsys)
        assert code == 0
        assert doc["results"]["verdicts"]["affine_exact"]

    def test_malformed_family(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text('{"name": "x"}')
        code, _ = run_cli(["linearity", "verify", "--family", str(f),
                           "--chi", "q=3;gens=2:1", "--r", "1",
                           "--k", "0,1,2,3,4,5,6,7"], capsys)
        assert code == 2


def test_console_script_selftest():
    # run out of process so the entry point itself is exercised
    proc = subprocess.run([sys.executable, "-m", "heckezero.cli", "selftest"],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    assert "criterion 1" in proc.stderr
