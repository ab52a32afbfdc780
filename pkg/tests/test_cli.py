import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from bargmann import cli
from bargmann.algebra import single_term, z_var

SRC = str(Path(__file__).resolve().parents[1] / "src")


def write_spec(tmp_path, **overrides):
    spec = {"n_sites": 2, "spin": "1/2", "jx": 1.0, "jy": 1.0, "jz": 1.0,
            "boundary": "open", "hbar": 1, "mode": "compositional"}
    spec.update(overrides)
    p = tmp_path / "chain.json"
    p.write_text(json.dumps(spec))
    return str(p)


def write_state(tmp_path, entries, name="state.json"):
    p = tmp_path / name
    p.write_text(json.dumps({"amplitudes": entries}))
    return str(p)


def run_cli(args):
    env = dict(os.environ, PYTHONPATH=SRC + os.pathsep + os.environ.get("PYTHONPATH", ""))
    return subprocess.run([sys.executable, "-m", "bargmann.cli", *args],
                          env=env, capture_output=True)


class TestBasis:
    def test_spin_one_single_site(self, tmp_path, capsys):
        spec = write_spec(tmp_path, n_sites=1, spin="1")
        assert cli.main(["basis", "--spec", spec]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert len(lines) == 3
        assert lines[0].startswith("0: w[0]^2")
        assert lines[1].startswith("1: z[0] * w[0]")
        assert lines[2].startswith("2: z[0]^2")

    def test_spin_zero_single_site(self, tmp_path, capsys):
        spec = write_spec(tmp_path, n_sites=1, spin="0")
        assert cli.main(["basis", "--spec", spec]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines == ["0: 1 | (j=0, m=0) | total_m = 0"]

    def test_three_sites_order(self, tmp_path, capsys):
        spec = write_spec(tmp_path, n_sites=3)
        assert cli.main(["basis", "--spec", spec]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert len(lines) == 8
        assert lines[0].split("|")[0].strip() == "0: w[0] * w[1] * w[2]"
        assert lines[7].split("|")[0].strip() == "7: z[0] * z[1] * z[2]"


class TestDiag:
    def test_spectrum_json(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        assert cli.main(["diag", "--spec", spec]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["eigenvalues"] == pytest.approx([-0.75, 0.25, 0.25, 0.25])

    def test_zero_couplings(self, tmp_path, capsys):
        spec = write_spec(tmp_path, jx=0.0, jy=0.0, jz=0.0)
        assert cli.main(["diag", "--spec", spec]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["eigenvalues"] == [0.0, 0.0, 0.0, 0.0]

    def test_csv_format(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        assert cli.main(["diag", "--spec", spec, "--format", "csv"]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "index,eigenvalue"
        assert len(lines) == 5

    def test_out_file(self, tmp_path):
        spec = write_spec(tmp_path)
        out = tmp_path / "spectrum.json"
        assert cli.main(["diag", "--spec", spec, "--out", str(out)]) == 0
        assert json.loads(out.read_text())["residual_bound"] >= 0

    def test_dimension_cap_exit_3(self, tmp_path, monkeypatch):
        spec = write_spec(tmp_path, n_sites=16)
        assert cli.main(["diag", "--spec", spec]) == 3
        # env var override shrinks the cap below a tiny chain
        monkeypatch.setenv("BARGMANN_MAX_DIM", "2")
        small = write_spec(tmp_path, n_sites=2)
        assert cli.main(["diag", "--spec", small]) == 3

    def test_malformed_spec_exit_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert cli.main(["diag", "--spec", str(bad)]) == 2
        missing = tmp_path / "missing.json"
        missing.write_text(json.dumps({"n_sites": 2}))
        assert cli.main(["diag", "--spec", str(missing)]) == 2
        assert cli.main(["diag", "--spec", str(tmp_path / "nope.json")]) == 2

    def test_sector_violation_exit_4(self, tmp_path, monkeypatch):
        import bargmann.cli as climod
        spec = write_spec(tmp_path)
        monkeypatch.setattr(climod, "build_hamiltonian",
                            lambda s: single_term(1, {z_var(0): 1}, {}))
        assert climod.main(["diag", "--spec", spec]) == 4


class TestThermo:
    def test_single_site_entropy_ln2(self, tmp_path, capsys):
        spec = write_spec(tmp_path, n_sites=1)
        assert cli.main(["thermo", "--spec", spec, "--temps", "0.5,1,2"]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "T,Z,F,S,E_mean"
        for row in lines[1:]:
            s_col = float(row.split(",")[3])
            assert s_col == pytest.approx(math.log(2), rel=1e-9)

    def test_high_t_log_dim(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        assert cli.main(["thermo", "--spec", spec, "--temps", "1e6"]) == 0
        row = capsys.readouterr().out.strip().split("\n")[1]
        assert float(row.split(",")[3]) == pytest.approx(math.log(4), rel=1e-6)

    def test_empty_grid_header_only(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        assert cli.main(["thermo", "--spec", spec, "--temps", ""]) == 0
        assert capsys.readouterr().out == "T,Z,F,S,E_mean\n"

    def test_log_grid(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        assert cli.main(["thermo", "--spec", spec, "--tmin", "0.1", "--tmax", "10",
                         "--tpoints", "5"]) == 0
        assert len(capsys.readouterr().out.strip().split("\n")) == 6

    def test_nonpositive_temperature_exit_2(self, tmp_path):
        spec = write_spec(tmp_path)
        assert cli.main(["thermo", "--spec", spec, "--temps", "1,-2"]) == 2
        assert cli.main(["thermo", "--spec", spec, "--temps", "0"]) == 2

    def test_json_format(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        assert cli.main(["thermo", "--spec", spec, "--temps", "1",
                         "--format", "json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["points"][0]["Z"] == pytest.approx(math.exp(0.75) + 3 * math.exp(-0.25))


class TestVerify:
    def test_pass(self, tmp_path, capsys):
        spec = write_spec(tmp_path)
        assert cli.main(["verify", "--spec", spec, "--random-trials", "3"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["passed"] is True
        assert len(obj["random_trials"]) == 3
        assert all(t["passed"] for t in obj["random_trials"])

    def test_paper_literal_reports_difference(self, tmp_path, capsys):
        spec = write_spec(tmp_path, mode="paper_literal")
        code = cli.main(["verify", "--spec", spec])
        obj = json.loads(capsys.readouterr().out)
        assert obj["mode"] == "paper_literal"
        assert len(obj["term_difference"]) == 2  # one bond, two unmatched terms
        assert code == 1  # the literal z-line changes the spectrum

    def test_mode_override_flag(self, tmp_path, capsys):
        spec = write_spec(tmp_path, mode="compositional")
        assert cli.main(["verify", "--spec", spec, "--mode", "paper_literal"]) == 1
        obj = json.loads(capsys.readouterr().out)
        assert "term_difference" in obj

    def test_xxz_four_sites(self, tmp_path, capsys):
        spec = write_spec(tmp_path, n_sites=4, jx=1.0, jy=1.0, jz=0.5)
        assert cli.main(["verify", "--spec", spec, "--tol", "1e-9"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["max_abs_diff"] <= 1e-9

    def test_corrupted_pipeline_fails(self, tmp_path, capsys, monkeypatch):
        import bargmann.cli as climod
        from bargmann.oracle import oracle_hamiltonian as real_oracle
        spec = write_spec(tmp_path)
        monkeypatch.setattr(climod, "oracle_hamiltonian",
                            lambda s, max_dim: real_oracle(s, max_dim=max_dim) * 1.5)
        assert climod.main(["verify", "--spec", spec]) == 1
        obj = json.loads(capsys.readouterr().out)
        assert obj["passed"] is False
        assert obj["max_abs_diff"] > 0


class TestApply:
    def test_raising_operator(self, tmp_path, capsys):
        state = write_state(tmp_path, [{"monomial": "z[0] * w[0]", "re": 1.0, "im": 0.0}])
        assert cli.main(["apply", "--operator", "z[0]*dw[0]", "--state", state]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["amplitudes"] == [
            {"monomial": "z[0]^2", "re": pytest.approx(math.sqrt(2)), "im": 0.0}]

    def test_zero_operator(self, tmp_path, capsys):
        state = write_state(tmp_path, [{"monomial": "z[0]", "re": 1.0, "im": 0.0}])
        assert cli.main(["apply", "--operator", "0", "--state", state]) == 0
        assert json.loads(capsys.readouterr().out) == {"amplitudes": []}

    def test_casimir_expectation(self, tmp_path, capsys):
        state = write_state(tmp_path, [{"monomial": "z[0]^2", "re": 1.0, "im": 0.0}])
        op = ("(1/2)*(z[0]*dw[0]*w[0]*dz[0] + w[0]*dz[0]*z[0]*dw[0])"
              " + (1/4)*(z[0]*dz[0] - w[0]*dw[0])^2")
        assert cli.main(["apply", "--operator", op, "--state", state, "--expect"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["expectation"]["re"] == pytest.approx(2.0)  # j=1 Casimir
        assert obj["expectation"]["im"] == pytest.approx(0.0)

    def test_parse_error_exit_2_with_span(self, tmp_path, capsys):
        state = write_state(tmp_path, [{"monomial": "z[0]", "re": 1.0, "im": 0.0}])
        assert cli.main(["apply", "--operator", "z[0]*&", "--state", state]) == 2
        err = capsys.readouterr().err
        assert "^" in err and "5..6" in err

    def test_expectation_requires_normalized(self, tmp_path):
        state = write_state(tmp_path, [{"monomial": "z[0]", "re": 2.0, "im": 0.0}])
        assert cli.main(["apply", "--operator", "z[0]*dz[0]", "--state", state,
                         "--expect"]) == 2


class TestHusimi:
    def test_vacuum(self, tmp_path, capsys):
        state = write_state(tmp_path, [{"monomial": "1", "re": 1.0, "im": 0.0}])
        points = tmp_path / "points.json"
        points.write_text(json.dumps({"variables": ["z[0]"],
                                      "points": [[[0.0, 0.0]], [[1.0, 0.0]]]}))
        assert cli.main(["husimi", "--state", state, "--points", str(points)]) == 0
        vals = json.loads(capsys.readouterr().out)
        assert vals[0] == pytest.approx(1 / math.pi, rel=1e-12)
        assert vals[1] == pytest.approx(math.exp(-1) / math.pi, rel=1e-12)

    def test_not_normalized_exit_2(self, tmp_path):
        state = write_state(tmp_path, [{"monomial": "z[0]", "re": 3.0, "im": 0.0}])
        points = tmp_path / "points.json"
        points.write_text(json.dumps({"points": [[[0.0, 0.0]]]}))
        assert cli.main(["husimi", "--state", state, "--points", str(points)]) == 2


class TestDeterminism:
    def test_byte_identical_runs(self, tmp_path):
        spec = write_spec(tmp_path, jx=0.83, jy=-1.2, jz=0.4, n_sites=3)
        args = ["verify", "--spec", spec, "--random-trials", "2", "--seed", "7"]
        r1 = run_cli(args)
        r2 = run_cli(args)
        assert r1.returncode == r2.returncode == 0
        assert r1.stdout == r2.stdout
        d1 = run_cli(["diag", "--spec", spec])
        d2 = run_cli(["diag", "--spec", spec])
        assert d1.stdout == d2.stdout and d1.returncode == 0

    def test_seed_changes_trials(self, tmp_path):
        spec = write_spec(tmp_path)
        a = run_cli(["verify", "--spec", spec, "--random-trials", "2", "--seed", "1"])
        b = run_cli(["verify", "--spec", spec, "--random-trials", "2", "--seed", "2"])
        assert a.stdout != b.stdout


class TestExitCodes:
    def test_distinct_documented_codes(self, tmp_path):
        # 0 covered above; 2/3/4 mapped to distinct classes
        bad = tmp_path / "bad.json"
        bad.write_text("[]")
        assert cli.main(["basis", "--spec", str(bad)]) == 2
        big = write_spec(tmp_path, n_sites=16)
        assert cli.main(["verify", "--spec", str(big)]) == 3

    def test_unknown_subcommand_nonzero(self):
        r = run_cli(["frobnicate"])
        assert r.returncode != 0
