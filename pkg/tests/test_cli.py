import json

import pytest

from girthgreedy.cli import main
from girthgreedy.theory import f_value, solve_u


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestTheory:
    def test_csv_schema_and_values(self, capsys):
        code, out, _ = run(capsys, "theory", "--d", "3", "--r", "1", "--g", "5")
        assert code == 0
        header, row = out.strip().splitlines()
        assert header == "d,r,g,u,f,epsilon,lower_per_n,caro_tuza,akpss,asymptotic"
        cells = row.split(",")
        assert cells[0:3] == ["3", "1", "5"]
        assert float(cells[3]) == pytest.approx(0.5, abs=1e-9)
        assert float(cells[4]) == pytest.approx(0.375, abs=1e-9)
        assert float(cells[5]) == pytest.approx(1.0, rel=1e-9)

    def test_nine_sig_digits(self, capsys):
        _, out, _ = run(capsys, "theory", "--d", "2", "--r", "1")
        u_cell = out.strip().splitlines()[1].split(",")[3]
        assert u_cell == "0.632120559"  # 1 - 1/e at 9 significant digits

    def test_cartesian_product(self, capsys):
        _, out, _ = run(capsys, "theory", "--d", "2", "3", "--r", "1", "2")
        assert len(out.strip().splitlines()) == 5  # header + 4 rows

    def test_json(self, capsys):
        _, out, _ = run(capsys, "theory", "--d", "3", "--r", "1", "--format", "json")
        rows = json.loads(out)
        assert rows[0]["d"] == 3 and rows[0]["epsilon"] is None


class TestSolveAndRecursion:
    def test_solve_u(self, capsys):
        code, out, _ = run(capsys, "solve-u", "--d", "2", "--r", "2")
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert float(row[2]) == pytest.approx(solve_u(2, 2), abs=1e-9)
        assert float(row[3]) == pytest.approx(f_value(2, 2), abs=1e-9)

    def test_recursion_matches_solve_u(self, capsys):
        # recursion exponent d corresponds to degree d+1
        code, out, _ = run(capsys, "recursion", "--d", "2", "--r", "1", "--grid", "2048")
        assert code == 0
        row = dict(zip(*[line.split(",") for line in out.strip().splitlines()]))
        assert row["converged"] == "True" and row["oscillation_ok"] == "True"
        assert float(row["root_prob"]) == pytest.approx(solve_u(3, 1), abs=1e-5)


class TestGenAndGirth:
    def test_gen_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "c.hg"
        code, out, _ = run(capsys, "gen", "--spec", "loosecycle:r=2,k=5", "--out", str(path))
        assert code == 0
        text = path.read_text()
        assert text.startswith("p hg 10 5")
        code, out, _ = run(capsys, "girth", "--input", str(path))
        assert code == 0
        assert out.splitlines()[0] == "girth 5"
        assert out.splitlines()[1].startswith("witness ")

    def test_girth_acyclic(self, capsys):
        code, out, _ = run(capsys, "girth", "--gen", "loosepath:r=2,l=3")
        assert code == 0 and out.strip() == "acyclic"

    def test_girth_needs_instance(self, capsys):
        code, _, err = run(capsys, "girth")
        assert code == 1 and "error:" in err


class TestSimulate:
    def test_csv_schema(self, capsys):
        code, out, _ = run(
            capsys, "simulate", "--gen", "loosecycle:r=1,k=20", "--trials", "100",
            "--seed", "1", "--girth",
        )
        assert code == 0
        header = out.strip().splitlines()[0]
        assert header == (
            "instance,n,d,r,girth,trials,seed,mean_per_n,stderr,var_per_n,f,epsilon,verdict"
        )
        import csv as _csv
        import io as _io

        cells = next(_csv.reader(_io.StringIO(out.strip().splitlines()[1])))
        assert cells[0] == "loosecycle:r=1,k=20"
        assert cells[1] == "20" and cells[4] == "20" and cells[5] == "100"

    def test_seed_determinism_and_hg_seed_env(self, capsys, monkeypatch):
        args = ["simulate", "--gen", "loosecycle:r=2,k=8", "--trials", "200"]
        _, a, _ = run(capsys, *args, "--seed", "9")
        _, b, _ = run(capsys, *args, "--seed", "9")
        assert a == b
        monkeypatch.setenv("HG_SEED", "9")
        _, c, _ = run(capsys, *args)
        assert c == a
        # explicit flag wins over the environment
        _, d, _ = run(capsys, *args, "--seed", "10")
        assert d != a

    def test_check_mode_verdict(self, capsys):
        code, out, _ = run(
            capsys, "simulate", "--gen", "cycle:n=24", "--trials", "500",
            "--seed", "0", "--check", "--format", "json",
        )
        assert code == 0
        row = json.loads(out)[0]
        assert row["verdict"] in ("PASS", "FAIL", "VACUOUS")
        assert row["girth"] == 24


class TestOracle:
    def test_paths(self, capsys):
        code, out, _ = run(capsys, "oracle", "--mode", "paths", "--r", "2", "--l", "2")
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert row == ["2", "2", "8", "1/15"]

    def test_stats_rational_output(self, capsys):
        code, out, _ = run(capsys, "oracle", "--mode", "stats", "--gen", "cycle:n=3")
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert row[1] == "6" and row[2] == "1/1"  # 3! permutations, E[size] = 1
        assert row[3] == "1/3 1/3 1/3"

    def test_alpha(self, capsys):
        code, out, _ = run(capsys, "oracle", "--mode", "alpha", "--gen", "loosecycle:r=2,k=5")
        assert code == 0
        assert out.strip().splitlines()[1].split(",")[1] == "7"

    def test_escape(self, capsys):
        code, out, _ = run(
            capsys, "oracle", "--mode", "escape", "--gen", "loosepath:r=1,l=1",
            "--v", "0", "--h", "0",
        )
        assert code == 0
        assert out.strip().splitlines()[1].split(",")[2] == "1/2"

    def test_oracle_limit_is_domain_error(self, capsys):
        code, _, err = run(capsys, "oracle", "--mode", "stats", "--gen", "cycle:n=30")
        assert code == 1 and "error:" in err


class TestExitCodes:
    def test_usage_error_is_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == 2

    def test_domain_error_is_1(self, capsys):
        code, _, err = run(capsys, "solve-u", "--d", "1", "--r", "1")
        assert code == 1 and "error:" in err

    def test_console_script_installed(self):
        import shutil
        import subprocess

        exe = shutil.which("girthgreedy")
        assert exe is not None
        res = subprocess.run(
            [exe, "solve-u", "--d", "3", "--r", "1"], capture_output=True, text=True
        )
        assert res.returncode == 0 and "0.375" in res.stdout
