import json
import subprocess
import sys
from pathlib import Path

import pytest

from cyclesolve.cli import main
from cyclesolve.instances import load_example2, render_matrix


def run_cli(*args) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "cyclesolve", *args],
                          capture_output=True, text=True)


@pytest.fixture(scope="module")
def ex2_file(tmp_path_factory) -> Path:
    p = tmp_path_factory.mktemp("mats") / "example2.mat"
    p.write_text(render_matrix(load_example2()))
    return p


class TestSolve:
    def test_text_report(self, ex2_file):
        r = run_cli("solve", str(ex2_file), "--phases", "123")
        assert r.returncode == 0
        assert "ap_value: 212" in r.stdout
        assert "tour_value: 213" in r.stdout
        assert "exactness=certified_optimal" in r.stdout

    def test_json_report(self, ex2_file):
        r = run_cli("solve", str(ex2_file), "--format", "json")
        assert r.returncode == 0
        data = json.loads(r.stdout)
        assert data["ap_value"] == 212
        assert data["tour_value"] == 213

    def test_trace_json_lines(self, ex2_file):
        r = run_cli("solve", str(ex2_file), "--trace", "json", "--format", "json")
        lines = r.stdout.strip().splitlines()
        events = [json.loads(x) for x in lines[:-1]]
        assert any(e["event"] == "greedy_apply" for e in events)
        assert any(e["event"] == "negative_cycle_apply" for e in events)
        assert any(e["event"] == "patch" for e in events)

    def test_bundled_name_fallback(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert main(["solve", "example2.mat", "--phases", "12"]) == 0

    def test_missing_file_exit_2(self):
        r = run_cli("solve", "/nonexistent/x.mat")
        assert r.returncode == 2
        assert "error" in r.stderr

    def test_bad_instance_exit_2(self, tmp_path):
        p = tmp_path / "bad.mat"
        p.write_text("2\ninf 5\n3 4\n")
        r = run_cli("solve", str(p))
        assert r.returncode == 2

    def test_usage_error_exit_2(self):
        r = run_cli("solve")
        assert r.returncode == 2


class TestVerify:
    def test_agreement(self, ex2_file):
        r = run_cli("verify", str(ex2_file))
        assert r.returncode == 0
        assert "solver == oracle" in r.stdout


class TestGen:
    def test_gen_to_file_and_solve(self, tmp_path):
        out = tmp_path / "g.mat"
        r = run_cli("gen", "--n", "2", "--max", "9", "--seed", "0", "-o", str(out))
        assert r.returncode == 0
        r2 = run_cli("solve", str(out), "--format", "json")
        data = json.loads(r2.stdout)
        lines = out.read_text().splitlines()
        d12 = int(lines[1].split()[1])
        d21 = int(lines[2].split()[0])
        assert data["tour_value"] == d12 + d21

    def test_gen_deterministic(self):
        a = run_cli("gen", "--n", "5", "--max", "99", "--seed", "42")
        b = run_cli("gen", "--n", "5", "--max", "99", "--seed", "42")
        assert a.stdout == b.stdout


class TestReplay:
    def test_replay_passes(self):
        r = run_cli("replay-example2")
        assert r.returncode == 0
        assert "tour_value: 213" in r.stdout


class TestDeterminism:
    def test_byte_identical_reports(self, ex2_file):
        args = ("solve", str(ex2_file), "--seed", "7", "--restarts", "2",
                "--trace", "json", "--format", "json")
        a = run_cli(*args)
        b = run_cli(*args)
        assert a.stdout == b.stdout
        assert a.returncode == b.returncode == 0
