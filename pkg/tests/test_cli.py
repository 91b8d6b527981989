import csv
import io
import json
import math

import pytest

from lexinfo.cli import main, simulate

from conftest import fig1a, fig1c

LOG2_3 = 1.584962500721156


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, mat in [("a", fig1a()), ("a3", fig1a(3)), ("c", fig1c())]:
        p = tmp_path / f"{name}.txt"
        p.write_text(mat.to_edge_list())
        paths[name] = p
    empty = tmp_path / "empty.txt"
    empty.write_text("2 4\n")
    paths["empty"] = empty
    bad = tmp_path / "bad.txt"
    bad.write_text("2 4\n0 0\n5 0\n")
    paths["bad"] = bad
    return paths


class TestMeasure:
    def test_fig1a(self, files):
        code, out, _ = run(["measure", str(files["a"])])
        assert code == 0
        data = json.loads(out)
        assert data["i_sr"] == 1.0
        assert data["omega_cost"] is None
        assert data["manifest"]["subcommand"] == "measure"

    def test_fig1c(self, files):
        code, out, _ = run(["measure", str(files["c"]), "--lambda", "0.3"])
        data = json.loads(out)
        assert code == 0 and data["i_sr"] == 0.0 and data["lambda"] == 0.3

    def test_nats(self, files):
        _, out, _ = run(["--log-base", "e", "measure", str(files["a"])])
        assert json.loads(out)["h_s"] == pytest.approx(math.log(2), rel=1e-11)

    def test_empty(self, files):
        code, _, err = run(["measure", str(files["empty"])])
        assert code == 3
        assert "undefined measures for empty mapping" in err

    def test_parse_error(self, files):
        code, _, err = run(["measure", str(files["bad"])])
        assert code == 2 and "line 3" in err

    def test_missing_file(self, tmp_path):
        assert run(["measure", str(tmp_path / "nope.txt")])[0] == 2

    def test_bad_lambda(self, files):
        assert run(["measure", str(files["a"]), "--lambda", "2"])[0] == 2


class TestAttach:
    def test_strategy_a(self, files, tmp_path):
        dest = tmp_path / "out.txt"
        code, out, _ = run(["attach", str(files["a3"]), "--meanings", "2", "--out", str(dest)])
        data = json.loads(out)
        assert code == 0
        assert data["i_sr_after"] == pytest.approx(LOG2_3, abs=1e-11)
        assert dest.read_text() == "3 4\n0 0\n1 1\n2 2\n"

    def test_strategy_b(self, files):
        code, out, _ = run(["attach", str(files["a3"]), "--meanings", "0"])
        data = json.loads(out)
        assert code == 0
        assert data["i_sr_after"] == pytest.approx(LOG2_3 - 2 / 3, abs=1e-11)
        assert data["delta_h_s_given_r"] == pytest.approx(2 / 3, abs=1e-11)
        assert data["predicted_delta_h_s_given_r"] == pytest.approx(2 / 3, abs=1e-11)
        assert (files["a3"].parent / "a3.attached.txt").exists()

    def test_vocabulary_full(self, files):
        assert run(["attach", str(files["a"]), "--meanings", "2"])[0] == 4

    def test_invalid_plan(self, files):
        assert run(["attach", str(files["a3"]), "--meanings", "2,2"])[0] == 2
        assert run(["attach", str(files["a3"]), "--meanings", "9"])[0] == 2
        assert run(["attach", str(files["a3"]), "--meanings", "2", "--word", "0"])[0] == 2


class TestVerify:
    def test_strategy(self):
        code, out, _ = run(["verify", "--vs", "3", "--vr", "3", "--suite", "strategy"])
        data = json.loads(out)
        assert code == 0 and data["passed"] and data["violations"] == []

    def test_appendix_a(self):
        code, out, _ = run(["verify", "--vs", "2", "--vr", "4", "--suite", "appendix-a"])
        data = json.loads(out)
        assert code == 0
        assert data["maximizer_count"] == 18
        assert data["characterization_match"] is True

    @pytest.mark.parametrize("suite", ["appendix-b", "alpha-general", "inequality-chain"])
    def test_other_suites(self, suite):
        assert run(["verify", "--vs", "2", "--vr", "3", "--suite", suite])[0] == 0

    def test_over_cap(self):
        assert run(["verify", "--vs", "5", "--vr", "5", "--suite", "appendix-a"])[0] == 2

    def test_failure_exit(self, monkeypatch):
        from lexinfo import optima

        monkeypatch.setattr(optima, "verify_strategy_theorem", lambda vs, vr: [optima.Violation("x", "")])
        assert run(["verify", "--vs", "2", "--vr", "2", "--suite", "strategy"])[0] == 1


class TestAnneal:
    def test_summary_and_files(self, tmp_path):
        outdir = tmp_path / "run"
        argv = ["anneal", "--vs", "2", "--vr", "2", "--lambda", "0.75", "--steps", "5000",
                "--seed", "1", "--chains", "1", "--out", str(outdir)]
        code, out, _ = run(argv)
        assert code == 0
        summary = json.loads(out)
        assert summary["best_cost"] == -0.5
        assert (outdir / "summary.json").read_text() == out
        rows = list(csv.reader(l for l in (outdir / "chain_000_trajectory.csv").read_text().splitlines()
                               if not l.startswith("#")))
        assert rows[0] == ["step", "temperature", "cost_bits", "m", "linked_words"]
        assert len(rows) > 2

    def test_byte_identical_rerun(self, tmp_path):
        argv = ["anneal", "--vs", "3", "--vr", "3", "--lambda", "0.5", "--steps", "800",
                "--seed", "7", "--chains", "2", "--out", str(tmp_path / "r")]
        run(argv)
        first = {p.name: p.read_bytes() for p in (tmp_path / "r").iterdir()}
        run(argv)
        second = {p.name: p.read_bytes() for p in (tmp_path / "r").iterdir()}
        assert first == second and len(first) == 5

    def test_bad_lambda(self, tmp_path):
        argv = ["anneal", "--vs", "2", "--vr", "2", "--lambda", "1.5", "--out", str(tmp_path)]
        assert run(argv)[0] == 2

    def test_bad_cooling(self, tmp_path):
        argv = ["anneal", "--vs", "2", "--vr", "2", "--lambda", "0.5", "--cooling", "1.2", "--out", str(tmp_path)]
        assert run(argv)[0] == 2


def read_sim(out):
    return list(csv.DictReader(l for l in out.splitlines() if not l.startswith("#")))


class TestSimulate:
    def test_always_a(self):
        code, out, _ = run(["simulate", "--vs", "8", "--vr", "16", "--policy", "always-a", "--steps", "8"])
        rows = read_sim(out)
        assert code == 0 and len(rows) == 8
        assert float(rows[-1]["i_sr"]) == pytest.approx(3.0, abs=1e-11)
        assert all(r["strategy_used"] == "a" for r in rows)
        assert list(rows[0]) == ["step", "strategy_used", "target_meaning", "h_s", "h_s_given_r", "i_sr"]

    def test_greedy_picks_strategy_a(self):
        for lam in (0.1, 0.5, 0.9):
            rows = simulate(8, 6, "greedy-omega", 8, seed=3, lam=lam)
            for r in rows:
                # strategy a is available while fewer than 6 meanings are linked
                if r["step"] <= 6:
                    assert r["strategy_used"] == "a"

    def test_always_a_dominates_always_b(self):
        for seed in range(25):
            a = simulate(8, 16, "always-a", 8, seed)
            b = simulate(8, 16, "always-b-random", 8, seed)
            assert all(ra["i_sr"] >= rb["i_sr"] - 1e-12 for ra, rb in zip(a, b))
            assert b[0]["strategy_used"] == "a"
            assert all(r["strategy_used"] == "b" for r in b[1:])

    def test_random_policy_deterministic(self):
        assert simulate(6, 4, "random", 6, seed=5) == simulate(6, 4, "random", 6, seed=5)

    def test_too_many_steps(self):
        assert run(["simulate", "--vs", "8", "--vr", "16", "--policy", "always-a", "--steps", "9"])[0] == 2

    def test_invalid_policy(self):
        assert run(["simulate", "--vs", "8", "--vr", "16", "--policy", "sometimes"])[0] == 2

    def test_greedy_needs_lambda(self):
        assert run(["simulate", "--vs", "3", "--vr", "3", "--policy", "greedy-omega"])[0] == 2

    def test_to_file(self, tmp_path):
        dest = tmp_path / "sim.csv"
        code, out, _ = run(["simulate", "--vs", "4", "--vr", "4", "--policy", "random", "--out", str(dest)])
        assert code == 0 and out == ""
        assert len(read_sim(dest.read_text())) == 4
