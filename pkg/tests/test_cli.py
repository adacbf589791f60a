"""Command line front end: task dispatch, exit codes, report shape."""

import json

import pytest

from multseq.cli import main
from multseq.problem import canonical_json


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(canonical_json(payload))
    return str(path)


def golden(tmp_path):
    return write(
        tmp_path,
        "golden.json",
        {
            "schema": 1,
            "ring": {"variables": ["x", "y"]},
            "ideals": {"I": ["x"], "K": []},
        },
    )


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCompute:
    def test_golden_sequence(self, tmp_path, capsys):
        code, out, _ = run(capsys, ["--task", "compute", "--input", golden(tmp_path)])
        assert code == 0
        report = json.loads(out)
        assert report["task"] == "compute"
        assert report["sequence"]["entries"] == [0, 1, 0]
        assert report["diagnostics"]["colength_dim"] == 1
        assert report["diagnostics"]["height"] == 1
        assert report["seed"] == 0
        assert report["engine"]["name"] == "multseq"

    def test_reports_are_byte_identical(self, tmp_path, capsys):
        argv = ["--task", "compute", "--input", golden(tmp_path)]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second

    def test_timings_only_with_flag(self, tmp_path, capsys):
        path = golden(tmp_path)
        _, without, _ = run(capsys, ["--task", "compute", "--input", path])
        assert "timings" not in json.loads(without)
        _, with_flag, _ = run(
            capsys, ["--task", "compute", "--input", path, "--timings"]
        )
        assert json.loads(with_flag)["timings"]["total_s"] >= 0

    def test_table_format(self, tmp_path, capsys):
        code, out, _ = run(
            capsys,
            ["--task", "compute", "--input", golden(tmp_path), "--format", "table"],
        )
        assert code == 0
        assert "sequence" in out
        assert "(0, 1, 0)" in out or "0, 1, 0" in out

    def test_flag_overrides_file_params(self, tmp_path, capsys):
        # the certified window rides the top of the table, so the first
        # component of table_shape reads back the effective cap
        path = write(
            tmp_path,
            "p.json",
            {
                "schema": 1,
                "ring": {"variables": ["x", "y"]},
                "ideals": {"I": ["x"], "K": []},
                "params": {"umax": 8},
            },
        )
        _, out, _ = run(capsys, ["--task", "compute", "--input", path])
        assert json.loads(out)["sequence"]["table_shape"][0] == 8
        _, out, _ = run(
            capsys, ["--task", "compute", "--input", path, "--umax", "12"]
        )
        assert json.loads(out)["sequence"]["table_shape"][0] == 12

    def test_env_sits_below_file(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("MULTSEQ_UMAX", "8")
        path = golden(tmp_path)
        _, out, _ = run(capsys, ["--task", "compute", "--input", path])
        assert json.loads(out)["sequence"]["table_shape"][0] == 8
        path2 = write(
            tmp_path,
            "q.json",
            {
                "schema": 1,
                "ring": {"variables": ["x", "y"]},
                "ideals": {"I": ["x"], "K": []},
                "params": {"umax": 10},
            },
        )
        _, out, _ = run(capsys, ["--task", "compute", "--input", path2])
        assert json.loads(out)["sequence"]["table_shape"][0] == 10


class TestVerdictExits:
    def test_formula_match_exits_zero(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, ["--task", "verify-formula", "--input", golden(tmp_path)]
        )
        assert code == 0
        assert json.loads(out)["formula"]["verdict"] == "verified"

    def test_formula_mismatch_exits_one(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "shared.json",
            {
                "schema": 1,
                "ring": {"variables": ["x", "y", "z"]},
                "ideals": {"I": ["x*z", "y*z"], "K": []},
            },
        )
        code, out, _ = run(capsys, ["--task", "verify-formula", "--input", path])
        assert code == 1
        report = json.loads(out)["formula"]
        assert report["verdict"] == "mismatch"
        rows = {row["k"]: row for row in report["rows"]}
        assert (rows[1]["lhs"], rows[1]["rhs"]) == (2, 1)

    def test_reduction_verdicts(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "pair.json",
            {
                "schema": 1,
                "ring": {"variables": ["x", "y"]},
                "ideals": {"I": ["x^2", "y^2"], "J": ["x^2", "x*y", "y^2"], "K": []},
            },
        )
        code, out, _ = run(capsys, ["--task", "check-reduction", "--input", path])
        assert code == 0
        report = json.loads(out)["reduction"]
        assert report["criterion_verdict"] == "reduction"
        assert report["reduced_at"] == 1

    def test_reduction_requires_larger_ideal(self, tmp_path, capsys):
        code, _, err = run(
            capsys, ["--task", "check-reduction", "--input", golden(tmp_path)]
        )
        assert code == 3
        assert "requires ideal J" in err

    def test_forced_budget_exits_one(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "forced.json",
            {
                "schema": 1,
                "ring": {"variables": ["x", "y"]},
                "ideals": {"I": ["x^2", "y^2"], "J": ["x^2", "x*y", "y^2"], "K": []},
                "params": {"nmax": 0, "nmax_escalation": 0},
            },
        )
        code, out, _ = run(capsys, ["--task", "check-reduction", "--input", path])
        assert code == 1
        assert json.loads(out)["reduction"]["consistent"] is False

    def test_indeterminate_exits_two(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "open.json",
            {
                "schema": 1,
                "ring": {"variables": ["x", "y", "z"]},
                "ideals": {"I": ["x"], "J": ["x"], "K": ["x*y", "x*z"]},
            },
        )
        code, out, _ = run(capsys, ["--task", "check-reduction", "--input", path])
        assert code == 2
        assert json.loads(out)["reduction"]["criterion_verdict"] == "indeterminate"

    def test_superficial_search_reports_replay(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "sup.json",
            {
                "schema": 1,
                "ring": {"variables": ["x", "y"]},
                "ideals": {"I": ["x", "y"], "K": []},
            },
        )
        code, out, _ = run(capsys, ["--task", "superficial", "--input", path])
        assert code == 0
        report = json.loads(out)
        assert report["candidate"]["element"] == "x + y"
        assert report["revalidated"] is True

    def test_exhausted_search_exits_four(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "dead.json",
            {
                "schema": 1,
                "ring": {"variables": ["x", "y"]},
                "ideals": {"I": ["x", "y"], "K": []},
                "params": {"trials": 0},
            },
        )
        code, _, err = run(capsys, ["--task", "superficial", "--input", path])
        assert code == 4
        assert "SearchExhausted" in err


class TestUsage:
    def test_unknown_task(self, capsys):
        code, _, err = run(capsys, ["--task", "dance"])
        assert code == 3
        assert "usage error" in err

    def test_unknown_flag(self, tmp_path, capsys):
        code, _, _ = run(
            capsys,
            ["--task", "compute", "--input", golden(tmp_path), "--explode"],
        )
        assert code == 3

    def test_missing_input_file(self, capsys, tmp_path):
        code, _, err = run(
            capsys, ["--task", "compute", "--input", str(tmp_path / "gone.json")]
        )
        assert code == 3
        assert "input error" in err


class TestCorpusTask:
    def test_inline_documents_deterministic(self, capsys):
        argv = ["--task", "corpus", "--count", "4", "--seed", "5"]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second
        docs = json.loads(first)["documents"]
        assert len(docs) == 4

    def test_out_dir_round_trips_through_compute(self, tmp_path, capsys):
        out_dir = tmp_path / "bundle"
        code, out, _ = run(
            capsys,
            [
                "--task",
                "corpus",
                "--count",
                "3",
                "--seed",
                "2",
                "--out-dir",
                str(out_dir),
            ],
        )
        assert code == 0
        written = json.loads(out)["written"]
        assert len(written) == 3
        for name in written:
            code, _, _ = run(
                capsys, ["--task", "compute", "--input", str(out_dir / name)]
            )
            assert code == 0
