"""CLI subcommands and exit codes."""

import json
import os

import pytest

from webstate.cli import main
from webstate.fixtures import dataset_path, paper_results_path, trace_path


class TestRecordValidate:
    def test_valid_trace_exit_zero(self, capsys):
        assert main(["record-validate", trace_path("site-a-login")]) == 0
        assert "trace OK" in capsys.readouterr().out

    def test_invalid_trace_exit_one_lists_violations(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"name": "x", "created_at": 0, "events": []}))
        assert main(["record-validate", str(bad)]) == 1
        assert "/start_url" in capsys.readouterr().out

    def test_missing_file_usage_error(self):
        assert main(["record-validate", "/no/such/trace.json"]) == 2


class TestReplayCommand:
    def test_idempotent_second_run_zero_executed(self, tmp_path, capsys):
        profile = str(tmp_path / "profile")
        trace = trace_path("site-a-quick-digest")
        assert main(["replay", trace, "--state", "OFF",
                     "--profile", profile]) == 0
        first = json.loads(capsys.readouterr().out)
        assert main(["replay", trace, "--state", "OFF",
                     "--profile", profile]) == 0
        second = json.loads(capsys.readouterr().out)
        assert first["events_executed"] == 1
        assert second["events_executed"] == 0

    def test_init_state_subcommand(self, tmp_path, capsys):
        profile = str(tmp_path / "profile")
        # settings page needs auth in the profile before state replay
        from webstate.dom import FixtureSession
        FixtureSession(profile).store.set("site-a", "auth", True)
        assert main(["init-state", "site-a", "site-a/email-notifications",
                     "--state", "OFF", "--profile", profile]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["outcome"] == "success"

    def test_unknown_site_usage_error(self, tmp_path):
        assert main(["init-state", "nope", "task", "--profile",
                     str(tmp_path / "p")]) == 2


class TestRun:
    def test_mini_matrix_exit_zero(self, tmp_path, capsys):
        rows = json.loads(open(dataset_path()).read())
        mini = [r for r in rows if r["instance_id"].startswith("b-public")]
        ds = tmp_path / "mini.json"
        ds.write_text(json.dumps(mini))
        code = main(["run", str(ds), "--policy", "scripted-perfect",
                     "--variant", "wonav", "--jobs", "2",
                     "--workdir", str(tmp_path / "work")])
        out = capsys.readouterr().out
        assert code == 0
        assert "failures: 0" in out
        assert os.path.exists(tmp_path / "work" / "results.jsonl")

    def test_failures_exit_one(self, tmp_path):
        rows = json.loads(open(dataset_path()).read())
        mini = [r for r in rows if r["instance_id"].startswith("b-public")]
        ds = tmp_path / "mini.json"
        ds.write_text(json.dumps(mini))
        code = main(["run", str(ds), "--policy", "scripted-wrong-toggle",
                     "--variant", "wonav",
                     "--workdir", str(tmp_path / "work2")])
        assert code == 1

    def test_unknown_policy_usage_error(self, tmp_path):
        code = main(["run", dataset_path(), "--policy", "nope",
                     "--variant", "wonav", "--workdir", str(tmp_path / "w")])
        assert code == 2

    def test_empty_dataset_ok(self, tmp_path):
        ds = tmp_path / "empty.json"
        ds.write_text("[]")
        assert main(["run", str(ds), "--policy", "scripted-perfect",
                     "--variant", "wonav"]) == 0

    def test_live_judge_without_env_is_usage_error(self, tmp_path, monkeypatch):
        monkeypatch.delenv("WEBSTATE_JUDGE_MODELS", raising=False)
        rows = json.loads(open(dataset_path()).read())
        mini = [r for r in rows if r["instance_id"] == "b-displayname"]
        ds = tmp_path / "one.json"
        ds.write_text(json.dumps(mini))
        assert main(["run", str(ds), "--policy", "scripted-perfect",
                     "--variant", "wonav", "--judge", "live",
                     "--workdir", str(tmp_path / "w")]) == 2

    def test_model_policy_without_env_is_usage_error(self, tmp_path, monkeypatch):
        monkeypatch.delenv("WEBSTATE_MODEL_ENDPOINT", raising=False)
        monkeypatch.delenv("WEBSTATE_MODEL_NAME", raising=False)
        rows = json.loads(open(dataset_path()).read())
        mini = [r for r in rows if r["instance_id"] == "b-displayname"]
        ds = tmp_path / "one.json"
        ds.write_text(json.dumps(mini))
        assert main(["run", str(ds), "--policy", "model",
                     "--variant", "wonav",
                     "--workdir", str(tmp_path / "w")]) == 2


class TestJudgeCommand:
    def test_judge_run_dir_with_mock(self, tmp_path, capsys):
        rows = json.loads(open(dataset_path()).read())
        mini = [r for r in rows if r["instance_id"] == "b-displayname"]
        ds = tmp_path / "one.json"
        ds.write_text(json.dumps(mini))
        workdir = tmp_path / "w"
        assert main(["run", str(ds), "--policy", "scripted-perfect",
                     "--variant", "wonav", "--judge", "none",
                     "--workdir", str(workdir)]) == 0
        capsys.readouterr()
        run_dir = next((workdir / "runs").iterdir())
        assert main(["judge", str(run_dir), "--mock"]) == 0
        verdict = json.loads(capsys.readouterr().out)
        assert verdict["final"] == "CORRECT"


class TestReport:
    def test_bundled_results_table(self, capsys):
        assert main(["report", paper_results_path()]) == 0
        out = capsys.readouterr().out
        assert "166" in out and "83.0%" in out
        assert "Gemma-3-27b" in out

    def test_report_csv_output(self, tmp_path, capsys):
        assert main(["report", paper_results_path(),
                     "--out", str(tmp_path / "csv")]) == 0
        assert (tmp_path / "csv" / "overall.csv").exists()

    def test_report_measured_log(self, tmp_path, capsys):
        rows = json.loads(open(dataset_path()).read())
        mini = [r for r in rows if r["instance_id"].startswith("b-public")]
        ds = tmp_path / "mini.json"
        ds.write_text(json.dumps(mini))
        workdir = tmp_path / "w"
        main(["run", str(ds), "--policy", "scripted-perfect",
              "--variant", "wonav", "--workdir", str(workdir)])
        capsys.readouterr()
        assert main(["report", str(workdir / "results.jsonl")]) == 0
        out = capsys.readouterr().out
        assert "scripted-perfect" in out


class TestFixtures:
    def test_fixtures_path(self, capsys):
        assert main(["fixtures", "path"]) == 0
        out = capsys.readouterr().out.strip()
        assert os.path.isdir(out)

    def test_usage_error_exit_two(self):
        assert main(["no-such-command"]) == 2
