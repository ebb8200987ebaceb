import json

import pytest
import yaml

from conftest import CORPUS, ROOT
from report import Report, report_schema
from run import run
from settings import load_settings


@pytest.fixture
def config(tmp_path):
    """Config rooted in tmp_path so logs and saved reports stay out of the repository."""
    directory = tmp_path / "config"
    directory.mkdir()
    path = directory / "config.yaml"
    path.write_text(yaml.safe_dump({
        "defaults": {"j_max": 8},
        "logging": {"level": "ERROR", "console": False, "file": "logs/test.log"},
    }), encoding="utf-8")
    return str(path)


def run_json(capsys, argv):
    code = run(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_dim_prints_krull_dimension(capsys, config):
    code = run(["dim", str(CORPUS / "polyring2.ring"), "--config", config])
    assert code == 0
    assert "krull_dim: 2" in capsys.readouterr().out


def test_json_report_fields(capsys, config):
    code, report = run_json(capsys, ["length", str(CORPUS / "ci_y3_x2z.ring"), "--extra", "x, z", "--config", config])
    assert code == 0
    assert report["results"]["length"] == 12
    assert report["status"] == "passed"
    assert report["exit_code"] == 0
    assert len(report["inputs_digest"]) == 64
    assert report["command"][0] == "length"


def test_reports_are_deterministic_apart_from_timing(capsys, config):
    argv = ["hilbert", str(CORPUS / "weighted_xy.ring"), "--upto", "8", "--config", config]
    _, first = run_json(capsys, argv)
    _, second = run_json(capsys, argv)
    assert Report(**first).without_timing() == Report(**second).without_timing()


def test_failed_check_exits_one(capsys, config):
    assert run(["cyclotomic", "1-2t+4t^2-2t^3+t^4", "--config", config]) == 1
    capsys.readouterr()
    code, report = run_json(capsys, ["cyclotomic", "x", "--genus", "1", "--config", config])
    assert code == 0
    assert report["results"]["factorization"] == "Phi_1^2*Phi_4"


def test_surjectivity_single_map(capsys, config):
    code, report = run_json(capsys, ["surjectivity", str(CORPUS / "weighted_xy.ring"), "--a", "2", "--j", "4",
                                     "--config", config])
    assert code == 1
    assert report["results"]["missing"] == ["y^2"]


def test_verdict_uses_file_certificates(capsys, config):
    code, report = run_json(capsys, ["verdict", str(CORPUS / "ci_y3_x2z.ring"), "--config", config])
    assert code == 0
    assert report["results"]["conclusion"] == "NoUlrichModules"


def test_newton_command(capsys, config):
    code, report = run_json(capsys, ["newton", "x^4*z^2 - x^3*z^3 - 2*x^2*z + 1", "--vars", "x,z",
                                     "--config", config])
    assert code == 0
    assert report["results"]["vertices"] == [[0, 0], [4, 2], [3, 3]]


def test_errors_exit_two(capsys, config, tmp_path):
    assert run(["frobnicate", "x"]) == 2
    assert run(["dim", str(tmp_path / "missing.ring"), "--config", config]) == 2
    assert "ERROR" in capsys.readouterr().out
    bad = tmp_path / "bad.ring"
    bad.write_text("variables: s:3, x:2\nrelation: s^2 - x^2\n", encoding="utf-8")
    code, report = run_json(capsys, ["dim", str(bad), "--config", config])
    assert code == 2
    assert report["status"] == "error"
    assert "mixed degrees 6, 4" in report["results"]["error"]


def test_budget_exhaustion_is_an_error(capsys, tmp_path, fresh_cache):
    directory = tmp_path / "config"
    directory.mkdir()
    path = directory / "config.yaml"
    path.write_text(yaml.safe_dump({
        "budget": {"max_basis_size": 1},
        "logging": {"console": False, "file": None},
    }), encoding="utf-8")
    assert run(["dim", str(CORPUS / "ci_y3_x2z.ring"), "--config", str(path)]) == 2
    assert "budget exceeded" in capsys.readouterr().out


def test_save_writes_report(capsys, config, tmp_path):
    assert run(["dim", str(CORPUS / "cusp.ring"), "--save", "--config", config]) == 0
    saved = json.loads((tmp_path / "reports" / "dim.json").read_text(encoding="utf-8"))
    assert saved["results"]["krull_dim"] == 1


def test_schema_matches_documented_schema(capsys, tmp_path, config):
    out = tmp_path / "schema.json"
    assert run(["schema", "--output", str(out), "--config", config]) == 0
    written = json.loads(out.read_text(encoding="utf-8"))
    assert written == report_schema()
    documented = json.loads((ROOT / "docs" / "report_schema.json").read_text(encoding="utf-8"))
    assert set(written["properties"]) == set(documented["properties"])
    assert set(written["required"]) == set(documented["required"])


def test_corpus_reports_only_the_perturbed_entry(capsys, config, tmp_path):
    manifest = tmp_path / "manifest.yaml"
    manifest.write_text(yaml.safe_dump({"entries": [
        {"id": "dim-ok", "check": "dim", "target": str(CORPUS / "polyring2.ring"),
         "expect": {"krull_dim": 2}, "provenance": "trivial"},
        {"id": "dim-perturbed", "check": "dim", "target": str(CORPUS / "polyring2.ring"),
         "expect": {"krull_dim": 3}, "provenance": "trivial"},
        {"id": "genus-one", "check": "cyclotomic", "target": "", "args": {"genus": 1},
         "expect": {"factors": {1: 2, 4: 1}}, "provenance": "published"},
    ]}), encoding="utf-8")
    code, report = run_json(capsys, ["corpus", "--manifest", str(manifest), "--jobs", "2", "--config", config])
    assert code == 1
    assert report["results"]["failed"] == ["dim-perturbed"]
    assert report["results"]["passed"] == 2


def test_experimental_entries_never_fail_the_run(capsys, config, tmp_path):
    manifest = tmp_path / "manifest.yaml"
    manifest.write_text(yaml.safe_dump({"entries": [
        {"id": "guess", "check": "dim", "target": str(CORPUS / "polyring2.ring"),
         "expect": {"krull_dim": 5}, "provenance": "derived", "experimental": True},
    ]}), encoding="utf-8")
    assert run(["corpus", "--manifest", str(manifest), "--config", config]) == 0


def test_unusable_manifests_exit_two(capsys, config, tmp_path):
    empty = tmp_path / "empty.yaml"
    empty.write_text("entries: []\n", encoding="utf-8")
    assert run(["corpus", "--manifest", str(empty), "--config", config]) == 2
    broken = tmp_path / "broken.yaml"
    broken.write_text(yaml.safe_dump({"entries": [
        {"id": "nowhere", "check": "dim", "target": str(tmp_path / "nowhere.ring"),
         "expect": {"krull_dim": 2}, "provenance": "trivial"},
    ]}), encoding="utf-8")
    assert run(["corpus", "--manifest", str(broken), "--config", config]) == 2
    assert "nowhere" in capsys.readouterr().out


def test_environment_overrides_config(monkeypatch, tmp_path):
    monkeypatch.setenv("ULRICH_JOBS", "3")
    monkeypatch.setenv("ULRICH_MAX_BASIS_SIZE", "77")
    settings = load_settings(ROOT / "config" / "config.yaml")
    assert settings.corpus.jobs == 3
    assert settings.budget.max_basis_size == 77
    assert settings.defaults.j_max == 20
    assert settings.root == ROOT


@pytest.mark.slow
def test_golden_corpus_passes(capsys, config):
    code, report = run_json(capsys, ["corpus", "--manifest", str(CORPUS / "manifest.yaml"), "--config", config])
    assert report["results"]["failed"] == [], report["results"]["entries"]
    assert code == 0
