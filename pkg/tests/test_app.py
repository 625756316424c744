import json

import pandas as pd
import pytest

from app import EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from patterns.pattern import load_patterns

from .conftest import RUNNING, SYNTHETIC

MODEL = str(RUNNING / "model.json")
CORPUS = str(RUNNING / "corpus.jsonl")


class TestUsage:
    def test_no_arguments(self, capsys):
        assert main([]) == EXIT_USAGE
        assert "usage" in capsys.readouterr().err

    def test_unknown_command(self):
        assert main(["frobnicate"]) == EXIT_USAGE

    def test_missing_required_flag(self):
        assert main(["explain", "--model", MODEL]) == EXIT_USAGE

    def test_negative_k(self):
        assert main(["explain", "--model", MODEL, "--corpus", CORPUS, "--k", "-1"]) == EXIT_USAGE

    def test_help(self, capsys):
        assert main(["--help"]) == EXIT_OK
        assert "check-gps" in capsys.readouterr().out

    def test_missing_file_is_a_data_error(self, tmp_path):
        assert main(["explain", "--model", str(tmp_path / "none.json"), "--corpus", CORPUS]) == EXIT_DATA

    def test_unknown_document(self):
        assert main(["explain", "--model", MODEL, "--corpus", CORPUS, "--doc", "nope"]) == EXIT_DATA


class TestExplain:
    def test_json(self, capsys):
        assert main(["-q", "explain", "--model", MODEL, "--corpus", CORPUS, "--format", "json", "--k", "1"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 1
        payload = json.loads(lines[0])
        assert payload["prediction"]["class"] == 1
        assert payload["prediction"]["probability"] == pytest.approx(0.5744, abs=5e-5)
        assert [i["argument"] for i in payload["shallow"]] == ["a3", "a0"]

    def test_flx_text(self, capsys):
        assert main(["-q", "explain", "--model", MODEL, "--corpus", CORPUS, "--method", "flx", "--k", "4"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "[flx]" in out
        assert out.index(" a2 ") < out.index(" a3 ")

    def test_html_file(self, tmp_path):
        out = tmp_path / "report.html"
        args = ["-q", "explain", "--model", MODEL, "--corpus", CORPUS, "--method", "deep", "--format", "html"]
        assert main(args + ["--output", str(out)]) == EXIT_OK
        page = out.read_text(encoding="utf-8")
        assert page.count("<details") == 1

    def test_graph_dot(self, capsys):
        args = ["-q", "graph", "--model", MODEL, "--corpus", CORPUS, "--doc", "running-example", "--variant", "top_down"]
        assert main(args) == EXIT_OK
        assert '"a0" -> "a1"' in capsys.readouterr().out

    def test_graph_json_feeds_check_gps(self, tmp_path, capsys):
        path = tmp_path / "fw.json"
        args = ["-q", "graph", "--model", MODEL, "--corpus", CORPUS, "--doc", "running-example", "--format", "json"]
        assert main(args + ["--post", "--output", str(path)]) == EXIT_OK
        assert json.loads(path.read_text(encoding="utf-8"))["post_processed"] is True
        assert main(["-q", "check-gps", "--framework", str(path), "--format", "json"]) == EXIT_OK
        reports = json.loads(capsys.readouterr().out)
        assert reports["GP1"]["stage"] == "post"


class TestCheckGps:
    def test_no_trials(self, capsys):
        assert main(["-q", "check-gps", "--trials", "0"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "✓" not in out and "✗" not in out
        assert out.count("–") == 22

    def test_json_summary(self, capsys):
        assert main(["-q", "check-gps", "--trials", "20", "--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["trials"] == 20
        assert set(payload["stages"]) == {"pre", "post"}

    def test_search(self, capsys):
        assert main(["-q", "check-gps", "--search", "2", "--stage", "pre"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["witness"]["gp"] == 2
        assert payload["framework"]["post_processed"] is False

    def test_search_without_result(self, capsys):
        assert main(["-q", "check-gps", "--search", "1", "--stage", "post", "--budget", "50"]) == EXIT_OK
        assert "no GP1 counterexample" in capsys.readouterr().out

    def test_invalid_generator_settings(self):
        assert main(["-q", "check-gps", "--min-arguments", "5", "--max-arguments", "2"]) == EXIT_USAGE

    @pytest.mark.parametrize("budget", ["0", "-3"])
    def test_search_budget_must_be_positive(self, budget):
        assert main(["-q", "check-gps", "--search", "2", "--budget", budget]) == EXIT_USAGE


class TestSettingsFlags:
    def test_negative_pattern_count(self, tmp_path):
        args = ["-q", "mine", "--corpus", CORPUS, "--output", str(tmp_path / "p.json"), "--num-patterns", "-1"]
        assert main(args) == EXIT_USAGE
        assert not (tmp_path / "p.json").exists()

    def test_non_positive_learning_rate(self, tmp_path):
        args = ["-q", "train", "--corpus", CORPUS, "--patterns", str(RUNNING / "patterns.json")]
        assert main(args + ["--output", str(tmp_path / "m.json"), "--learning-rate", "0"]) == EXIT_USAGE


class TestPipeline:
    """Annotate, mine, train, evaluate, explain and analyse the bundled synthetic corpus."""

    def test_end_to_end(self, tmp_path, capsys):
        annotated = tmp_path / "annotated.jsonl"
        patterns = tmp_path / "patterns.json"
        model = tmp_path / "model.json"
        assert main([
            "-q", "annotate", "--corpus", str(SYNTHETIC / "corpus.jsonl"),
            "--lexicon", str(SYNTHETIC / "promo_lexicon.txt"),
            "--lexicon", str(SYNTHETIC / "work_lexicon.txt"),
            "--output", str(annotated),
        ]) == EXIT_OK
        assert "PROMO:yes" in annotated.read_text(encoding="utf-8")

        assert main([
            "-q", "mine", "--corpus", str(annotated), "--output", str(patterns),
            "--num-patterns", "30", "--max-slots", "2",
        ]) == EXIT_OK
        assert len(load_patterns(patterns)) >= 20

        assert main(["-q", "train", "--corpus", str(annotated), "--patterns", str(patterns), "--output", str(model)]) == EXIT_OK

        capsys.readouterr()
        assert main(["-q", "evaluate", "--model", str(model), "--corpus", str(annotated), "--format", "json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["accuracy"] >= 0.9
        assert report["count"] == 300

        stats = tmp_path / "stats.json"
        assert main(["-q", "stats", "--model", str(model), "--corpus", str(annotated), "--format", "json", "--output", str(stats)]) == EXIT_OK
        tables = json.loads(stats.read_text(encoding="utf-8"))
        assert set(tables) == {"TQBAFc", "TQBAFc′", "BQBAFc", "BQBAFc′"}
        assert tables["TQBAFc"]["All/n"]["|A|"] == 300

        curves = tmp_path / "curves"
        assert main(["-q", "sufficiency", "--model", str(model), "--corpus", str(annotated), "--output-dir", str(curves)]) == EXIT_OK
        files = sorted(p.name for p in curves.iterdir())
        assert len(files) == 12
        curve = pd.read_csv(curves / "sufficiency_bottom_up_default_all.csv")
        assert list(curve.columns) == ["k", "percentage"]
        assert list(curve["percentage"]) == sorted(curve["percentage"])

        html_dir = tmp_path / "html"
        assert main([
            "-q", "explain", "--model", str(model), "--corpus", str(annotated),
            "--doc", "doc-001", "--doc", "doc-002", "--method", "deep", "--format", "html",
            "--samples-corpus", str(annotated), "--jobs", "2", "--output", str(html_dir),
        ]) == EXIT_OK
        assert sorted(p.name for p in html_dir.iterdir()) == ["doc-001.html", "doc-002.html"]
