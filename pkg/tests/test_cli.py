import json

import pytest

from srlpipe.cli import main
from srlpipe.langid import LangIdModel, detect
from srlpipe.synth import write_corpus


@pytest.fixture
def corpus(tmp_path):
    return write_corpus(tmp_path / "c", n_pairs=100, seed=3)


class TestExitCodes:
    def test_stage_success(self, corpus, capsys):
        assert main(["filter-lang", "--config", str(corpus)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["stage"] == "filter-lang"
        assert report["counts"]["input"] == 100

    def test_config_error_is_1(self, corpus, capsys):
        assert main(["filter-lang", "--config", str(corpus), "--tau", "7"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_missing_prerequisite_is_2(self, corpus, capsys):
        assert main(["project", "--config", str(corpus)]) == 2

    def test_missing_config_file_is_2(self, capsys):
        assert main(["run-all", "--config", "/nonexistent.cfg"]) == 2


class TestRunAll:
    def test_prints_funnel(self, corpus, capsys):
        assert main(["run-all", "--config", str(corpus)]) == 0
        funnel = json.loads(capsys.readouterr().out)
        assert set(funnel) == {"filter-lang", "align", "project", "score",
                               "map", "split", "stats"}
        assert funnel["filter-lang"]["input"] == 100

    def test_flag_overrides_config(self, corpus, capsys):
        # demanding a Hebrew source rejects every pair
        assert main(["filter-lang", "--config", str(corpus),
                     "--lang-src", "he", "--lang-tgt", "en"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["counts"]["output"] == 0


class TestTrainLangid:
    def test_trains_and_writes_model(self, tmp_path, capsys):
        en = tmp_path / "en.txt"
        he = tmp_path / "he.txt"
        en.write_text("the dog barks\n" * 150)
        he.write_text("הכלב נובח\n" * 150)
        out = tmp_path / "model.json"
        assert main(["train-langid", "--corpus", f"en={en}",
                     "--corpus", f"he={he}", "--out", str(out)]) == 0
        model = LangIdModel.from_json(out.read_text())
        assert detect(model, "the dog")[0] == "en"
        assert detect(model, "הכלב")[0] == "he"

    def test_single_corpus_is_config_error(self, tmp_path, capsys):
        en = tmp_path / "en.txt"
        en.write_text("hello\n" * 150)
        assert main(["train-langid", "--corpus", f"en={en}",
                     "--out", str(tmp_path / "m.json")]) == 1
