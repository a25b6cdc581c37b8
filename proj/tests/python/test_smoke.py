# SPDX-License-Identifier: Apache-2.0
import json
import os
import pathlib

import pytest

import coi

FIXTURES = pathlib.Path(os.environ.get("COI_FIXTURE_DIR", pathlib.Path(__file__).resolve().parents[1] / "fixtures"))


def test_version_and_data_dir():
    assert coi.__version__
    assert coi.tokenizer_version == "coi-rouge-tok-v1"
    assert (pathlib.Path(coi.data_dir()) / "prompts").is_dir()


def test_rouge_l():
    s = coi.rouge_l("the cat sat", "the cat sat down")
    assert s.precision == 1.0
    assert s.recall == 0.75
    assert s.f1 == pytest.approx(6 / 7)
    assert coi.rouge_l("", "x").f1 == 0.0
    assert coi.tokenize("Hello, World!") == ["hello", ",", "world", "!"]


def test_scaffold_round_trip():
    hops = ["a", "b", "c"]
    text = coi.render_target(hops)
    assert text == "Task 1 output and task 2 input: a Task 2 output and task 3 input: b Task 3 output: c"
    assert coi.parse_target(text, 3) == hops
    assert coi.extract_hop_spans("noise Task 2 output: tail", 2) == [None, "tail"]
    assert coi.contains_hop_marker("2 output: x")


def test_errors_map_to_python_types():
    with pytest.raises(coi.ParseError):
        coi.parse_target("no markers here", 2)
    with pytest.raises(coi.ValidationError):
        coi.render_target(["Task 1 output: x", "y"])
    with pytest.raises(coi.IoError):
        coi.dataset_report(FIXTURES / "missing.jsonl")
    assert issubclass(coi.ParseError, coi.ValidationError)
    assert issubclass(coi.CoiError, RuntimeError)


def test_dataset_report_matches_fixture():
    report = coi.dataset_report(FIXTURES / "stats" / "dataset.jsonl")
    expected = json.loads((FIXTURES / "stats" / "expected_counts.json").read_text())
    assert report["total"] == expected["total"]
    for k, c in expected["counts"].items():
        assert report["counts_by_length"][k]["train"] == c["train"]
        assert report["counts_by_length"][k]["test"] == c["test"]


def test_language_split():
    ident = coi.LanguageIdentifier.load()
    assert ident.languages == ["en", "es", "fr"]
    assert ident.identify("The weather is lovely today and we will walk to the park.") == "en"
    text = "The weather is lovely today and we will walk to the park. Il fait très beau aujourd'hui et nous irons au parc."
    src, tgt = coi.split_by_language(text, "en", "fr", ident)
    assert src.startswith("The weather")
    assert tgt.startswith("Il fait")
    assert coi.split_by_marker("no markers") == (None, None)


def test_cli_pipeline(tmp_path):
    conf = str(FIXTURES / "mini" / "pipeline.conf")
    for cmd in ["ingest", "summarize", "compose", "extend", "build"]:
        code, _, err = coi.run([cmd, "--config", conf, "--output-dir", str(tmp_path)])
        assert code == 0, err
    report = coi.dataset_report(tmp_path / "dataset.jsonl")
    assert report["total"] == 50
    code, _, err = coi.run(["stats", "--dataset", str(tmp_path / "nope.jsonl")])
    assert code == 1
    assert "nope.jsonl" in err
