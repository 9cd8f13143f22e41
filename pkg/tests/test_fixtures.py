import subprocess
import sys
from pathlib import Path

import pytest

from morphoseg.fixtures import (Fixture, cases_root, data_path, load_fixtures, run_fixture,
                                run_fixture_suite, run_subprocess)
from morphoseg.lemmatag import read_annotations, surfaces

ROOT = Path(__file__).resolve().parent.parent
FIXTURE_IDS = [f.id for f in load_fixtures()]


@pytest.mark.parametrize("fixture_id", FIXTURE_IDS)
def test_fixture(fixture_id):
    (fixture,) = load_fixtures(names=[fixture_id])
    result = run_fixture(fixture)
    assert result.passed, "\n".join(result.failures)


def test_every_case_is_documented():
    for path in sorted(cases_root().iterdir()):
        for name in ("input.txt", "expected.txt", "cmd.txt", "notes.txt"):
            assert (path / name).is_file(), path / name
        assert Fixture.load(path).commands


def test_worked_examples_are_covered():
    ids = set(FIXTURE_IDS)
    assert {"table1-encode", "table1-decode", "table1-inflex", "wirtschaftlichen",
            "fisch-declension", "zierfischen", "jahreswechsel", "hyphen-split",
            "himl-sentence", "nebenerwerbslandwirte", "patientenrelevanten", "empty"} <= ids


def test_suite_report_and_subprocess_runner():
    report = run_fixture_suite(names=["bpe-wirt", "dangling-separator"], runner=run_subprocess)
    assert report.passed
    assert report.lines()[-1] == "2/2 fixtures passed"


def test_failing_fixture_shows_diff(tmp_path):
    case = tmp_path / "broken"
    case.mkdir()
    (case / "input.txt").write_text("Fischen\n", "utf-8")
    (case / "expected.txt").write_text("Fischen\n", "utf-8")
    (case / "cmd.txt").write_text("split-suffixes\n", "utf-8")
    report = run_fixture_suite(root=tmp_path)
    assert not report.passed
    assert any("+Fisch $$en" in line for line in report.lines())


def test_sample_files():
    lines = data_path("german_sample.txt").read_text("utf-8").splitlines()
    assert len(lines) == 1000 and all(lines)
    anns = read_annotations(data_path("german_sample.ann").open(encoding="utf-8"))
    assert len(anns) == 1000
    assert read_annotations(data_path("german_annotated_200.ann").open(encoding="utf-8")) == \
        anns[:200]
    # the annotation is the truecased text: only sentence-initial casing may differ
    for line, sentence in zip(lines, anns):
        tokens = line.split()
        assert tokens[1:] == surfaces(sentence)[1:]
        assert tokens[0].lower() == surfaces(sentence)[0].lower()


def test_reference_tables_parse():
    rows = [l.split("\t") for l in data_path("table7_vocabulary.tsv").read_text("utf-8").splitlines()
            if not l.startswith("#")]
    assert rows[0] == ["corpus", "baseline", "lemmatag", "segmentation"]
    for _, *counts in rows[1:]:
        baseline, lemmatag, segmentation = map(int, counts)
        assert segmentation < lemmatag < baseline
    rows = [l.split("\t") for l in data_path("bpe_inconsistency.tsv").read_text("utf-8").splitlines()
            if not l.startswith("#")]
    assert all(len(r) == 4 for r in rows) and len(rows) == 11


@pytest.mark.skipif(not (ROOT / "tools" / "make_german_sample.py").exists(),
                    reason="generator script not available")
def test_sample_is_reproducible(tmp_path):
    subprocess.run([sys.executable, str(ROOT / "tools" / "make_german_sample.py"), str(tmp_path)],
                   check=True)
    for name in ("german_sample.txt", "german_sample.ann", "german_annotated_200.ann"):
        assert (tmp_path / name).read_bytes() == data_path(name).read_bytes()
