import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from morphoseg.bpe import BpeConfig, learn_bpe  # noqa: E402
from morphoseg.core import read_sentences  # noqa: E402
from morphoseg.fixtures import data_path  # noqa: E402
from morphoseg.pipeline import (Language, PipelineConfig, Resources, learn_frequency_lexicon,  # noqa: E402
                                learn_truecaser, presegment)


@pytest.fixture(scope="session")
def german_sample():
    with data_path("german_sample.txt").open(encoding="utf-8") as f:
        return list(read_sentences(f))


def build_resources(corpus, truecase=False, num_merges=2000):
    """Learn every segmentation resource from ``corpus`` the way the CLI does."""
    truecaser = learn_truecaser(corpus) if truecase else None
    lexicon = learn_frequency_lexicon(corpus, Language.GERMAN, truecaser)
    resources = Resources(lexicon=lexicon, truecaser=truecaser)
    config = PipelineConfig()
    presegmented = [presegment(s, config, resources) for s in corpus]
    resources.merges = learn_bpe(presegmented, BpeConfig(num_merges=num_merges))
    return resources


@pytest.fixture(scope="session")
def sample_resources(german_sample):
    return build_resources(german_sample)


@pytest.fixture(scope="session")
def sample_resources_truecased(german_sample):
    return build_resources(german_sample, truecase=True)


# criterion number -> (passed, description); filled by the acceptance suite
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {text}")
