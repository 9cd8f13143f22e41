import random

import pytest

import oracles
from morphoseg.affix import GERMAN_SUFFIXES
from morphoseg.compound import (CompoundConfig, CompoundSplitter, FrequencyLexicon,
                                build_frequency_lexicon, german_fillers, join_compound,
                                split_compound)
from morphoseg.core import MalformedStream


def lex(**entries):
    return FrequencyLexicon({k: v for k, v in entries.items()})


ZIER = lex(zier=(12, "zier"), fisch=(30, "Fisch"), zierfisch=(1, "Zierfisch"))


def test_zierfisch():
    # sqrt(12 * 30) ~ 18.97 beats the whole word's count of 1
    assert split_compound("Zierfisch", ZIER) == ["#U", "zier", "@@", "Fisch"]


def test_whole_word_wins_when_frequent():
    lexicon = lex(zier=(12, "zier"), fisch=(30, "Fisch"), zierfisch=(19, "Zierfisch"))
    assert split_compound("Zierfisch", lexicon) == ["Zierfisch"]


def test_jahreswechsel_with_filler():
    lexicon = lex(jahr=(50, "Jahr"), wechsel=(20, "Wechsel"))
    out = split_compound("Jahreswechsel", lexicon, CompoundConfig.german())
    assert out == ["#U", "Jahr", "@es@", "Wechsel"]
    assert join_compound(out) == ["Jahreswechsel"]


def test_patientenrelevant():
    lexicon = lex(patient=(9, "Patient"), relevant=(7, "relevant"))
    out = split_compound("patientenrelevant", lexicon, CompoundConfig.german())
    assert out == ["#L", "Patient", "@en@", "relevant"]
    assert join_compound(out + ["$$en"]) == ["patientenrelevant", "$$en"]


def test_short_words_and_markers_untouched():
    assert split_compound("Haus", ZIER) == ["Haus"]
    for token in ["$$en", "@@", "@s@", "#U", "<+NN>", "Wir##"]:
        assert split_compound(token, ZIER) == [token]


def test_part_count_floor():
    lexicon = lex(zier=(1, "zier"), fisch=(30, "Fisch"))
    assert split_compound("Zierfisch", lexicon) == ["Zierfisch"]


def test_german_fillers():
    fillers = set(german_fillers())
    assert {"s", "es", "zu"} <= fillers
    assert GERMAN_SUFFIXES <= fillers
    assert {s + "s" for s in GERMAN_SUFFIXES} <= fillers


def test_config_validation():
    with pytest.raises(ValueError):
        CompoundConfig(min_part_size=0)
    with pytest.raises(ValueError):
        CompoundConfig(fillers=("",))
    with pytest.raises(ValueError):
        CompoundConfig(max_parts=0)


def test_frequency_lexicon():
    lexicon = build_frequency_lexicon([["Fisch", "Fisch", "fisch"], ["$$en"] * 10])
    assert lexicon.entries == {"fisch": (3, "Fisch")}
    assert lexicon.count("FISCH") == 3 and lexicon.canonical("fisch") == "Fisch"
    assert "$$en" not in lexicon
    assert len(build_frequency_lexicon([])) == 0


def test_frequency_lexicon_io(tmp_path):
    lexicon = build_frequency_lexicon([["Haus", "Maus", "haus", "Haus"]])
    assert FrequencyLexicon.loads(lexicon.dumps()) == lexicon
    lexicon.save(tmp_path / "f.tsv")
    assert FrequencyLexicon.load(tmp_path / "f.tsv") == lexicon
    with pytest.raises(ValueError):
        FrequencyLexicon.loads("a\t1\n")
    with pytest.raises(ValueError):
        FrequencyLexicon.loads("a\t0\ta\n")


@pytest.mark.parametrize("stream,expected", [
    (["#U", "zier", "@@", "Fisch"], ["Zierfisch"]),
    (["#L", "Patient", "@en@", "relevant"], ["patientenrelevant"]),
    (["#U", "zier", "@@", "Gegenstand"], ["Ziergegenstand"]),
    (["#U", "Neben", "@@", "erwerb", "@s@", "Land", "@@", "Wirt", "$$e"],
     ["Nebenerwerbslandwirt", "$$e"]),
    (["Fisch"], ["Fisch"]),
    ([], []),
])
def test_join_compound(stream, expected):
    assert join_compound(stream) == expected


@pytest.mark.parametrize("stream", [["#U"], ["a", "@@"], ["@@", "a"], ["#L", "@@", "b"]])
def test_join_compound_malformed(stream):
    with pytest.raises(MalformedStream):
        join_compound(stream)
    errors = []
    join_compound(stream, errors=errors)
    assert errors


def random_case(rng):
    alphabet = rng.choice(["ab", "abc", "abcs", "eins"])
    word = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 12)))
    entries = {}
    for _ in range(rng.randint(0, 100)):
        i = rng.randrange(len(word))
        j = rng.randint(i + 1, len(word))
        piece = word[i:j] if rng.random() < 0.8 else \
            "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 6)))
        entries[piece] = (rng.choice([1, 2, 3, 4, 6, 8, 9, 12, 16, 30]), piece)
    config = CompoundConfig(min_part_size=rng.randint(1, 4), min_part_count=rng.randint(0, 3),
                            max_part_count=rng.choice([999_999_999, 8]),
                            fillers=rng.choice([("s",), ("s", "es"), ("s", "ss", "c")]),
                            max_parts=rng.randint(1, 4))
    if rng.random() < 0.3:
        word = word.capitalize()
    return word, FrequencyLexicon(entries), config


def test_argmax_matches_exhaustive_enumeration():
    rng = random.Random(5)
    for _ in range(300):
        word, lexicon, config = random_case(rng)
        splitter = CompoundSplitter(lexicon, config)
        assert splitter.best_decomposition(word) == oracles.compound_argmax(word, lexicon, config)
        out = splitter.split(word)
        assert join_compound(out) == [word]
