import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from morphoseg.bpe import (BpeConfig, MergeTable, DEFAULT_NUM_MERGES, apply_bpe, learn_bpe,
                           learn_from_counts, merge_bpe, word_counts)
from morphoseg.core import MalformedStream, escape_corpus_token


def test_low_lower_tie_break():
    corpus = [["low"]] * 5 + [["lower"]] * 2
    table = learn_bpe(corpus, BpeConfig(num_merges=1))
    # (l,o) and (o,w) both count 7; the smaller pair wins
    assert table.merges == (("l", "o"),)


def test_zero_merges():
    assert learn_bpe([["abc", "abd"]], BpeConfig(num_merges=0)).merges == ()


def test_protected_tokens_are_not_counted():
    corpus = [["$$en"]] * 100 + [["Fisch"]] * 3
    table = learn_bpe(corpus, BpeConfig(num_merges=10))
    assert table.merges
    assert all(set(a + b) <= set("Fisch") for a, b in table.merges)
    assert word_counts(corpus) == {"Fisch": 3}


def test_default_merge_count():
    assert BpeConfig().num_merges == DEFAULT_NUM_MERGES == 29500
    with pytest.raises(ValueError):
        BpeConfig(num_merges=-1)


def test_wirt_stops_at_learned_merges():
    table = MergeTable((("W", "i"), ("Wi", "r")))
    assert apply_bpe(["Wirt"], table) == ["Wir##", "t"]
    assert merge_bpe(["Wir##", "t"]) == ["Wirt"]


def test_character_fallback():
    assert apply_bpe(["ab"], MergeTable(())) == ["a##", "b"]


@pytest.mark.parametrize("token", ["$$en", "@@", "@s@", "#U", "#L", "@-@", "<+NN><Fem>"])
def test_protected_passthrough(token):
    table = MergeTable((("$", "$"), ("@", "@"), ("#", "U"), ("e", "n")))
    assert apply_bpe([token], table) == [token]


def test_merge_bpe_plain():
    assert merge_bpe(["Fisch", "$$en"]) == ["Fisch", "$$en"]
    assert merge_bpe([]) == []


def test_merge_bpe_malformed():
    with pytest.raises(MalformedStream):
        merge_bpe(["Wir##"])
    with pytest.raises(MalformedStream):
        merge_bpe(["Wir##", "@@", "t"])
    errors = []
    assert merge_bpe(["a", "Wir##"], errors=errors) == ["a", "Wir"]
    assert len(errors) == 1


def test_table_serialization_roundtrip(tmp_path):
    table = MergeTable((("a", "b"), ("ab", "c"), ("ä", "ß")))
    assert MergeTable.loads(table.dumps()) == table
    path = tmp_path / "m.txt"
    table.save(path)
    assert MergeTable.load(path) == table
    with pytest.raises(ValueError):
        MergeTable.loads("a b\n")
    with pytest.raises(ValueError):
        MergeTable.loads("#morphoseg-bpe v1\na b c\n")


def test_repeated_pair_matches_literal_replay():
    # a table may contain the same pair twice; replay must still follow table order
    merges = [("a", "a"), ("aa", "a"), ("a", "a"), ("aa", "aa")]
    table = MergeTable(merges)
    for n in range(1, 12):
        word = "a" * n
        assert list(table.segment_word(word)) == oracles.bpe_segment(word, merges)


def _random_counts(rng):
    alphabet = rng.choice(["ab", "abc", "abcde", "aäbß", "xyz0"])
    words = {"".join(rng.choice(alphabet) for _ in range(rng.randint(1, 8)))
             for _ in range(rng.randint(1, 50))}
    return {w: rng.randint(1, 20) for w in words}


def test_learn_matches_oracle_on_random_corpora():
    rng = random.Random(7)
    for _ in range(300):
        counts = _random_counts(rng)
        n = rng.randint(0, 30)
        table = learn_from_counts(counts, n)
        assert list(table.merges) == oracles.bpe_learn(counts, n)
        for w in counts:
            assert list(table.segment_word(w)) == oracles.bpe_segment(w, table.merges)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.text(min_size=1).filter(lambda t: not any(c.isspace() for c in t)),
                         max_size=6), max_size=6),
       st.integers(0, 30))
def test_apply_merge_roundtrip(corpus, n):
    corpus = [[escape_corpus_token(t) for t in s] for s in corpus]
    table = learn_bpe(corpus, BpeConfig(num_merges=n))
    for sentence in corpus:
        assert merge_bpe(apply_bpe(sentence, table)) == sentence
