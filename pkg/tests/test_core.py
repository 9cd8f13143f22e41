import pytest
from hypothesis import given, strategies as st

from morphoseg.core import (DEFAULT_SCHEME, MalformedStream, MarkerScheme, TokenKind, fold,
                            escape_corpus_token, format_sentence, read_sentences, token_kind,
                            unescape_corpus_token)

MARKERISH = st.text(alphabet=st.sampled_from("$@#-U L￰ab0"), max_size=12)


@pytest.mark.parametrize("raw", ["Haus", "$$$", "a@@b", "#U", "@-@", "x##", "￰", "￰99"])
def test_escape_roundtrip_examples(raw):
    esc = escape_corpus_token(raw)
    assert unescape_corpus_token(esc) == raw
    assert token_kind(esc) is TokenKind.PLAIN or esc == raw == "Haus"


def test_escape_leaves_plain_words_alone():
    assert escape_corpus_token("Haus") == "Haus"
    assert escape_corpus_token("EU-Kommission") == "EU-Kommission"


def test_escaped_form_contains_no_marker_characters():
    esc = escape_corpus_token("$$x@@y##z#U")
    assert not set("$@#") & set(esc)


@given(st.text() | MARKERISH)
def test_escape_roundtrip_fuzz(raw):
    esc = escape_corpus_token(raw)
    assert unescape_corpus_token(esc) == raw
    for m in DEFAULT_SCHEME.markers():
        assert m not in esc


@pytest.mark.parametrize("bad", ["￰", "￰a1", "x￰7", "￰99"])
def test_unescape_rejects_corrupt_codes(bad):
    with pytest.raises(MalformedStream):
        unescape_corpus_token(bad)


@pytest.mark.parametrize("text,kind", [
    ("$$en", TokenKind.SUFFIX),
    ("@es@", TokenKind.FILLER),
    ("@s@", TokenKind.FILLER),
    ("Fisch", TokenKind.PLAIN),
    ("@@", TokenKind.COMPOUND_SEP),
    ("#U", TokenKind.CASE_UPPER),
    ("#L", TokenKind.CASE_LOWER),
    ("@-@", TokenKind.HYPHEN),
    ("Neben##", TokenKind.BPE_CONTINUATION),
    ("<+NN><Fem><Acc><Pl><NA>", TokenKind.TAG),
    ("[NN]", TokenKind.TAG),
    ("$$", TokenKind.PLAIN),
    ("##", TokenKind.PLAIN),
    ("@1@", TokenKind.PLAIN),
])
def test_token_kind(text, kind):
    assert token_kind(text) is kind


def test_scheme_validation():
    with pytest.raises(ValueError):
        MarkerScheme(suffix_marker="@@")
    with pytest.raises(ValueError):
        MarkerScheme(bpe_marker="a b")
    with pytest.raises(ValueError):
        MarkerScheme(escape_prefix="x")


def test_custom_scheme_roundtrip():
    scheme = MarkerScheme(suffix_marker="%%", bpe_marker="&&")
    esc = escape_corpus_token("100%&&", scheme)
    assert "%" not in esc and "&" not in esc
    assert unescape_corpus_token(esc, scheme) == "100%&&"


@given(st.text())
def test_fold_preserves_length(word):
    f = fold(word)
    assert len(f) == len(word)


def test_fold_examples():
    assert fold("Fisch") == "fisch"
    assert fold("STRASSE") == "strasse"
    assert fold("İx") == "İx"  # lowercase form is two code points


def test_read_and_format():
    lines = ["a  b\n", "\n", "c\r\n"]
    assert list(read_sentences(lines)) == [["a", "b"], [], ["c"]]
    assert format_sentence(["a", "b"]) == "a b"
