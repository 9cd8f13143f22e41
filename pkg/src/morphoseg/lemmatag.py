"""Lemma-tag codec.

Analyzed words become two tokens, the morphological tag followed by the
lemma; decoding looks the pair up in an inflection lexicon::

    <+NN><Fem><Acc><Pl><NA> Grenze  ->  Grenzen
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field

from .core import (DEFAULT_SCHEME, TAG_RE, Token, TokenKind, escape_corpus_token,
                   MalformedStream, token_kind, unescape_corpus_token)

logger = logging.getLogger(__name__)

ABSENT = "_"
MARKUP_RE = re.compile(r"<[^<>]*>")
NOMINAL_POS = ("<+NN>", "<+NPROP>")


class AnnotationError(ValueError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class AnalyzedToken:
    surface: str
    lemma: str = None
    tag: str = None

    @property
    def is_passthrough(self):
        return self.lemma is None


def is_tag(text):
    return TAG_RE.fullmatch(text) is not None


def parse_annotation_line(line, lineno=0):
    fields = line.split("\t")
    if len(fields) != 3:
        raise AnnotationError(lineno, f"expected 3 tab-separated columns, got {len(fields)}")
    surface, lemma, tag = fields
    if not surface or any(c.isspace() for c in surface):
        raise AnnotationError(lineno, f"invalid surface {surface!r}")
    lemma = None if lemma in ("", ABSENT) else lemma
    tag = None if tag in ("", ABSENT) else tag
    if (lemma is None) != (tag is None):
        raise AnnotationError(lineno, "lemma and tag must both be present or both absent")
    if tag is not None and not is_tag(tag):
        raise AnnotationError(lineno, f"malformed tag {tag!r}")
    if lemma is not None and any(c.isspace() for c in lemma):
        raise AnnotationError(lineno, f"lemma contains whitespace: {lemma!r}")
    return AnalyzedToken(surface, lemma, tag)


def read_annotations(lines):
    """Parse ``surface<TAB>lemma<TAB>tag`` lines into sentences.

    ``lines`` is any iterable of text lines (an open file works). Sentences
    are separated by blank lines.
    """
    sentences = []
    current = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line:
            sentences.append(current)
            current = []
            continue
        current.append(parse_annotation_line(line, lineno))
    if current:
        sentences.append(current)
    return sentences


def format_annotations(sentences):
    out = []
    for sentence in sentences:
        for tok in sentence:
            out.append(f"{tok.surface}\t{tok.lemma or ABSENT}\t{tok.tag or ABSENT}\n")
        out.append("\n")
    return "".join(out)


def encode_tokens(sentence, scheme=DEFAULT_SCHEME):
    out = []
    for tok in sentence:
        if tok.is_passthrough:
            out.append(Token(escape_corpus_token(tok.surface, scheme), TokenKind.PLAIN))
        else:
            out.append(Token(tok.tag, TokenKind.TAG))
            out.append(Token(escape_corpus_token(tok.lemma, scheme), TokenKind.LEMMA))
    return out


def encode_lemmatag(sentence, scheme=DEFAULT_SCHEME):
    """Replace each analyzed word by its tag and lemma tokens."""
    return [t.text for t in encode_tokens(sentence, scheme)]


def surfaces(sentence):
    return [tok.surface for tok in sentence]


@dataclass(frozen=True, eq=False)
class InflectionLexicon:
    """``(lemma, tag)`` -> candidate surfaces, most frequent first."""

    entries: dict = field(default_factory=dict)

    def __eq__(self, other):
        return isinstance(other, InflectionLexicon) and self.entries == other.entries

    def __len__(self):
        return len(self.entries)

    def candidates(self, lemma, tag):
        return self.entries.get((lemma, tag), ())

    def best(self, lemma, tag):
        cands = self.entries.get((lemma, tag))
        return cands[0][0] if cands else None

    @classmethod
    def from_counts(cls, counts):
        grouped = {}
        for (lemma, tag, surface), c in counts.items():
            if c < 1:
                raise ValueError("inflection counts must be >= 1")
            grouped.setdefault((lemma, tag), []).append((surface, c))
        return cls({key: tuple(sorted(v, key=lambda sc: (-sc[1], sc[0])))
                    for key, v in grouped.items()})

    def merged(self, other):
        """Union of two lexicons; counts of shared candidates are added."""
        counts = Counter()
        for lex in (self, other):
            for (lemma, tag), cands in lex.entries.items():
                for surface, c in cands:
                    counts[lemma, tag, surface] += c
        return InflectionLexicon.from_counts(counts)

    def dumps(self):
        lines = []
        for (lemma, tag) in sorted(self.entries):
            for surface, c in self.entries[lemma, tag]:
                lines.append(f"{lemma}\t{tag}\t{surface}\t{c}\n")
        return "".join(lines)

    def save(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(self.dumps())

    @classmethod
    def loads(cls, text):
        counts = Counter()
        for lineno, line in enumerate(text.split("\n"), 1):
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise AnnotationError(lineno, "expected lemma<TAB>tag<TAB>surface<TAB>count")
            lemma, tag, surface, c = fields
            if not is_tag(tag):
                raise AnnotationError(lineno, f"malformed tag {tag!r}")
            counts[lemma, tag, surface] += int(c)
        return cls.from_counts(counts)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as f:
            return cls.loads(f.read())


def build_inflection_lexicon(annotations, freq_list=None) -> InflectionLexicon:
    """Count every observed (lemma, tag, surface) triple.

    With ``freq_list`` (a :class:`~morphoseg.compound.FrequencyLexicon` or a
    plain mapping from surface to count) a surface's count is taken from the
    list whenever the list knows it.
    """
    counts = Counter()
    for sentence in annotations:
        for tok in sentence:
            if not tok.is_passthrough:
                counts[tok.lemma, tok.tag, tok.surface] += 1
    if freq_list is not None:
        lookup = freq_list.count if hasattr(freq_list, "count") and not isinstance(freq_list, dict) \
            else (lambda s: freq_list.get(s, 0))
        for key in counts:
            external = lookup(key[2])
            if external > 0:
                counts[key] = external
    return InflectionLexicon.from_counts(counts)


def fallback_surface(lemma, tag):
    """Spell out a lemma the lexicon does not know.

    Markup such as ``<NN>`` or ``<TRUNC>`` is removed, the segments it
    separated are concatenated with non-initial segments lowercased (except
    after a truncation hyphen), and the result is capitalized for nouns.
    """
    segments = [s for s in MARKUP_RE.split(lemma) if s]
    if not segments:
        return lemma
    word = segments[0]
    for seg in segments[1:]:
        word += seg if word.endswith("-") else seg[:1].lower() + seg[1:]
    if tag.startswith(NOMINAL_POS):
        word = word[:1].upper() + word[1:]
    return word


def decode_lemmatag(stream, lexicon: InflectionLexicon, scheme=DEFAULT_SCHEME, errors=None):
    """Re-inflect tag/lemma pairs; plain tokens pass through.

    Never fails: orphan tags and orphan lemmas are dropped and reported
    through ``errors`` (a list) or the module logger.
    """
    out = []
    tokens = list(stream)
    i = 0
    n = len(tokens)
    while i < n:
        token = tokens[i]
        if is_tag(token):
            if i + 1 >= n or is_tag(tokens[i + 1]):
                _diagnose(errors, f"tag {token!r} without a lemma dropped")
                i += 1
                continue
            lemma = _unescape(tokens[i + 1], scheme, errors)
            out.append(lexicon.best(lemma, token) or fallback_surface(lemma, token))
            i += 2
            continue
        if token_kind(token, scheme) is TokenKind.PLAIN and MARKUP_RE.search(token):
            _diagnose(errors, f"lemma {token!r} without a tag dropped")
            i += 1
            continue
        out.append(_unescape(token, scheme, errors))
        i += 1
    return out


def _unescape(token, scheme, errors):
    try:
        return unescape_corpus_token(token, scheme)
    except MalformedStream as exc:
        _diagnose(errors, str(exc))
        return token


def _diagnose(errors, message):
    if errors is None:
        logger.warning(message)
    else:
        errors.append(message)
