"""Token model and marker conventions shared by every stage.

A sentence is a plain ``list[str]``. Every marker-bearing token is
self-describing, so :func:`classify_token` recovers a token's kind from its
text alone (lemma tokens excepted: they are plain text positioned after a
tag).
"""

import enum
import re
from dataclasses import dataclass, field


class MalformedStream(ValueError):
    """A token stream violates the marker grammar and cannot be inverted."""


class TokenKind(enum.Enum):
    PLAIN = "plain"
    SUFFIX = "suffix"
    COMPOUND_SEP = "compound-sep"
    CASE_UPPER = "case-upper"
    CASE_LOWER = "case-lower"
    FILLER = "filler"
    HYPHEN = "hyphen"
    BPE_CONTINUATION = "bpe-continuation"
    TAG = "tag"
    LEMMA = "lemma"


# kinds the BPE stage never segments and never counts
PROTECTED_KINDS = frozenset({
    TokenKind.SUFFIX,
    TokenKind.COMPOUND_SEP,
    TokenKind.CASE_UPPER,
    TokenKind.CASE_LOWER,
    TokenKind.FILLER,
    TokenKind.HYPHEN,
    TokenKind.TAG,
})

MARKER_KINDS = PROTECTED_KINDS - {TokenKind.TAG}

TAG_RE = re.compile(r"(?:<[^<>\s]+>)+|\[[^\[\]\s]+\]")


@dataclass(frozen=True)
class Token:
    text: str
    kind: TokenKind = TokenKind.PLAIN


@dataclass(frozen=True)
class MarkerScheme:
    """The textual markers used in segmented streams.

    Filler tokens are the filler letters wrapped in the first and last
    character of ``compound_sep`` (``@es@`` for the default ``@@``).
    ``escape_prefix`` is a single reserved character introducing a two-digit
    escape code.
    """

    suffix_marker: str = "$$"
    compound_sep: str = "@@"
    bpe_marker: str = "##"
    case_upper: str = "#U"
    case_lower: str = "#L"
    hyphen_token: str = "@-@"
    escape_prefix: str = "\uFFF0"
    _escapable: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        markers = self.markers()
        if any(not m or any(c.isspace() for c in m) for m in markers):
            raise ValueError("marker strings must be non-empty and whitespace-free")
        if len(set(markers)) != len(markers):
            raise ValueError("marker strings must be pairwise distinct")
        if len(self.escape_prefix) != 1 or self.escape_prefix.isalnum():
            raise ValueError("escape_prefix must be one non-alphanumeric character")
        special = set()
        for m in markers:
            chars = {c for c in m if not c.isalnum() and c != "-"}
            if not chars:
                raise ValueError(f"marker {m!r} needs at least one symbol character")
            special |= chars
        special.discard(self.escape_prefix)
        escapable = tuple(sorted(special)) + (self.escape_prefix,)
        if len(escapable) > 100:
            raise ValueError("too many distinct marker characters")
        object.__setattr__(self, "_escapable", escapable)

    def markers(self):
        return (self.suffix_marker, self.compound_sep, self.bpe_marker,
                self.case_upper, self.case_lower, self.hyphen_token)

    def filler_token(self, letters):
        return self.compound_sep[0] + letters + self.compound_sep[-1]

    def suffix_token(self, suffix):
        return self.suffix_marker + suffix


DEFAULT_SCHEME = MarkerScheme()


def escape_corpus_token(raw: str, scheme: MarkerScheme = DEFAULT_SCHEME) -> str:
    """Replace every marker character in ``raw`` with a reversible code.

    All symbol characters occurring in any marker (``$``, ``@``, ``#`` by
    default) are escaped, together with the escape character itself, so no
    marker-shaped substring survives.
    """
    codes = scheme._escapable
    if not any(c in raw for c in codes):
        return raw
    out = []
    for c in raw:
        if c in codes:
            out.append(f"{scheme.escape_prefix}{codes.index(c):02d}")
        else:
            out.append(c)
    return "".join(out)


def unescape_corpus_token(escaped: str, scheme: MarkerScheme = DEFAULT_SCHEME) -> str:
    esc = scheme.escape_prefix
    if esc not in escaped:
        return escaped
    codes = scheme._escapable
    out = []
    i = 0
    n = len(escaped)
    while i < n:
        c = escaped[i]
        if c != esc:
            out.append(c)
            i += 1
            continue
        digits = escaped[i + 1:i + 3]
        if len(digits) != 2 or not (digits.isascii() and digits.isdigit()) \
                or int(digits) >= len(codes):
            raise MalformedStream(f"corrupted escape sequence at offset {i} in {escaped!r}")
        out.append(codes[int(digits)])
        i += 3
    return "".join(out)


def classify_token(text: str, scheme: MarkerScheme = DEFAULT_SCHEME) -> Token:
    return Token(text, token_kind(text, scheme))


def token_kind(text: str, scheme: MarkerScheme = DEFAULT_SCHEME) -> TokenKind:
    if text == scheme.hyphen_token:
        return TokenKind.HYPHEN
    if text == scheme.compound_sep:
        return TokenKind.COMPOUND_SEP
    if text == scheme.case_upper:
        return TokenKind.CASE_UPPER
    if text == scheme.case_lower:
        return TokenKind.CASE_LOWER
    if len(text) > len(scheme.suffix_marker) and text.startswith(scheme.suffix_marker):
        return TokenKind.SUFFIX
    if is_filler(text, scheme):
        return TokenKind.FILLER
    if TAG_RE.fullmatch(text):
        return TokenKind.TAG
    if len(text) > len(scheme.bpe_marker) and text.endswith(scheme.bpe_marker):
        return TokenKind.BPE_CONTINUATION
    return TokenKind.PLAIN


def is_filler(text, scheme=DEFAULT_SCHEME):
    open_, close = scheme.compound_sep[0], scheme.compound_sep[-1]
    return (len(text) > 2 and text[0] == open_ and text[-1] == close
            and text[1:-1].isalpha())


def filler_letters(text, scheme=DEFAULT_SCHEME):
    return text[1:-1]


def is_protected(text, scheme=DEFAULT_SCHEME):
    return token_kind(text, scheme) in PROTECTED_KINDS


def fold(word: str) -> str:
    """Lowercase ``word`` character by character, keeping its length.

    Characters whose lowercase form is longer than one code point are kept
    as they are, so indices into the folded string map onto the original.
    """
    if word.islower():
        return word
    return "".join(c if len(lc := c.lower()) != 1 else lc for c in word)


def read_sentences(stream):
    """Yield token lists from sentence-per-line text."""
    for line in stream:
        line = line.rstrip("\n")
        if line.endswith("\r"):
            line = line[:-1]
        yield line.split()


def format_sentence(tokens) -> str:
    return " ".join(tokens)
