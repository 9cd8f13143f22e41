"""Frequency-based compound splitting and its inverse.

A word is split into known parts, optionally linked by filler letters, when
the geometric mean of the part frequencies beats the word's own frequency::

    Zierfisch -> #U zier @@ Fisch
    Jahreswechsel -> #U Jahr @es@ Wechsel

Parts are written in their most frequent corpus casing; the leading case
mark restores the case of the first letter on joining, and non-initial parts
are lowercased.
"""

from collections import Counter
from dataclasses import dataclass, field

from .affix import GERMAN_SUFFIXES
from .core import DEFAULT_SCHEME, MalformedStream, TokenKind, fold, token_kind

PART_KINDS = (TokenKind.PLAIN, TokenKind.BPE_CONTINUATION, TokenKind.LEMMA)
SEPARATOR_KINDS = (TokenKind.COMPOUND_SEP, TokenKind.FILLER)
CASE_KINDS = (TokenKind.CASE_UPPER, TokenKind.CASE_LOWER)


def german_fillers():
    """Standard linking elements plus every detachable suffix, with and without -s."""
    fillers = {"s", "es", "zu"}
    fillers.update(GERMAN_SUFFIXES)
    fillers.update(s + "s" for s in GERMAN_SUFFIXES)
    return tuple(sorted(fillers, key=lambda f: (len(f), f)))


@dataclass(frozen=True)
class CompoundConfig:
    min_part_size: int = 4
    min_part_count: int = 2
    max_part_count: int = 999_999_999
    fillers: tuple = ("s", "es")
    max_parts: int = 4

    def __post_init__(self):
        if self.min_part_size < 1:
            raise ValueError("min_part_size must be >= 1")
        if self.max_parts < 1:
            raise ValueError("max_parts must be >= 1")
        if any(not f or not f.isalpha() for f in self.fillers):
            raise ValueError("fillers must be non-empty letter strings")

    @classmethod
    def german(cls, **kwargs):
        kwargs.setdefault("fillers", german_fillers())
        return cls(**kwargs)


@dataclass(frozen=True, eq=False)
class FrequencyLexicon:
    """Case-folded word counts with the most frequent surface casing."""

    entries: dict = field(default_factory=dict)

    def __eq__(self, other):
        return isinstance(other, FrequencyLexicon) and self.entries == other.entries

    def __len__(self):
        return len(self.entries)

    def __contains__(self, word):
        return fold(word) in self.entries

    def count(self, word):
        entry = self.entries.get(fold(word))
        return entry[0] if entry else 0

    def canonical(self, word):
        entry = self.entries.get(fold(word))
        return entry[1] if entry else word

    def dumps(self):
        return "".join(f"{w}\t{c}\t{casing}\n" for w, (c, casing) in sorted(self.entries.items()))

    def save(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(self.dumps())

    @classmethod
    def loads(cls, text):
        entries = {}
        for lineno, line in enumerate(text.split("\n"), 1):
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ValueError(f"line {lineno}: expected word<TAB>count<TAB>casing")
            word, count, casing = fields
            count = int(count)
            if count < 1:
                raise ValueError(f"line {lineno}: count must be >= 1")
            entries[word] = (count, casing)
        return cls(entries)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as f:
            return cls.loads(f.read())


def build_frequency_lexicon(corpus, scheme=DEFAULT_SCHEME) -> FrequencyLexicon:
    """Count plain tokens case-insensitively; marker tokens are skipped."""
    surface = Counter()
    first_seen = {}
    for sentence in corpus:
        for token in sentence:
            if token_kind(token, scheme) is not TokenKind.PLAIN:
                continue
            surface[token] += 1
            first_seen.setdefault(token, len(first_seen))
    grouped = {}
    for token in sorted(surface, key=first_seen.__getitem__):
        grouped.setdefault(fold(token), []).append(token)
    entries = {}
    for key, forms in grouped.items():
        total = sum(surface[f] for f in forms)
        # max() keeps the first form among equals, i.e. the first seen
        best = max(forms, key=surface.__getitem__)
        entries[key] = (total, best)
    return FrequencyLexicon(entries)


class CompoundSplitter:
    """Split words against a frequency lexicon; results are cached per word."""

    def __init__(self, lexicon: FrequencyLexicon, config: CompoundConfig = CompoundConfig(),
                 scheme=DEFAULT_SCHEME):
        self.lexicon = lexicon
        self.config = config
        self.scheme = scheme
        self._filler_set = frozenset(config.fillers)
        self._filler_lengths = sorted({len(f) for f in config.fillers})
        self._cache = {}

    def split(self, token):
        result = self._cache.get(token)
        if result is None:
            result = self._cache[token] = self._split(token)
        return list(result)

    def best_decomposition(self, word):
        """Return ``(parts, fillers)`` of the winning decomposition.

        ``parts`` are ``(start, end)`` offsets, ``fillers`` the filler
        strings between consecutive parts (``""`` for none).
        """
        cfg = self.config
        f = fold(word)
        n = len(f)
        cap = cfg.max_part_count
        entries = self.lexicon.entries

        def part_count(i, j):
            entry = entries.get(f[i:j])
            return min(entry[0], cap) if entry else 0

        own = part_count(0, n)
        best = [own, 1, _tie_key([n]), ((0, n),), ()]
        if cfg.max_parts < 2 or n < 2 * cfg.min_part_size:
            return best[3], best[4]

        floor = max(cfg.min_part_count, 1)
        ends = [[] for _ in range(n + 1)]
        for i in range(n - cfg.min_part_size + 1):
            for j in range(i + cfg.min_part_size, n + 1):
                c = part_count(i, j)
                if c >= floor:
                    ends[i].append((j, c))

        parts = []
        fills = []  # filler before each non-initial part, "" for a plain separator

        def consider(product):
            k = len(parts)
            lengths = [parts[0][1] - parts[0][0]]
            for (i, j), filler in zip(parts[1:], fills):
                lengths += [len(filler), j - i]
            key = _tie_key(lengths)
            lhs, rhs = product ** best[1], best[0] ** k
            if lhs > rhs or (lhs == rhs and (k, key) < (best[1], best[2])):
                best[:] = [product, k, key, tuple(parts), tuple(fills)]

        def extend(start, product):
            for j, c in ends[start]:
                parts.append((start, j))
                p = product * c
                if j == n:
                    if len(parts) >= 2:
                        consider(p)
                elif len(parts) < cfg.max_parts:
                    fills.append("")
                    extend(j, p)
                    fills.pop()
                    for length in self._filler_lengths:
                        if j + length >= n:
                            break
                        if f[j:j + length] in self._filler_set:
                            fills.append(word[j:j + length])
                            extend(j + length, p)
                            fills.pop()
                parts.pop()

        extend(0, 1)
        return best[3], best[4]

    def _split(self, token):
        if token_kind(token, self.scheme) is not TokenKind.PLAIN:
            return (token,)
        parts, fillers = self.best_decomposition(token)
        if len(parts) < 2:
            return (token,)
        scheme = self.scheme
        out = [scheme.case_upper if token[0].isupper() else scheme.case_lower]
        for idx, (i, j) in enumerate(parts):
            if idx:
                filler = fillers[idx - 1]
                out.append(scheme.filler_token(filler) if filler else scheme.compound_sep)
            out.append(self.lexicon.canonical(token[i:j]))
        try:
            if join_compound(out, scheme) != [token]:
                return (token,)
        except MalformedStream:
            return (token,)
        return tuple(out)


def _tie_key(lengths):
    return tuple(-x for x in lengths)


def split_compound(token, lexicon, config=CompoundConfig(), scheme=DEFAULT_SCHEME):
    return CompoundSplitter(lexicon, config, scheme).split(token)


def _lower_first(text):
    return text[:1].lower() + text[1:]


def _apply_case(text, mark_kind):
    if mark_kind is TokenKind.CASE_UPPER:
        return text[:1].upper() + text[1:]
    return text[:1].lower() + text[1:]


def join_compound(stream, scheme=DEFAULT_SCHEME, errors=None):
    """Merge every run ``[#U|#L] p1 (@@|@f@) p2 ...`` into one word."""
    tokens = list(stream)
    kinds = [token_kind(t, scheme) for t in tokens]
    out = []
    i = 0
    n = len(tokens)
    while i < n:
        kind = kinds[i]
        if kind in CASE_KINDS:
            if i + 1 >= n or kinds[i + 1] not in PART_KINDS:
                _report(errors, f"case mark {tokens[i]!r} without a following part")
                i += 1
                continue
            word, i = _collect(tokens, kinds, i + 1, scheme, errors)
            out.append(_apply_case(word, kind))
        elif kind in PART_KINDS and i + 1 < n and kinds[i + 1] in SEPARATOR_KINDS:
            word, i = _collect(tokens, kinds, i, scheme, errors)
            out.append(word)
        elif kind in SEPARATOR_KINDS:
            _report(errors, f"separator {tokens[i]!r} without a preceding part")
            i += 1
        else:
            out.append(tokens[i])
            i += 1
    return out


def _collect(tokens, kinds, i, scheme, errors):
    word = tokens[i]
    i += 1
    n = len(tokens)
    while i < n and kinds[i] in SEPARATOR_KINDS:
        sep = tokens[i]
        if i + 1 >= n or kinds[i + 1] not in PART_KINDS:
            _report(errors, f"separator {sep!r} without a following part")
            i += 1
            break
        if kinds[i] is TokenKind.FILLER:
            word += sep[1:-1]
        word += _lower_first(tokens[i + 1])
        i += 2
    return word, i


def _report(errors, message):
    if errors is None:
        raise MalformedStream(message)
    errors.append(message)
