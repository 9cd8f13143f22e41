"""Byte pair encoding with a right-attached continuation marker.

Pieces of a split word carry the BPE marker on every piece but the last::

    Wirt -> Wir## t

Protected marker tokens (suffix tokens, compound separators, fillers, case
marks, hyphen tokens, morphological tags) are neither counted nor split.
"""

import bisect
import heapq
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .core import DEFAULT_SCHEME, MARKER_KINDS, MalformedStream, PROTECTED_KINDS, token_kind

FILE_HEADER = "#morphoseg-bpe v1"
DEFAULT_NUM_MERGES = 29500


@dataclass(frozen=True)
class BpeConfig:
    num_merges: int = DEFAULT_NUM_MERGES
    joint: bool = True
    protected_kinds: frozenset = PROTECTED_KINDS

    def __post_init__(self):
        if self.num_merges < 0:
            raise ValueError("num_merges must be >= 0")


@dataclass(frozen=True, eq=False)
class MergeTable:
    merges: tuple
    num_merges: int = None
    _ranks: dict = field(init=False, repr=False)
    _cache: dict = field(init=False, repr=False)

    def __post_init__(self):
        merges = tuple(tuple(m) for m in self.merges)
        object.__setattr__(self, "merges", merges)
        if self.num_merges is None:
            object.__setattr__(self, "num_merges", len(merges))
        ranks = {}
        for i, pair in enumerate(merges):
            ranks.setdefault(pair, []).append(i)
        object.__setattr__(self, "_ranks", ranks)
        object.__setattr__(self, "_cache", {})

    def __eq__(self, other):
        return isinstance(other, MergeTable) and self.merges == other.merges

    def __hash__(self):
        return hash(self.merges)

    def __len__(self):
        return len(self.merges)

    def segment_word(self, word):
        """Split ``word`` into pieces by replaying the merges in table order."""
        pieces = self._cache.get(word)
        if pieces is None:
            pieces = self._cache[word] = tuple(_replay(word, self.merges, self._ranks))
        return pieces

    def dumps(self):
        lines = [FILE_HEADER]
        lines.extend(f"{a} {b}" for a, b in self.merges)
        return "\n".join(lines) + "\n"

    def save(self, path):
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(self.dumps())

    @classmethod
    def loads(cls, text):
        lines = text.split("\n")
        if not lines or lines[0].rstrip("\r") != FILE_HEADER:
            raise ValueError(f"not a merge table: expected header {FILE_HEADER!r}")
        merges = []
        for lineno, line in enumerate(lines[1:], 2):
            line = line.rstrip("\r")
            if not line:
                continue
            parts = line.split(" ")
            if len(parts) != 2 or not all(parts):
                raise ValueError(f"line {lineno}: malformed merge {line!r}")
            merges.append(tuple(parts))
        return cls(tuple(merges))

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as f:
            return cls.loads(f.read())


def _replay(word, merges, ranks):
    # Equivalent to applying every merge of the table in order, but only
    # visits merges whose pair is present. A pair may occur more than once
    # in a table, so each pair maps to its ascending list of ranks.
    symbols = list(word)
    last = -1
    while len(symbols) > 1:
        best = None
        for pair in zip(symbols, symbols[1:]):
            rs = ranks.get(pair)
            if rs is None:
                continue
            k = bisect.bisect_right(rs, last)
            if k < len(rs) and (best is None or rs[k] < best):
                best = rs[k]
        if best is None:
            break
        symbols = _merge_pair(symbols, merges[best])
        last = best
    return symbols


def _merge_pair(symbols, pair):
    a, b = pair
    out = []
    i = 0
    n = len(symbols)
    while i < n:
        if i < n - 1 and symbols[i] == a and symbols[i + 1] == b:
            out.append(a + b)
            i += 2
        else:
            out.append(symbols[i])
            i += 1
    return out


def word_counts(corpus, scheme=DEFAULT_SCHEME, protected_kinds=PROTECTED_KINDS):
    """Count the segmentable word types of a corpus of token lists."""
    counts = Counter()
    for sentence in corpus:
        counts.update(sentence)
    for word in list(counts):
        if token_kind(word, scheme) in protected_kinds:
            del counts[word]
    return counts


def learn_bpe(corpus, config: BpeConfig = BpeConfig(), scheme=DEFAULT_SCHEME) -> MergeTable:
    """Learn merge operations from an iterable of token lists.

    Pairs are counted over word types weighted by frequency. Among pairs of
    equal frequency the lexicographically smallest ``(left, right)`` wins.
    """
    counts = word_counts(corpus, scheme, config.protected_kinds)
    return learn_from_counts(counts, config.num_merges)


def learn_from_counts(counts, num_merges):
    words = [list(w) for w in sorted(counts)]
    freqs = [counts[w] for w in sorted(counts)]

    pair_counts = defaultdict(int)
    where = defaultdict(set)
    for idx, (symbols, freq) in enumerate(zip(words, freqs)):
        for pair in zip(symbols, symbols[1:]):
            pair_counts[pair] += freq
            where[pair].add(idx)

    heap = [(-c, a, b) for (a, b), c in pair_counts.items()]
    heapq.heapify(heap)

    merges = []
    while len(merges) < num_merges and heap:
        neg, a, b = heapq.heappop(heap)
        pair = (a, b)
        if pair_counts.get(pair, 0) != -neg or neg == 0:
            continue
        merges.append(pair)
        changed = set()
        for idx in sorted(where.pop(pair, ())):
            symbols = words[idx]
            new = _merge_pair(symbols, pair)
            if len(new) == len(symbols):
                continue
            freq = freqs[idx]
            for p in zip(symbols, symbols[1:]):
                pair_counts[p] -= freq
                changed.add(p)
            for p in zip(new, new[1:]):
                pair_counts[p] += freq
                where[p].add(idx)
                changed.add(p)
            words[idx] = new
        pair_counts.pop(pair, None)
        changed.discard(pair)
        for p in changed:
            c = pair_counts[p]
            if c > 0:
                heapq.heappush(heap, (-c, p[0], p[1]))
            else:
                del pair_counts[p]
    return MergeTable(tuple(merges), num_merges)


def apply_bpe(sentence, merges: MergeTable, scheme=DEFAULT_SCHEME,
              protected_kinds=PROTECTED_KINDS):
    out = []
    marker = scheme.bpe_marker
    for token in sentence:
        if token_kind(token, scheme) in protected_kinds:
            out.append(token)
            continue
        pieces = merges.segment_word(token)
        out.extend(p + marker for p in pieces[:-1])
        out.append(pieces[-1])
    return out


def merge_bpe(sentence, scheme=DEFAULT_SCHEME, errors=None):
    """Join every run ``x1## x2## ... xn`` back into one token.

    Malformed input raises :class:`MalformedStream` unless an ``errors`` list
    is given, in which case a diagnostic is appended and the stream is
    repaired as well as possible.
    """
    marker = scheme.bpe_marker
    out = []
    pending = []
    for token in sentence:
        if pending and token_kind(token, scheme) in MARKER_KINDS:
            _report(errors, f"continuation piece {pending[-1]!r} followed by marker {token!r}")
            out.append("".join(pending))
            pending = []
        if len(token) > len(marker) and token.endswith(marker) \
                and token_kind(token, scheme) not in MARKER_KINDS:
            pending.append(token[:-len(marker)])
            continue
        if pending:
            pending.append(token)
            out.append("".join(pending))
            pending = []
        else:
            out.append(token)
    if pending:
        _report(errors, "stream ends with a continuation piece")
        out.append("".join(pending))
    return out


def _report(errors, message):
    if errors is None:
        raise MalformedStream(message)
    errors.append(message)
