"""Corpus preparation and the full segmentation / desegmentation cascades."""

import enum
import re
from collections import Counter
from dataclasses import dataclass, field

from . import affix, lemmatag
from .compound import (CompoundConfig, CompoundSplitter, FrequencyLexicon, build_frequency_lexicon,
                       join_compound)
from .bpe import BpeConfig, MergeTable, apply_bpe, merge_bpe
from .core import (DEFAULT_SCHEME, MalformedStream, TokenKind, escape_corpus_token, fold,
                   token_kind, unescape_corpus_token)


class ConfigError(ValueError):
    """The configuration or the supplied resources do not fit together."""


class Strategy(enum.Enum):
    BASELINE = "baseline"
    LEMMATAG = "lemmatag"
    SEGMENTATION = "segmentation"


class Language(enum.Enum):
    GERMAN = "de"
    CZECH_LIGHT = "cs-light"
    CZECH_AGGRESSIVE = "cs-aggressive"

    @property
    def splits_compounds(self):
        return self is Language.GERMAN

    def rules(self):
        return affix.rules_for(self.value)


@dataclass(frozen=True)
class PipelineConfig:
    strategy: Strategy = Strategy.SEGMENTATION
    language: Language = Language.GERMAN
    bpe: BpeConfig = BpeConfig()
    compound: CompoundConfig = field(default_factory=CompoundConfig.german)
    max_len_raw: int = 50
    max_len_bpe: int = 60
    truecase_model: str = None
    hyphen_split: bool = None

    def __post_init__(self):
        if self.max_len_raw > self.max_len_bpe:
            raise ConfigError("max_len_raw must not exceed max_len_bpe")
        if self.hyphen_split is None:
            object.__setattr__(self, "hyphen_split", self.strategy is Strategy.SEGMENTATION)


@dataclass
class Resources:
    """Loaded models a pipeline run needs; unused ones stay ``None``."""

    merges: MergeTable = None
    lexicon: FrequencyLexicon = None
    truecaser: "TruecaseModel" = None
    inflections: lemmatag.InflectionLexicon = None
    rules: affix.AffixRuleSet = None
    scheme: object = DEFAULT_SCHEME
    _splitter: CompoundSplitter = field(default=None, init=False, repr=False)

    def splitter(self, config):
        if self._splitter is None:
            self._splitter = CompoundSplitter(self.lexicon, config.compound, self.scheme)
        return self._splitter


# --- tokenization -----------------------------------------------------------

PUNCTUATION = '.,;:!?"()'


def tokenize(line, scheme=DEFAULT_SCHEME, escape=False):
    """Split on whitespace and detach sentence punctuation from word edges."""
    out = []
    for chunk in line.split():
        start, end = 0, len(chunk)
        while start < end and chunk[start] in PUNCTUATION:
            start += 1
        while end > start and chunk[end - 1] in PUNCTUATION:
            end -= 1
        out.extend(chunk[:start])
        if start < end:
            out.append(chunk[start:end])
        out.extend(chunk[end:])
    if escape:
        out = [escape_corpus_token(t, scheme) for t in out]
    return out


# --- hyphen splitting ---------------------------------------------------------

_HYPHEN_RE = re.compile(r"(?<=[^\W_])-(?=[^\W_])")


def hyphen_split(sentence, scheme=DEFAULT_SCHEME):
    """Turn each hyphen between two alphanumerics into a standalone token."""
    out = []
    for token in sentence:
        if "-" not in token or token_kind(token, scheme) is not TokenKind.PLAIN:
            out.append(token)
            continue
        pieces = _HYPHEN_RE.split(token)
        out.append(pieces[0])
        for piece in pieces[1:]:
            out.append(scheme.hyphen_token)
            out.append(piece)
    return out


def hyphen_join(sentence, scheme=DEFAULT_SCHEME, errors=None):
    """Glue ``X @-@ Y`` back into ``X-Y``."""
    out = []
    glue = False  # the next token continues out[-1]
    for token in sentence:
        if token == scheme.hyphen_token:
            if not out or glue:
                _report(errors, "hyphen token without a preceding word")
                if not out:
                    out.append("")
            out[-1] += "-"
            glue = True
        elif glue:
            out[-1] += token
            glue = False
        else:
            out.append(token)
    if glue:
        _report(errors, "hyphen token at the end of the sentence")
    return out


# --- truecasing ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TruecaseModel:
    """Folded token -> (most frequent casing, its count)."""

    entries: dict = field(default_factory=dict)

    def __eq__(self, other):
        return isinstance(other, TruecaseModel) and self.entries == other.entries

    def best(self, token):
        entry = self.entries.get(fold(token))
        return entry[0] if entry else None

    def dumps(self):
        return "".join(f"{k}\t{casing}\t{c}\n" for k, (casing, c) in sorted(self.entries.items()))

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
                raise ValueError(f"line {lineno}: expected token<TAB>casing<TAB>count")
            count = int(fields[2])
            if count < 1:
                raise ValueError(f"line {lineno}: count must be >= 1")
            entries[fields[0]] = (fields[1], count)
        return cls(entries)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as f:
            return cls.loads(f.read())


def learn_truecaser(corpus) -> TruecaseModel:
    """Count casings of every token not in sentence-initial position."""
    counts = Counter()
    for sentence in corpus:
        counts.update(sentence[1:])
    grouped = {}
    for surface, c in counts.items():
        grouped.setdefault(fold(surface), []).append((surface, c))
    entries = {}
    for key, forms in grouped.items():
        surface, c = min(forms, key=lambda sc: (-sc[1], sc[0]))
        entries[key] = (surface, c)
    return TruecaseModel(entries)


def _lower_first(text):
    return text[:1].lower() + text[1:]


def apply_truecase(sentence, model: TruecaseModel):
    """Lowercase the first letter of the first token if the model prefers it."""
    if not sentence or model is None:
        return list(sentence)
    first = sentence[0]
    lowered = _lower_first(first)
    if lowered != first and len(lowered) == len(first) and model.best(first) == lowered \
            and first[0] == lowered[0].upper():
        return [lowered] + list(sentence[1:])
    return list(sentence)


def revert_truecase(sentence):
    """Capitalize the first letter of the first token."""
    if not sentence:
        return list(sentence)
    first = sentence[0]
    upper = first[:1].upper()
    if len(upper) != 1:
        return list(sentence)
    return [upper + first[1:]] + list(sentence[1:])


# --- length filtering ---------------------------------------------------------

@dataclass
class FilterReport:
    total: int = 0
    dropped_raw: int = 0
    dropped_bpe: int = 0

    @property
    def kept(self):
        return self.total - self.dropped_raw - self.dropped_bpe

    def lines(self):
        return [f"total\t{self.total}", f"dropped_raw\t{self.dropped_raw}",
                f"dropped_bpe\t{self.dropped_bpe}", f"kept\t{self.kept}"]


def filter_lengths(sources, targets, config: PipelineConfig, merges: MergeTable,
                   scheme=DEFAULT_SCHEME):
    """Drop training pairs that are too long before or after baseline BPE.

    Returns ``(kept_pairs, report)``.
    """
    sources, targets = list(sources), list(targets)
    if len(sources) != len(targets):
        raise ConfigError(f"source has {len(sources)} sentences, target has {len(targets)}")
    report = FilterReport(total=len(sources))
    kept = []
    for src, tgt in zip(sources, targets):
        if len(src) > config.max_len_raw or len(tgt) > config.max_len_raw:
            report.dropped_raw += 1
            continue
        if merges is not None and (
                len(apply_bpe(src, merges, scheme)) > config.max_len_bpe
                or len(apply_bpe(tgt, merges, scheme)) > config.max_len_bpe):
            report.dropped_bpe += 1
            continue
        kept.append((src, tgt))
    return kept, report


# --- compound lexicon ------------------------------------------------------------

def learn_frequency_lexicon(corpus, language: Language = None, truecaser=None,
                            scheme=DEFAULT_SCHEME) -> FrequencyLexicon:
    """Count words in the form the compound splitter will look them up in.

    Tokens are truecased and escaped; with a ``language`` they are also
    hyphen- and suffix-split first, so stems rather than inflected forms are
    counted.
    """
    rules = language.rules() if language is not None else None
    prepared = []
    for sentence in corpus:
        tokens = [escape_corpus_token(t, scheme) for t in apply_truecase(sentence, truecaser)]
        if rules is not None:
            tokens = affix.split_sentence(hyphen_split(tokens, scheme), rules, scheme)
        prepared.append(tokens)
    return build_frequency_lexicon(prepared, scheme)


# --- cascades -----------------------------------------------------------------

def check_resources(config: PipelineConfig, resources: Resources, bpe=True, decoding=False):
    if bpe and resources.merges is None and not decoding:
        raise ConfigError("a BPE merge table is required (or disable BPE)")
    if config.truecase_model and resources.truecaser is None:
        raise ConfigError(f"truecase model {config.truecase_model!r} was not loaded")
    if config.strategy is Strategy.SEGMENTATION and not decoding:
        if config.language.splits_compounds and resources.lexicon is None:
            raise ConfigError("compound splitting needs a frequency lexicon")
    if config.strategy is Strategy.LEMMATAG and decoding and resources.inflections is None:
        raise ConfigError("lemma-tag decoding needs an inflection lexicon")


def presegment(sentence, config: PipelineConfig, resources: Resources):
    """Every segmentation stage except BPE.

    For the lemma-tag strategy ``sentence`` is a list of
    :class:`~morphoseg.lemmatag.AnalyzedToken`.
    """
    scheme = resources.scheme
    if config.strategy is Strategy.LEMMATAG:
        return lemmatag.encode_lemmatag(sentence, scheme)
    tokens = apply_truecase(sentence, resources.truecaser)
    tokens = [escape_corpus_token(t, scheme) for t in tokens]
    if config.strategy is Strategy.BASELINE:
        return tokens
    if config.hyphen_split:
        tokens = hyphen_split(tokens, scheme)
    rules = resources.rules or config.language.rules()
    tokens = affix.split_sentence(tokens, rules, scheme)
    if config.language.splits_compounds:
        splitter = resources.splitter(config)
        split = []
        for token in tokens:
            split.extend(splitter.split(token))
        tokens = split
    return tokens


def segment(sentence, config: PipelineConfig, resources: Resources, bpe=True):
    check_resources(config, resources, bpe=bpe)
    tokens = presegment(sentence, config, resources)
    if bpe:
        tokens = apply_bpe(tokens, resources.merges, resources.scheme, config.bpe.protected_kinds)
    return tokens


def desegment(sentence, config: PipelineConfig, resources: Resources, errors=None):
    """Invert :func:`segment`.

    With ``errors=None`` malformed marker sequences raise
    :class:`~morphoseg.core.MalformedStream`; with a list, diagnostics are
    appended and the output is repaired as well as possible.
    """
    check_resources(config, resources, decoding=True)
    scheme = resources.scheme
    tokens = merge_bpe(sentence, scheme, errors)
    if config.strategy is Strategy.LEMMATAG:
        return lemmatag.decode_lemmatag(tokens, resources.inflections, scheme,
                                        errors if errors is not None else [])
    if config.strategy is Strategy.SEGMENTATION:
        tokens = join_compound(tokens, scheme, errors)
        tokens = affix.join_suffixes(tokens, scheme, errors)
        tokens = hyphen_join(tokens, scheme, errors)
    if resources.truecaser is not None:
        tokens = revert_truecase(tokens)
    out = []
    for token in tokens:
        try:
            out.append(unescape_corpus_token(token, scheme))
        except MalformedStream as exc:
            _report(errors, str(exc))
            out.append(token)
    return out


def _report(errors, message):
    if errors is None:
        raise MalformedStream(message)
    errors.append(message)


# --- statistics ---------------------------------------------------------------

@dataclass
class VocabReport:
    types: int
    tokens: int
    kinds: Counter

    @property
    def type_token_ratio(self):
        return self.types / self.tokens if self.tokens else 0.0

    def lines(self, top=10):
        out = [f"types\t{self.types}", f"tokens\t{self.tokens}",
               f"type_token_ratio\t{self.type_token_ratio:.6f}"]
        ranked = sorted(self.kinds.items(), key=lambda kv: (-kv[1], kv[0].value))
        out.extend(f"kind:{kind.value}\t{c}" for kind, c in ranked[:top])
        return out


def vocab_stats(corpus, scheme=DEFAULT_SCHEME) -> VocabReport:
    types = set()
    kinds = Counter()
    n = 0
    for sentence in corpus:
        for token in sentence:
            types.add(token)
            kinds[token_kind(token, scheme)] += 1
            n += 1
    return VocabReport(len(types), n, kinds)
