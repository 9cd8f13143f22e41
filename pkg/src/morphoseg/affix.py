"""Rule-based suffix splitting.

Suffixes found by stemmer-style rules are detached as ``$$``-marked tokens
instead of being deleted, and the stem keeps its exact surface spelling::

    >>> split_suffixes("wirtschaftlichen", german_rules())
    ['wirtschaft', '$$lich', '$$en']
"""

import functools
import re
from dataclasses import dataclass
from importlib import resources

from .core import DEFAULT_SCHEME, MalformedStream, TokenKind, fold, token_kind

FILE_HEADER = "#morphoseg-affix v1"

GERMAN_VOWELS = "aeiouyäöü"
GERMAN_S_ENDING = "bdfghklmnrt"
GERMAN_ST_ENDING = "bdfghklmnt"

REGIONS = ("R1", "R2", "whole")

# every suffix string the German rules can detach
GERMAN_SUFFIXES = frozenset({
    "e", "em", "en", "end", "enheit", "enlich", "er", "erheit", "erlich",
    "ern", "es", "est", "heit", "ig", "igend", "igkeit", "igung", "ik",
    "isch", "keit", "lich", "lichkeit", "s", "se", "sen", "ses", "st", "ung",
})


@dataclass(frozen=True)
class SuffixRule:
    suffix: str
    min_length: int = 0
    cut: int = None
    cond: str = None

    def __post_init__(self):
        if not self.suffix:
            raise ValueError("empty suffix")
        if self.cut is None:
            object.__setattr__(self, "cut", len(self.suffix))


@dataclass(frozen=True)
class RuleStep:
    rules: tuple
    region: str = "whole"


@dataclass(frozen=True)
class AffixRuleSet:
    language: str
    steps: tuple
    min_stem_length: int = 3
    vowels: str = ""
    r1_min: int = 0
    skip_mixed_case: bool = False

    @property
    def uses_regions(self):
        return any(step.region != "whole" for step in self.steps)

    def suffix_inventory(self):
        return {rule.suffix for step in self.steps for rule in step.rules}


def parse_ruleset(text):
    lines = text.splitlines()
    if not lines or lines[0].strip() != FILE_HEADER:
        raise ValueError(f"not an affix rule file: expected header {FILE_HEADER!r}")
    params = {}
    steps = []
    current = None
    for lineno, raw in enumerate(lines[1:], 2):
        if not raw.strip() or raw.lstrip().startswith("# "):
            continue
        fields = raw.split()
        if raw[0].isspace():
            if current is None:
                raise ValueError(f"line {lineno}: suffix outside of a step")
            opts = _options(fields[1:], lineno)
            cond = opts.get("cond", current["cond"])
            current["rules"].append(SuffixRule(
                fields[0],
                min_length=int(opts.get("min", 0)),
                cut=int(opts["cut"]) if "cut" in opts else None,
                cond=cond,
            ))
        elif fields[0] == "step":
            opts = _options(fields[2:], lineno)
            region = opts.get("region", "whole")
            if region not in REGIONS:
                raise ValueError(f"line {lineno}: unknown region {region!r}")
            current = {"region": region, "cond": opts.get("cond"), "rules": []}
            steps.append(current)
        elif "=" in raw:
            key, value = raw.split("=", 1)
            params[key.strip()] = value.strip()
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    for step in steps:
        for rule in step["rules"]:
            if rule.cond is not None and rule.cond not in CONDITIONS:
                raise ValueError(f"unknown condition {rule.cond!r}")
    return AffixRuleSet(
        language=params.get("language", "unknown"),
        steps=tuple(RuleStep(tuple(s["rules"]), s["region"]) for s in steps),
        min_stem_length=int(params.get("min_stem", 3)),
        vowels=params.get("vowels", ""),
        r1_min=int(params.get("r1_min", 0)),
        skip_mixed_case=params.get("mixed_case", "split") == "skip",
    )


def _options(fields, lineno):
    opts = {}
    for f in fields:
        if "=" not in f:
            raise ValueError(f"line {lineno}: expected key=value, got {f!r}")
        k, v = f.split("=", 1)
        opts[k] = v
    return opts


def load_ruleset(path):
    with open(path, encoding="utf-8") as f:
        return parse_ruleset(f.read())


@functools.lru_cache(maxsize=None)
def builtin_ruleset(name):
    text = resources.files(__package__).joinpath("rules", f"{name}.affix").read_text("utf-8")
    return parse_ruleset(text)


def german_rules():
    return builtin_ruleset("german")


def czech_rules(variant="light"):
    if variant not in ("light", "aggressive"):
        raise ValueError(f"unknown Czech variant {variant!r}")
    return builtin_ruleset(f"czech_{variant}")


LANGUAGES = {
    "de": "german",
    "german": "german",
    "cs-light": "czech_light",
    "cs": "czech_light",
    "czech-light": "czech_light",
    "cs-aggressive": "czech_aggressive",
    "czech-aggressive": "czech_aggressive",
}


def rules_for(language):
    try:
        return builtin_ruleset(LANGUAGES[language])
    except KeyError:
        raise ValueError(f"unknown language {language!r}") from None


def compute_regions(word, vowels=GERMAN_VOWELS, r1_min=3):
    """Return the start offsets of the Snowball regions R1 and R2.

    R1 begins after the first non-vowel that follows a vowel; R2 is the same
    construction applied inside R1. R1 is then moved right so at least
    ``r1_min`` characters precede it. Offsets equal to ``len(word)`` denote
    an empty region.
    """
    n = len(word)
    r1 = n
    for i in range(1, n):
        if word[i] not in vowels and word[i - 1] in vowels:
            r1 = i + 1
            break
    r2 = n
    for i in range(r1 + 1, n):
        if word[i] not in vowels and word[i - 1] in vowels:
            r2 = i + 1
            break
    if r1 < n:
        r1 = min(max(r1, r1_min), n)
    return r1, r2


def _mark_uy(word, vowels):
    # u and y between vowels count as consonants
    chars = list(word)
    for i in range(1, len(chars) - 1):
        if chars[i - 1] in vowels and chars[i + 1] in vowels:
            if chars[i] == "u":
                chars[i] = "U"
            elif chars[i] == "y":
                chars[i] = "Y"
    return "".join(chars)


# Each condition returns how many characters to detach for a suffix that
# matched inside its region, or 0 to block removal for the whole step.

def _cond_niss(w, r1, r2, suffix):
    k = len(suffix)
    if w[-k - 4:-k] == "niss":
        return k + 1
    return k


def _cond_s_ending(w, r1, r2, suffix):
    return 1 if len(w) >= 2 and w[-2] in GERMAN_S_ENDING else 0


def _cond_st_ending(w, r1, r2, suffix):
    return 2 if len(w) >= 3 and w[-3] in GERMAN_ST_ENDING and len(w) - 3 >= 3 else 0


def _cond_not_after_e(w, r1, r2, suffix):
    k = len(suffix)
    return 0 if "e" in r2[-k - 1:-k] else k


def _cond_ig_extension(w, r1, r2, suffix):
    k = len(suffix)
    if "ig" in r2[-k - 2:-k] and "e" not in r2[-k - 3:-k - 2]:
        return k + 2
    return k


def _cond_er_en_extension(w, r1, r2, suffix):
    k = len(suffix)
    before = r1[-k - 2:-k]
    if "er" in before or "en" in before:
        return k + 2
    return k


def _cond_lich_ig_extension(w, r1, r2, suffix):
    k = len(suffix)
    if "lich" in r2[-k - 4:-k]:
        return k + 4
    if "ig" in r2[-k - 2:-k]:
        return k + 2
    return k


CONDITIONS = {
    "niss": _cond_niss,
    "s-ending": _cond_s_ending,
    "st-ending": _cond_st_ending,
    "not-after-e": _cond_not_after_e,
    "ig-extension": _cond_ig_extension,
    "er-en-extension": _cond_er_en_extension,
    "lich-ig-extension": _cond_lich_ig_extension,
}

_WORD_RE = re.compile(r"\w+")


def suffix_cuts(word, rules: AffixRuleSet):
    """Return the lengths of the detached suffixes, outermost first."""
    w = fold(word)
    if rules.uses_regions:
        w = _mark_uy(w, rules.vowels)
        r1s, r2s = compute_regions(w, rules.vowels, rules.r1_min)
    else:
        if not _WORD_RE.fullmatch(w):
            return []
        if rules.skip_mixed_case and not (word.islower() or word.istitle() or word.isupper()):
            return []
        r1s = r2s = 0
    cuts = []
    for step in rules.steps:
        n = len(w)
        r1 = w[r1s:] if r1s < n else ""
        r2 = w[r2s:] if r2s < n else ""
        region = {"R1": r1, "R2": r2, "whole": w}[step.region]
        for rule in step.rules:
            if not region.endswith(rule.suffix) or n < rule.min_length:
                continue
            k = rule.cut
            if rule.cond is not None:
                k = CONDITIONS[rule.cond](w, r1, r2, rule.suffix)
            if k and n - k >= rules.min_stem_length:
                cuts.append(k)
                w = w[:-k]
            break
    return cuts


def split_suffixes(token, rules: AffixRuleSet, scheme=DEFAULT_SCHEME):
    """Detach suffixes from one token, keeping the stem verbatim."""
    if token_kind(token, scheme) is not TokenKind.PLAIN:
        return [token]
    cuts = suffix_cuts(token, rules)
    if not cuts:
        return [token]
    out = []
    end = len(token)
    for k in cuts:
        out.append(scheme.suffix_marker + token[end - k:end])
        end -= k
    stem = token[:end]
    if token_kind(stem, scheme) is not TokenKind.PLAIN:
        # e.g. "[x]en": a stem that reads as a tag could not be rejoined
        return [token]
    out.append(stem)
    out.reverse()
    return out


def split_suffixes_czech(token, variant="light", rules=None, scheme=DEFAULT_SCHEME):
    return split_suffixes(token, rules or czech_rules(variant), scheme)


def split_sentence(sentence, rules: AffixRuleSet, scheme=DEFAULT_SCHEME):
    out = []
    for token in sentence:
        out.extend(split_suffixes(token, rules, scheme))
    return out


def join_suffixes(stream, scheme=DEFAULT_SCHEME, errors=None):
    """Glue every ``$$``-marked token onto the token before it."""
    marker = scheme.suffix_marker
    out = []
    attachable = False
    for token in stream:
        kind = token_kind(token, scheme)
        if kind is TokenKind.SUFFIX:
            if attachable:
                out[-1] += token[len(marker):]
                continue
            msg = f"suffix token {token!r} has no stem to attach to"
            if errors is None:
                raise MalformedStream(msg)
            errors.append(msg)
            out.append(token[len(marker):])
            attachable = True
            continue
        out.append(token)
        attachable = kind in (TokenKind.PLAIN, TokenKind.BPE_CONTINUATION, TokenKind.LEMMA)
    return out
