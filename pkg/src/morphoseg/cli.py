"""Command-line front end: one subcommand per stage plus the full cascades.

Exit status: 0 on success, 1 when per-line diagnostics were reported,
2 on configuration or parse errors.
"""

import argparse
import concurrent.futures
import sys

from . import __version__, affix, bpe, lemmatag
from .compound import (CompoundConfig, CompoundSplitter, FrequencyLexicon,
                       german_fillers, join_compound)
from .core import DEFAULT_SCHEME, MalformedStream, format_sentence
from .pipeline import (ConfigError, Language, PipelineConfig, Resources, Strategy, TruecaseModel,
                       apply_truecase, check_resources, desegment, filter_lengths, hyphen_join, hyphen_split,
                       learn_frequency_lexicon, learn_truecaser, presegment, revert_truecase,
                       segment, vocab_stats)

EXIT_OK, EXIT_DIAGNOSTICS, EXIT_CONFIG = 0, 1, 2
CHUNK = 64


class UsageError(Exception):
    pass


# --- I/O ------------------------------------------------------------------------

def _open_in(path):
    if path in (None, "-"):
        if hasattr(sys.stdin, "reconfigure"):
            sys.stdin.reconfigure(encoding="utf-8")
        return sys.stdin
    return open(path, encoding="utf-8", newline="")


def _read_lines(path):
    f = _open_in(path)
    try:
        return [line.rstrip("\n").rstrip("\r") for line in f]
    finally:
        if f is not sys.stdin:
            f.close()


def _read_text(path):
    f = _open_in(path)
    try:
        return f.read()
    finally:
        if f is not sys.stdin:
            f.close()


class _Output:
    def __init__(self, path):
        self.path = path

    def __enter__(self):
        if self.path in (None, "-"):
            if hasattr(sys.stdout, "reconfigure"):
                sys.stdout.reconfigure(encoding="utf-8", newline="\n")
            self.f = sys.stdout
        else:
            self.f = open(self.path, "w", encoding="utf-8", newline="\n")
        return self.f

    def __exit__(self, *exc):
        if self.f is not sys.stdout:
            self.f.close()
        else:
            self.f.flush()


# --- per-line processors ----------------------------------------------------------
# Each factory builds a function mapping one token list to (tokens, diagnostics).
# Factories are looked up by name so worker processes can rebuild them.

def _errors(args):
    return None if getattr(args, "strict", False) else []


def _pure(fn):
    def run(tokens):
        return fn(tokens), []
    return run


def _checked(fn, args):
    def run(tokens):
        errors = _errors(args)
        out = fn(tokens, errors)
        return out, errors or []
    return run


def _rules(args):
    if getattr(args, "rules", None):
        return affix.load_ruleset(args.rules)
    return affix.rules_for(args.lang)


def _compound_config(args):
    if args.fillers == "german":
        fillers = german_fillers()
    elif args.fillers == "moses":
        fillers = ("s", "es")
    else:
        fillers = tuple(f for f in args.fillers.split(",") if f)
    return CompoundConfig(min_part_size=args.min_part_size, min_part_count=args.min_count,
                          max_part_count=args.max_count, fillers=fillers,
                          max_parts=args.max_parts)


def _pipeline(args, decoding=False):
    strategy = Strategy(args.strategy)
    language = Language(args.lang)
    kwargs = {}
    if not decoding:
        kwargs["compound"] = _compound_config(args)
        kwargs["hyphen_split"] = args.hyphen_split
    config = PipelineConfig(strategy=strategy, language=language,
                            truecase_model=args.truecase, **kwargs)
    res = Resources()
    if args.truecase:
        res.truecaser = TruecaseModel.load(args.truecase)
    if decoding:
        if args.inflex:
            res.inflections = lemmatag.InflectionLexicon.load(args.inflex)
            if args.paradigm:
                res.inflections = res.inflections.merged(
                    lemmatag.InflectionLexicon.load(args.paradigm))
    else:
        if args.bpe:
            res.merges = bpe.MergeTable.load(args.bpe)
        if args.freq:
            res.lexicon = FrequencyLexicon.load(args.freq)
        if getattr(args, "rules", None):
            res.rules = affix.load_ruleset(args.rules)
    return config, res


def _f_apply_bpe(args):
    merges = bpe.MergeTable.load(args.bpe)
    return _pure(lambda t: bpe.apply_bpe(t, merges, DEFAULT_SCHEME))


def _f_merge_bpe(args):
    return _checked(lambda t, e: bpe.merge_bpe(t, DEFAULT_SCHEME, e), args)


def _f_split_suffixes(args):
    rules = _rules(args)
    return _pure(lambda t: affix.split_sentence(t, rules, DEFAULT_SCHEME))


def _f_join_suffixes(args):
    return _checked(lambda t, e: affix.join_suffixes(t, DEFAULT_SCHEME, e), args)


def _f_split_compounds(args):
    splitter = CompoundSplitter(FrequencyLexicon.load(args.freq), _compound_config(args))

    def run(tokens):
        out = []
        for token in tokens:
            out.extend(splitter.split(token))
        return out, []
    return run


def _f_join_compounds(args):
    return _checked(lambda t, e: join_compound(t, DEFAULT_SCHEME, e), args)


def _f_decode_lemmatag(args):
    lexicon = lemmatag.InflectionLexicon.load(args.inflex)
    if args.paradigm:
        lexicon = lexicon.merged(lemmatag.InflectionLexicon.load(args.paradigm))

    def run(tokens):
        errors = []
        return lemmatag.decode_lemmatag(tokens, lexicon, DEFAULT_SCHEME, errors), errors
    return run


def _f_truecase(args):
    if args.revert:
        return _pure(revert_truecase)
    if not args.model:
        raise UsageError("truecase needs --model (or --revert)")
    model = TruecaseModel.load(args.model)
    return _pure(lambda t: apply_truecase(t, model))


def _f_hyphen_split(args):
    if args.join:
        return _checked(lambda t, e: hyphen_join(t, DEFAULT_SCHEME, e), args)
    return _pure(lambda t: hyphen_split(t, DEFAULT_SCHEME))


def _f_segment(args):
    config, res = _pipeline(args)
    if args.no_bpe:
        check_resources(config, res, bpe=False)
        return _pure(lambda t: presegment(t, config, res))
    segment([], config, res)  # validates resources up front
    return _pure(lambda t: segment(t, config, res))


def _f_desegment(args):
    config, res = _pipeline(args, decoding=True)
    desegment([], config, res)
    return _checked(lambda t, e: desegment(t, config, res, e), args)


FACTORIES = {
    "apply-bpe": _f_apply_bpe,
    "merge-bpe": _f_merge_bpe,
    "split-suffixes": _f_split_suffixes,
    "join-suffixes": _f_join_suffixes,
    "split-compounds": _f_split_compounds,
    "join-compounds": _f_join_compounds,
    "decode-lemmatag": _f_decode_lemmatag,
    "truecase": _f_truecase,
    "hyphen-split": _f_hyphen_split,
    "segment": _f_segment,
    "desegment": _f_desegment,
}

_worker = None


def _init_worker(command, args):
    global _worker
    _worker = FACTORIES[command](args)


def _work(chunk):
    results = []
    for tokens in chunk:
        try:
            results.append(_worker(tokens))
        except MalformedStream as exc:
            results.append(exc)
    return results


def _map_sentences(command, args, sentences):
    """Process sentences in input order, optionally across worker processes."""
    _init_worker(command, args)  # fail fast on bad resources, in this process
    if args.jobs <= 1 or len(sentences) <= CHUNK:
        return _work(sentences)
    chunks = [sentences[i:i + CHUNK] for i in range(0, len(sentences), CHUNK)]
    with concurrent.futures.ProcessPoolExecutor(
            max_workers=args.jobs, initializer=_init_worker, initargs=(command, args)) as pool:
        results = []
        for part in pool.map(_work, chunks):
            results.extend(part)
        return results


def _run_streaming(command, args, sentences):
    results = _map_sentences(command, args, sentences)
    status = EXIT_OK
    with _Output(args.output) as out:
        for lineno, result in enumerate(results, 1):
            if isinstance(result, MalformedStream):
                raise UsageError(f"line {lineno}: {result}")
            tokens, diagnostics = result
            for message in diagnostics:
                print(f"line {lineno}: {message}", file=sys.stderr)
                status = EXIT_DIAGNOSTICS
            out.write(format_sentence(tokens) + "\n")
    return status


def _token_lines(args):
    return [line.split() for line in _read_lines(args.input)]


def _annotations(args):
    return lemmatag.read_annotations(_read_lines(args.input))


# --- commands ---------------------------------------------------------------------

def cmd_stream(args):
    return _run_streaming(args.command, args, _token_lines(args))


def cmd_segment(args):
    if args.strategy == Strategy.LEMMATAG.value:
        config, res = _pipeline(args)
        if args.no_bpe:
            encoded = [presegment(s, config, res) for s in _annotations(args)]
        else:
            encoded = [segment(s, config, res) for s in _annotations(args)]
        with _Output(args.output) as out:
            for tokens in encoded:
                out.write(format_sentence(tokens) + "\n")
        return EXIT_OK
    return cmd_stream(args)


def cmd_encode_lemmatag(args):
    with _Output(args.output) as out:
        for sentence in _annotations(args):
            out.write(format_sentence(lemmatag.encode_lemmatag(sentence)) + "\n")
    return EXIT_OK


def cmd_learn_bpe(args):
    corpus = []
    for path in args.inputs or [None]:
        corpus.extend(line.split() for line in _read_lines(path))
    table = bpe.learn_bpe(corpus, bpe.BpeConfig(num_merges=args.num_merges))
    with _Output(args.output) as out:
        out.write(table.dumps())
    return EXIT_OK


def cmd_learn_freq(args):
    truecaser = TruecaseModel.load(args.truecase) if args.truecase else None
    language = Language(args.lang) if args.lang else None
    lexicon = learn_frequency_lexicon(_token_lines(args), language, truecaser)
    with _Output(args.output) as out:
        out.write(lexicon.dumps())
    return EXIT_OK


def cmd_build_inflex(args):
    freq = FrequencyLexicon.load(args.freq_list) if args.freq_list else None
    lexicon = lemmatag.build_inflection_lexicon(_annotations(args), freq)
    if args.paradigm:
        lexicon = lexicon.merged(lemmatag.InflectionLexicon.load(args.paradigm))
    with _Output(args.output) as out:
        out.write(lexicon.dumps())
    return EXIT_OK


def cmd_learn_truecase(args):
    model = learn_truecaser(_token_lines(args))
    with _Output(args.output) as out:
        out.write(model.dumps())
    return EXIT_OK


def cmd_filter(args):
    sources = [line.split() for line in _read_lines(args.source)]
    targets = [line.split() for line in _read_lines(args.target)]
    config = PipelineConfig(max_len_raw=args.max_len_raw, max_len_bpe=args.max_len_bpe)
    merges = bpe.MergeTable.load(args.bpe) if args.bpe else None
    kept, report = filter_lengths(sources, targets, config, merges)
    with _Output(args.output_source) as out:
        out.writelines(format_sentence(s) + "\n" for s, _ in kept)
    with _Output(args.output_target) as out:
        out.writelines(format_sentence(t) + "\n" for _, t in kept)
    with _Output(args.output) as out:
        out.writelines(line + "\n" for line in report.lines())
    return EXIT_OK


def cmd_stats(args):
    report = vocab_stats(_token_lines(args))
    with _Output(args.output) as out:
        out.writelines(line + "\n" for line in report.lines(args.top))
    return EXIT_OK


# --- parser -----------------------------------------------------------------------

LANG_CHOICES = [lang.value for lang in Language]
RULE_LANG_CHOICES = sorted(affix.LANGUAGES)


def _io(p, output=True):
    p.add_argument("--input", help="input file (default: standard input)")
    if output:
        p.add_argument("--output", help="output file (default: standard output)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default: 1)")
    p.add_argument("--config", help="file of key=value lines standing in for flags")


def _compound_opts(p):
    p.add_argument("--min-part-size", type=int, default=4)
    p.add_argument("--min-count", type=int, default=2)
    p.add_argument("--max-count", type=int, default=999_999_999)
    p.add_argument("--max-parts", type=int, default=4)
    p.add_argument("--fillers", default="german",
                   help="'german', 'moses' (s, es) or a comma-separated list")


def build_parser():
    parser = argparse.ArgumentParser(prog="morphoseg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"morphoseg {__version__} ({bpe.FILE_HEADER[1:]}, "
                                f"{affix.FILE_HEADER[1:]})")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("learn-bpe", help="learn BPE merge operations")
    p.add_argument("inputs", nargs="*", help="corpora to learn from jointly (default: stdin)")
    p.add_argument("--num-merges", type=int, default=bpe.DEFAULT_NUM_MERGES)
    _io(p)
    p.set_defaults(func=cmd_learn_bpe)

    p = sub.add_parser("apply-bpe", help="split words with a merge table")
    p.add_argument("--bpe", required=True, help="merge table")
    _io(p)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("merge-bpe", help="rejoin BPE pieces")
    p.add_argument("--strict", action="store_true")
    _io(p)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("split-suffixes", help="detach inflectional suffixes")
    p.add_argument("--lang", default="de", choices=RULE_LANG_CHOICES)
    p.add_argument("--rules", help="affix rule file (overrides --lang)")
    _io(p)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("join-suffixes", help="reattach suffix tokens")
    p.add_argument("--strict", action="store_true")
    _io(p)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("learn-freq", help="build a frequency lexicon for compound splitting")
    p.add_argument("--lang", choices=LANG_CHOICES,
                   help="hyphen- and suffix-split the corpus before counting")
    p.add_argument("--truecase", help="truecase model applied before counting")
    _io(p)
    p.set_defaults(func=cmd_learn_freq)

    p = sub.add_parser("split-compounds", help="split compounds against a frequency lexicon")
    p.add_argument("--freq", required=True, help="frequency lexicon")
    _compound_opts(p)
    _io(p)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("join-compounds", help="reassemble split compounds")
    p.add_argument("--strict", action="store_true")
    _io(p)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("encode-lemmatag", help="annotation file to tag/lemma stream")
    _io(p)
    p.set_defaults(func=cmd_encode_lemmatag)

    p = sub.add_parser("decode-lemmatag", help="re-inflect a tag/lemma stream")
    p.add_argument("--inflex", required=True, help="inflection lexicon")
    p.add_argument("--paradigm", help="additional paradigm file")
    _io(p)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("build-inflex", help="build an inflection lexicon from annotations")
    p.add_argument("--freq-list", help="frequency lexicon whose counts override corpus counts")
    p.add_argument("--paradigm", help="paradigm file merged into the lexicon")
    _io(p)
    p.set_defaults(func=cmd_build_inflex)

    p = sub.add_parser("learn-truecase", help="learn a truecasing model")
    _io(p)
    p.set_defaults(func=cmd_learn_truecase)

    p = sub.add_parser("truecase", help="truecase sentence-initial tokens")
    p.add_argument("--model", help="truecase model")
    p.add_argument("--revert", action="store_true", help="recapitalize instead")
    _io(p)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("hyphen-split", help="split words at internal hyphens")
    p.add_argument("--join", action="store_true", help="rejoin instead")
    p.add_argument("--strict", action="store_true")
    _io(p)
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("filter", help="length-filter a parallel training corpus")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--bpe", help="baseline merge table for the second filtering stage")
    p.add_argument("--max-len-raw", type=int, default=50)
    p.add_argument("--max-len-bpe", type=int, default=60)
    p.add_argument("--output-source", required=True)
    p.add_argument("--output-target", required=True)
    p.add_argument("--output", help="report file (default: standard output)")
    p.add_argument("--jobs", type=int, default=1, help="accepted for uniformity; runs serially")
    p.add_argument("--config", help="file of key=value lines standing in for flags")
    p.set_defaults(func=cmd_filter)

    for name, func, help_ in (("segment", cmd_segment, "run the full segmentation cascade"),
                              ("desegment", cmd_stream, "invert the segmentation cascade")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--strategy", default="segmentation", choices=[s.value for s in Strategy])
        p.add_argument("--lang", default="de", choices=LANG_CHOICES)
        p.add_argument("--truecase", help="truecase model")
        if name == "segment":
            p.add_argument("--bpe", help="merge table")
            p.add_argument("--no-bpe", action="store_true", help="stop before BPE")
            p.add_argument("--freq", help="frequency lexicon")
            p.add_argument("--rules", help="affix rule file (overrides --lang)")
            p.add_argument("--hyphen-split", action=argparse.BooleanOptionalAction, default=None)
            _compound_opts(p)
        else:
            p.add_argument("--inflex", help="inflection lexicon (lemmatag strategy)")
            p.add_argument("--paradigm", help="additional paradigm file")
            p.add_argument("--strict", action="store_true",
                           help="fail on malformed input instead of repairing it")
        _io(p)
        p.set_defaults(func=func)

    p = sub.add_parser("stats", help="vocabulary statistics")
    p.add_argument("--top", type=int, default=10)
    _io(p)
    p.set_defaults(func=cmd_stats)
    return parser


def expand_config(argv):
    """Splice ``--config FILE`` contents in as flags right after the subcommand.

    Flags given explicitly on the command line come later and win.
    """
    argv = list(argv)
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise UsageError("--config needs a file argument")
    path = argv[i + 1]
    del argv[i:i + 2]
    extra = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            flag = "--" + key.replace("_", "-")
            if value.lower() == "true":
                extra.append(flag)
            elif value.lower() == "false":
                continue
            else:
                extra += [flag, value]
    pos = next((k for k, a in enumerate(argv) if not a.startswith("-")), len(argv))
    return argv[:pos + 1] + extra + argv[pos + 1:]


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        argv = expand_config(argv)
    except (UsageError, OSError) as exc:
        print(f"morphoseg: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except (UsageError, ConfigError, MalformedStream, ValueError, OSError) as exc:
        print(f"morphoseg {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
