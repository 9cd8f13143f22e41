"""A scratch directory with every resource the CLI can consume, learned from the sample."""

import shutil

from morphoseg.fixtures import data_path, run_in_process


def cli(argv, stdin=""):
    return run_in_process([str(a) for a in argv], stdin)


def build_workspace(root):
    shutil.copy(data_path("german_sample.txt"), root / "sample.txt")
    shutil.copy(data_path("german_annotated_200.ann"), root / "sample.ann")
    lines = (root / "sample.txt").read_text("utf-8").splitlines()
    (root / "small.txt").write_text("\n".join(lines[:300]) + "\n", "utf-8")
    (root / "small.en").write_text("\n".join(" ".join(reversed(l.split())) for l in lines[:300])
                                   + "\n", "utf-8")
    steps = [
        ["learn-truecase", "--input", "sample.txt", "--output", "tc.tsv"],
        ["learn-freq", "--lang", "de", "--truecase", "tc.tsv", "--input", "sample.txt",
         "--output", "freq.tsv"],
        ["segment", "--no-bpe", "--freq", "freq.tsv", "--truecase", "tc.tsv",
         "--input", "sample.txt", "--output", "preseg.txt"],
        ["learn-bpe", "preseg.txt", "--num-merges", "500", "--output", "merges.txt"],
        ["build-inflex", "--input", "sample.ann", "--output", "inflex.tsv"],
        ["encode-lemmatag", "--input", "sample.ann", "--output", "encoded.txt"],
        ["segment", "--freq", "freq.tsv", "--truecase", "tc.tsv", "--bpe", "merges.txt",
         "--input", "sample.txt", "--output", "segmented.txt"],
    ]
    for argv in steps:
        status, _, err = cli_in(root, argv)
        assert status == 0, (argv, err)
    return root


def cli_in(root, argv, stdin=""):
    import os
    old = os.getcwd()
    os.chdir(root)
    try:
        return cli(argv, stdin)
    finally:
        os.chdir(old)


# one invocation per subcommand; each writes to the file named last
def command_matrix():
    return {
        "learn-bpe": ["learn-bpe", "small.txt", "--num-merges", "300", "--output", "OUT"],
        "apply-bpe": ["apply-bpe", "--bpe", "merges.txt", "--input", "preseg.txt", "--output", "OUT"],
        "merge-bpe": ["merge-bpe", "--input", "segmented.txt", "--output", "OUT"],
        "split-suffixes": ["split-suffixes", "--input", "sample.txt", "--output", "OUT"],
        "join-suffixes": ["join-suffixes", "--input", "preseg.txt", "--output", "OUT"],
        "learn-freq": ["learn-freq", "--lang", "de", "--input", "sample.txt", "--output", "OUT"],
        "split-compounds": ["split-compounds", "--freq", "freq.tsv", "--input", "sample.txt",
                            "--output", "OUT"],
        "join-compounds": ["join-compounds", "--input", "preseg.txt", "--output", "OUT"],
        "encode-lemmatag": ["encode-lemmatag", "--input", "sample.ann", "--output", "OUT"],
        "decode-lemmatag": ["decode-lemmatag", "--inflex", "inflex.tsv", "--input", "encoded.txt",
                            "--output", "OUT"],
        "build-inflex": ["build-inflex", "--input", "sample.ann", "--freq-list", "freq.tsv",
                         "--output", "OUT"],
        "learn-truecase": ["learn-truecase", "--input", "sample.txt", "--output", "OUT"],
        "truecase": ["truecase", "--model", "tc.tsv", "--input", "sample.txt", "--output", "OUT"],
        "hyphen-split": ["hyphen-split", "--input", "sample.txt", "--output", "OUT"],
        "filter": ["filter", "--source", "small.txt", "--target", "small.en", "--bpe", "merges.txt",
                   "--max-len-raw", "12", "--max-len-bpe", "14", "--output-source", "OUT.src",
                   "--output-target", "OUT.tgt", "--output", "OUT"],
        "segment": ["segment", "--freq", "freq.tsv", "--truecase", "tc.tsv", "--bpe", "merges.txt",
                    "--input", "sample.txt", "--output", "OUT"],
        "desegment": ["desegment", "--truecase", "tc.tsv", "--input", "segmented.txt",
                      "--output", "OUT"],
        "stats": ["stats", "--input", "segmented.txt", "--output", "OUT"],
    }


def run_matrix_entry(root, argv, tag, jobs=None):
    """Run one matrix command; return the bytes of every file it wrote."""
    argv = [a.replace("OUT", f"out-{tag}") for a in argv]
    if jobs is not None:
        argv += ["--jobs", str(jobs)]
    status, stdout, err = cli_in(root, argv)
    assert status == 0, (argv, err)
    outputs = sorted(a for a in argv if a.startswith(f"out-{tag}"))
    return stdout.encode() + b"".join((root / o).read_bytes() for o in outputs)
