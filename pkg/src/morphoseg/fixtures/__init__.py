"""Worked examples shipped as CLI fixtures, plus the sample corpora.

Each case directory holds ``input.txt``, ``expected.txt``, ``cmd.txt`` and an
optional ``resources/`` folder. ``cmd.txt`` lists one command per line
(``a | b`` pipes); every command must turn ``input.txt`` into
``expected.txt`` byte for byte. Directives:

``inverse: CMD``  CMD must turn ``expected.txt`` back into ``input.txt``
``status: N``     expected exit status of the forward commands (default 0)

Commands run relative to the case directory.
"""

import contextlib
import difflib
import io
import os
import shlex
import subprocess
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

DATA = "data"
CASES = "cases"


def data_path(name):
    return Path(str(resources.files(__package__).joinpath(DATA, name)))


def cases_root():
    return Path(str(resources.files(__package__).joinpath(CASES)))


@dataclass
class Fixture:
    id: str
    path: Path
    input: str
    expected: str
    commands: list
    inverse: list = field(default_factory=list)
    status: int = 0

    @classmethod
    def load(cls, path):
        path = Path(path)
        read = lambda name: (path / name).read_text(encoding="utf-8")
        commands, inverse, status = [], [], 0
        for line in read("cmd.txt").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("inverse:"):
                inverse.append(line[len("inverse:"):].strip())
            elif line.startswith("status:"):
                status = int(line[len("status:"):])
            else:
                commands.append(line)
        return cls(path.name, path, read("input.txt"), read("expected.txt"),
                   commands, inverse, status)


@dataclass
class FixtureResult:
    id: str
    passed: bool
    seconds: float
    failures: list = field(default_factory=list)


@dataclass
class SuiteReport:
    results: list

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def lines(self):
        out = []
        for r in self.results:
            out.append(f"{'PASS' if r.passed else 'FAIL'}\t{r.id}\t{r.seconds:.3f}s")
            out.extend("\t" + f for f in r.failures)
        n_ok = sum(r.passed for r in self.results)
        out.append(f"{n_ok}/{len(self.results)} fixtures passed")
        return out


def load_fixtures(root=None, names=None):
    root = Path(root) if root else cases_root()
    fixtures = [Fixture.load(p) for p in sorted(root.iterdir()) if (p / "cmd.txt").is_file()]
    if names:
        fixtures = [f for f in fixtures if f.id in names]
    return fixtures


def _argv(command):
    args = shlex.split(command)
    if args and args[0] == "morphoseg":
        args = args[1:]
    return args


def run_in_process(argv, stdin_text):
    """Run the CLI inside this interpreter; returns (status, stdout, stderr)."""
    from ..cli import main

    out, err = io.StringIO(), io.StringIO()
    saved_stdin = sys.stdin
    sys.stdin = io.StringIO(stdin_text)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            status = main(argv)
    finally:
        sys.stdin = saved_stdin
    return status, out.getvalue(), err.getvalue()


def run_subprocess(argv, stdin_text):
    proc = subprocess.run([sys.executable, "-m", "morphoseg.cli", *argv], input=stdin_text,
                          capture_output=True, text=True, encoding="utf-8")
    return proc.returncode, proc.stdout, proc.stderr


def run_pipeline(command, text, runner=run_in_process):
    status = 0
    err = ""
    for stage in command.split(" | "):
        status, text, err = runner(_argv(stage), text)
        if status not in (0, 1):
            break
    return status, text, err


@contextlib.contextmanager
def _cwd(path):
    old = os.getcwd()
    os.chdir(path)
    try:
        yield
    finally:
        os.chdir(old)


def _diff(expected, actual):
    return "".join(difflib.unified_diff(expected.splitlines(True), actual.splitlines(True),
                                        "expected", "actual")).rstrip("\n")


def run_fixture(fixture: Fixture, runner=run_in_process) -> FixtureResult:
    start = time.perf_counter()
    failures = []
    with _cwd(fixture.path):
        checks = [(c, fixture.input, fixture.expected, fixture.status) for c in fixture.commands]
        checks += [(c, fixture.expected, fixture.input, 0) for c in fixture.inverse]
        for command, given, wanted, want_status in checks:
            status, actual, err = run_pipeline(command, given, runner)
            if status != want_status:
                failures.append(f"{command}: exit status {status}, expected {want_status}"
                                + (f" ({err.strip()})" if err.strip() else ""))
            if actual != wanted:
                failures.append(f"{command}: output differs\n{_diff(wanted, actual)}")
    return FixtureResult(fixture.id, not failures, time.perf_counter() - start, failures)


def run_fixture_suite(root=None, names=None, runner=run_in_process) -> SuiteReport:
    return SuiteReport([run_fixture(f, runner) for f in load_fixtures(root, names)])
