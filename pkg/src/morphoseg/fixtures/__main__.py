import argparse
import sys

from . import run_fixture_suite, run_in_process, run_subprocess


def main():
    ap = argparse.ArgumentParser(prog="python -m morphoseg.fixtures",
                                 description="Run the shipped example fixtures through the CLI.")
    ap.add_argument("names", nargs="*", help="fixture ids (default: all)")
    ap.add_argument("--root", help="alternative case directory")
    ap.add_argument("--subprocess", action="store_true",
                    help="start a fresh interpreter per command")
    args = ap.parse_args()
    report = run_fixture_suite(args.root, args.names,
                               run_subprocess if args.subprocess else run_in_process)
    print("\n".join(report.lines()))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
