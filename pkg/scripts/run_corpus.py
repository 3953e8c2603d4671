#!/usr/bin/env python3
"""Run the bundled verification corpus and report per-entry status.

Thin wrapper over the `algint corpus` subcommand so the default corpus
path works from a repository checkout without installing the package.
"""
import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from algint.cli import main as cli_main

DEFAULT_CORPUS = pathlib.Path(__file__).resolve().parents[1] / "data" / "desk_corpus.jsonl"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("corpus", nargs="?", default=str(DEFAULT_CORPUS),
                    help="JSONL corpus file (default: bundled desk corpus)")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes")
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    args = ap.parse_args()
    argv = ["corpus", args.corpus, "--jobs", str(args.jobs), "--format", args.format]
    return cli_main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
