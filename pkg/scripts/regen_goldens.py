#!/usr/bin/env python3
"""Regenerate the golden pipeline artifacts used by the regression tests.

Runs the full pipeline over the checked-in fixture corpus and freezes the
four output artifacts under tests/data/golden/.  Run this only when an
intentional behaviour change invalidates the previous goldens, then review
the diff before committing.
"""

from __future__ import annotations

import pathlib
import shutil
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from excavator.pipeline import PipelineConfig, run_pipeline

REPO = pathlib.Path(__file__).resolve().parents[1]
CORPUS = REPO / "tests" / "data" / "corpus.jsonl"
GOLDEN = REPO / "tests" / "data" / "golden"
ARTIFACTS = ("mentions.jsonl", "relations.jsonl", "stats.json", "tcag.json")


def main() -> int:
    if not CORPUS.exists():
        print(f"fixture corpus missing: {CORPUS}", file=sys.stderr)
        print("run scripts/make_fixture_corpus.py first", file=sys.stderr)
        return 1
    GOLDEN.mkdir(parents=True, exist_ok=True)
    work = GOLDEN.parent / "_golden_tmp"
    if work.exists():
        shutil.rmtree(work)
    config = PipelineConfig(input_path=CORPUS, out_dir=work)
    run_pipeline(config)
    for name in ARTIFACTS:
        shutil.copyfile(work / name, GOLDEN / name)
        print(f"froze {GOLDEN / name}")
    shutil.rmtree(work)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
