#!/usr/bin/env python3
"""Desk-scale experiment: enrich the bundled 500-document corpus twice.

Reports wall-clock time, verifies the two runs are byte-identical, and
summarizes what was added to the ontology. The corpus index provider is
self-referential here, so the positive-hit filter eliminates nothing; the
interesting action is candidate ranking, pattern arbitration and placement.
"""

from __future__ import annotations

import sys
import tempfile
import time
from collections import Counter
from pathlib import Path

from ontoenrich.pipeline import RunConfig, run_enrichment

ROOT = Path(__file__).resolve().parent.parent
DESK = ROOT / "fixtures" / "desk"

OUTPUT_FILES = [
    "enriched_ontology.tsv", "relatedness_matrix.tsv", "pattern_audit.tsv",
    "enrichment_report.tsv", "system_judgments.tsv", "manifest.tsv",
]


def run_once(out_dir: Path) -> float:
    config = RunConfig(
        corpus=DESK / "corpus",
        ontology=DESK / "ontology.tsv",
        gazetteer=DESK / "gazetteer.tsv",
        out_dir=out_dir,
        top_k=3,
    )
    started = time.perf_counter()
    run_enrichment(config)
    return time.perf_counter() - started


def main() -> int:
    base = Path(tempfile.mkdtemp(prefix="ontoenrich-desk-"))
    first = run_once(base / "a")
    second = run_once(base / "b")
    print(f"run 1: {first:.2f}s, run 2: {second:.2f}s")

    identical = all(
        (base / "a" / name).read_bytes() == (base / "b" / name).read_bytes()
        for name in OUTPUT_FILES
    )
    print(f"byte-identical outputs: {identical}")

    report = (base / "a" / "enrichment_report.tsv").read_text(encoding="utf-8")
    relations = Counter(
        line.split("\t")[3]
        for line in report.splitlines()[1:]
        if line and not line.startswith("#")
    )
    print("placements by relation:", dict(sorted(relations.items())))
    print(f"full outputs under {base}")
    return 0 if identical else 1


if __name__ == "__main__":
    sys.exit(main())
