#!/usr/bin/env python3
"""Replay the bundled worked examples end to end and print the outcomes.

Two runs against the recorded hit-count snapshot: the corporate-body corpus,
where one pattern query dominates and names a hyponymy relation, and the
islands/sports corpus, where every pattern query scores zero and the three
surviving terms fall back to related-to placements.
"""

from __future__ import annotations

import sys
import tempfile
from pathlib import Path

from ontoenrich.pipeline import RunConfig, run_enrichment

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def replay(corpus: Path, label: str, out_dir: Path) -> None:
    config = RunConfig(
        corpus=corpus,
        ontology=FIXTURES / "mini_ontology.tsv",
        snapshot=FIXTURES / "snapshots" / "worked_examples.tsv",
        out_dir=out_dir,
        top_k=1,
    )
    run_enrichment(config)
    print(f"--- {label}")
    report = (out_dir / "enrichment_report.tsv").read_text(encoding="utf-8")
    for line in report.splitlines()[1:]:
        if not line.startswith("#"):
            print(f"  {line}")
    added = [
        line
        for line in (out_dir / "enriched_ontology.tsv").read_text(encoding="utf-8").splitlines()
        if line.endswith(("\t80700", "\t0")) and "enriched" in line
    ]
    for line in added:
        print(f"  axiom: {line}")


def main() -> int:
    base = Path(tempfile.mkdtemp(prefix="ontoenrich-replay-"))
    replay(FIXTURES / "corpus_corp", "pattern arbitration (corporate body)", base / "corp")
    replay(FIXTURES / "corpus_examples", "related-to fallback (jawa, Hindu-Buddhist, Ronaldo)",
           base / "examples")
    print(f"full outputs under {base}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
