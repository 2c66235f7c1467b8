"""Command line front door.

Subcommands: ``index``, ``enrich``, ``relatedness``, ``patterns``, ``eval``.
Options can also come from a JSON config file (``--config``); explicit flags
win over config file values. Exit codes: 0 on success, otherwise one distinct
code per failing stage (see STAGE_EXIT_CODES).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .pipeline import (
    ConfigError,
    RunConfig,
    StageError,
    run_enrichment,
    run_eval,
    run_index,
    run_patterns,
    run_relatedness,
)

STAGE_EXIT_CODES = {
    "config": 2,
    "ontology": 3,
    "corpus": 4,
    "hits": 5,
    "relatedness": 6,
    "extraction": 7,
    "enrichment": 8,
    "evaluation": 9,
}

_CONFIG_KEYS = (
    "corpus", "ontology", "snapshot", "stopwords", "gazetteer", "patterns",
    "out_dir", "threshold", "ngd_cap", "top_k", "max_phrase_len",
)


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="JSON file with option defaults")
    parser.add_argument("--corpus", type=Path, help="corpus directory (one subdir per domain)")
    parser.add_argument("--ontology", type=Path, help="ontology file to enrich")
    parser.add_argument("--snapshot", type=Path,
                        help="hit-count snapshot file; omit to index the corpus itself")
    parser.add_argument("--stopwords", type=Path, help="stoplist file (default: built in)")
    parser.add_argument("--gazetteer", type=Path, help="entity gazetteer file")
    parser.add_argument("--patterns", type=Path, help="pattern catalogue file (default: built in)")
    parser.add_argument("--threshold", type=float, help="relatedness threshold (default 0.5)")
    parser.add_argument("--ngd-cap", dest="ngd_cap", type=float,
                        help="distance substituted when a pair never co-occurs (default 1.0)")
    parser.add_argument("--top-k", dest="top_k", type=int,
                        help="keep at most k targets per missing term")
    parser.add_argument("--max-phrase-len", dest="max_phrase_len", type=int,
                        help="longest phrase the corpus index answers from postings (default 3)")
    parser.add_argument("--out-dir", dest="out_dir", type=Path, help="output directory")


def _merge_config(args: argparse.Namespace) -> dict:
    merged: dict = {}
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc
        unknown = set(loaded) - set(_CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        merged.update(loaded)
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _run_config(args: argparse.Namespace) -> RunConfig:
    merged = _merge_config(args)
    for required in ("corpus", "ontology", "out_dir"):
        if merged.get(required) is None:
            raise ConfigError(f"--{required.replace('_', '-')} is required")
    return RunConfig(
        corpus=Path(merged["corpus"]),
        ontology=Path(merged["ontology"]),
        out_dir=Path(merged["out_dir"]),
        snapshot=Path(merged["snapshot"]) if merged.get("snapshot") else None,
        stopwords=Path(merged["stopwords"]) if merged.get("stopwords") else None,
        gazetteer=Path(merged["gazetteer"]) if merged.get("gazetteer") else None,
        patterns=Path(merged["patterns"]) if merged.get("patterns") else None,
        threshold=float(merged.get("threshold", 0.5)),
        distance_cap=float(merged.get("ngd_cap", 1.0)),
        top_k=int(merged["top_k"]) if merged.get("top_k") is not None else None,
        max_phrase_len=int(merged.get("max_phrase_len", 3)),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontoenrich",
        description="Enrich an ontology with terms mined from a text corpus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    index = sub.add_parser("index", help="build and persist the corpus phrase index")
    index.add_argument("--corpus", type=Path, required=True)
    index.add_argument("--out-dir", dest="out_dir", type=Path, required=True)
    index.add_argument("--stopwords", type=Path)
    index.add_argument("--max-phrase-len", dest="max_phrase_len", type=int, default=3)

    for name, help_text in [
        ("enrich", "run the full enrichment pipeline"),
        ("relatedness", "compute and export the relatedness matrix only"),
        ("patterns", "export the pattern query audit only"),
    ]:
        _add_run_flags(sub.add_parser(name, help=help_text))

    evaluate = sub.add_parser("eval", help="compare system judgments against expert ones")
    evaluate.add_argument("--system", type=Path, required=True)
    evaluate.add_argument("--expert", type=Path, required=True)
    evaluate.add_argument("--out-dir", dest="out_dir", type=Path, required=True)
    evaluate.add_argument("--ignore-relation", action="store_true",
                          help="match placements on term, target and sense only")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "index":
            out = run_index(args.corpus, args.out_dir, args.max_phrase_len, args.stopwords)
        elif args.command == "enrich":
            out = run_enrichment(_run_config(args))
        elif args.command == "relatedness":
            out = run_relatedness(_run_config(args))
        elif args.command == "patterns":
            out = run_patterns(_run_config(args))
        else:
            out = run_eval(args.system, args.expert, args.out_dir, not args.ignore_relation)
    except ConfigError as exc:
        print(f"error [config]: {exc}", file=sys.stderr)
        return STAGE_EXIT_CODES["config"]
    except StageError as exc:
        print(f"error {exc}", file=sys.stderr)
        return STAGE_EXIT_CODES.get(exc.stage, 1)
    print(f"outputs written to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
