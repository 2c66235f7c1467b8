"""End-to-end batch runs: mine terms, filter, relate, arbitrate, place.

Every run is deterministic: identical configuration and inputs produce
byte-identical output files (fixed orderings, fixed float formatting, no
timestamps). A manifest records the knobs that shaped the run.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .evaluation import Judgments, precision_report, write_precision_report
from .hitcounts import CorpusIndex, HitCountProvider, SnapshotTable
from .ontology import Ontology, load_ontology, save_ontology
from .patterns import (
    PatternTemplate,
    RelationSuggestion,
    default_catalogue,
    extract_relation,
    load_catalogue,
    write_pattern_audit,
)
from .placement import (
    DistanceConfig,
    PlacementConfig,
    enrich_ontology,
    place_all,
    write_enrichment_report,
)
from .relatedness import (
    RelatednessMatrix,
    SelectionConfig,
    drop_unusable_terms,
    ngram_hits_filter,
    relatedness_matrix,
    select_candidates,
    write_matrix,
)
from .textpipe import (
    Corpus,
    Gazetteer,
    NGram,
    Stoplist,
    TermPartition,
    default_stoplist,
    load_corpus,
    load_stoplist,
    partition_terms,
    tokenize_corpus,
)

logger = logging.getLogger(__name__)

STAGES = ("config", "ontology", "corpus", "hits", "relatedness", "extraction",
          "enrichment", "evaluation")


class StageError(RuntimeError):
    """Pipeline failure tagged with the stage that raised it."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    corpus: Path
    ontology: Path
    out_dir: Path
    snapshot: Path | None = None
    stopwords: Path | None = None
    gazetteer: Path | None = None
    patterns: Path | None = None
    threshold: float = 0.5
    distance_cap: float = 1.0
    top_k: int | None = None
    max_phrase_len: int = 3

    def validate(self) -> None:
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.distance_cap < 0:
            raise ConfigError("distance cap must be >= 0")
        if self.top_k is not None and self.top_k < 1:
            raise ConfigError("top-k must be >= 1")
        if self.max_phrase_len < 3:
            raise ConfigError("max phrase length must be >= 3")
        for name in ("corpus", "ontology", "snapshot", "stopwords", "gazetteer", "patterns"):
            path = getattr(self, name)
            if path is not None and not Path(path).exists():
                raise ConfigError(f"{name} path {path} does not exist")


@dataclass
class RunState:
    config: RunConfig
    ontology: Ontology
    stoplist: Stoplist
    gazetteer: Gazetteer
    catalogue: list[PatternTemplate]
    corpus: Corpus
    partition: TermPartition
    provider: HitCountProvider
    provider_id: str
    eliminated: list[NGram]
    retained: list[NGram]
    matrix: RelatednessMatrix | None
    suggestions: list[RelationSuggestion]
    term_domains: dict[str, set[str]]


def _sha256(path: Path | None) -> str:
    if path is None:
        return "-"
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _stage(stage: str):
    class _Guard:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if exc is not None and not isinstance(exc, StageError):
                raise StageError(stage, exc) from exc
            return False

    return _Guard()


def _prepare(config: RunConfig, need_extraction: bool) -> RunState:
    with _stage("config"):
        config.validate()
        catalogue = _catalogue(config)

    with _stage("ontology"):
        ontology = load_ontology(config.ontology)

    with _stage("corpus"):
        stoplist = (
            load_stoplist(config.stopwords) if config.stopwords else default_stoplist()
        )
        gazetteer = (
            Gazetteer.load(config.gazetteer) if config.gazetteer else Gazetteer.empty()
        )
        corpus = load_corpus(config.corpus)
        ngrams = tokenize_corpus(corpus, stoplist)
        partition = partition_terms(ngrams, ontology, gazetteer)

    with _stage("hits"):
        if config.snapshot is not None:
            provider: HitCountProvider = SnapshotTable.load(config.snapshot)
            provider_id = f"snapshot:{Path(config.snapshot).name}"
        else:
            provider = CorpusIndex.build(
                corpus, config.max_phrase_len, punctuation=stoplist.punctuation
            )
            provider_id = f"index:{Path(config.corpus).name},docs={provider.total_docs()}"

    with _stage("relatedness"):
        retained = ngram_hits_filter(partition.missing, provider)
        retained_keys = {gram.key for gram in retained}
        eliminated = [g for g in sorted(partition.missing, key=lambda g: g.key)
                      if g.key not in retained_keys]

        known_concept_terms = [
            k.ngram.surface for k in partition.known if k.source == "concept"
        ]
        t_in, _ = drop_unusable_terms(known_concept_terms, provider)
        t_miss, unusable_miss = drop_unusable_terms(
            [gram.surface for gram in retained], provider
        )
        if unusable_miss:
            logger.warning(
                "%d retained terms cannot enter the relatedness batch", len(unusable_miss)
            )
        matrix = None
        if t_miss and t_in:
            matrix = relatedness_matrix(
                t_miss, t_in, provider, DistanceConfig(config.distance_cap)
            )

    suggestions: list[RelationSuggestion] = []
    if need_extraction and matrix is not None:
        with _stage("extraction"):
            candidates = select_candidates(
                matrix, SelectionConfig(config.threshold, config.top_k)
            )
            for miss, target in candidates.pairs():
                suggestions.append(extract_relation(miss, target, provider, catalogue))

    term_domains: dict[str, set[str]] = {}
    for gram in partition.missing:
        domains = {doc_id.split("/", 1)[0] for doc_id in gram.doc_ids}
        term_domains[gram.surface] = domains or {"unknown"}

    return RunState(
        config=config,
        ontology=ontology,
        stoplist=stoplist,
        gazetteer=gazetteer,
        catalogue=catalogue,
        corpus=corpus,
        partition=partition,
        provider=provider,
        provider_id=provider_id,
        eliminated=eliminated,
        retained=retained,
        matrix=matrix,
        suggestions=suggestions,
        term_domains=term_domains,
    )


def _catalogue(config: RunConfig) -> list[PatternTemplate]:
    if config.patterns is not None:
        return load_catalogue(config.patterns)
    return default_catalogue()


def _write_manifest(state: RunState, path: Path) -> None:
    config = state.config
    entries = {
        "catalogue_sha256": _sha256(config.patterns) if config.patterns else "builtin",
        "distance_cap": repr(config.distance_cap),
        "gazetteer_sha256": _sha256(config.gazetteer),
        "max_phrase_len": str(config.max_phrase_len),
        "ontology_sha256": _sha256(config.ontology),
        "provider": state.provider_id,
        "stopwords_sha256": _sha256(config.stopwords) if config.stopwords else "builtin",
        "threshold": repr(config.threshold),
        "tool_version": __version__,
        "top_k": "unbounded" if config.top_k is None else str(config.top_k),
    }
    lines = [f"{key}\t{value}" for key, value in sorted(entries.items())]
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def _write_matrix_or_header(state: RunState, path: Path) -> None:
    if state.matrix is not None:
        write_matrix(state.matrix, path)
    else:
        path.write_text("term\n", encoding="utf-8")


def _write_system_judgments(state: RunState, outcomes, path: Path) -> None:
    lines = []
    for gram in state.eliminated:
        for domain in sorted(state.term_domains[gram.surface]):
            lines.append(f"E\t{domain}\teliminated\t{gram.surface}")
    for gram in state.retained:
        for domain in sorted(state.term_domains[gram.surface]):
            lines.append(f"E\t{domain}\tretained\t{gram.surface}")
    for outcome in outcomes:
        domains = state.term_domains.get(outcome.term, {"unknown"})
        for domain in sorted(domains):
            for sense in outcome.senses:
                lines.append(
                    f"X\t{domain}\t{outcome.term}\t{outcome.target_concept}"
                    f"\t{sense}\t{outcome.relation.value}"
                )
    lines.sort()
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def run_enrichment(config: RunConfig) -> Path:
    """Full pipeline; returns the output directory it populated."""
    state = _prepare(config, need_extraction=True)

    with _stage("enrichment"):
        placement_cfg = PlacementConfig(
            distance=DistanceConfig(config.distance_cap),
            denominator=state.matrix.denominator if state.matrix else None,
        )
        decisions, failures = place_all(
            state.suggestions, state.ontology, state.provider, placement_cfg
        )
        enriched, report = enrich_ontology(state.ontology, decisions, failures)

    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_ontology(enriched, out / "enriched_ontology.tsv")
    _write_matrix_or_header(state, out / "relatedness_matrix.tsv")
    write_pattern_audit(state.suggestions, out / "pattern_audit.tsv")
    write_enrichment_report(report, out / "enrichment_report.tsv")
    _write_system_judgments(state, report.outcomes, out / "system_judgments.tsv")
    _write_manifest(state, out / "manifest.tsv")
    return out


def run_relatedness(config: RunConfig) -> Path:
    """Stop after the relatedness matrix; write matrix and manifest only."""
    state = _prepare(config, need_extraction=False)
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_matrix_or_header(state, out / "relatedness_matrix.tsv")
    _write_manifest(state, out / "manifest.tsv")
    return out


def run_patterns(config: RunConfig) -> Path:
    """Stop after relation arbitration; write the query audit and manifest."""
    state = _prepare(config, need_extraction=True)
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_pattern_audit(state.suggestions, out / "pattern_audit.tsv")
    _write_manifest(state, out / "manifest.tsv")
    return out


def run_index(corpus_path: Path, out_dir: Path, max_phrase_len: int = 3,
              stopwords: Path | None = None) -> Path:
    """Build the corpus index and persist it."""
    with _stage("config"):
        if not Path(corpus_path).exists():
            raise ConfigError(f"corpus path {corpus_path} does not exist")
    with _stage("corpus"):
        stoplist = load_stoplist(stopwords) if stopwords else default_stoplist()
        corpus = load_corpus(corpus_path)
    with _stage("hits"):
        index = CorpusIndex.build(corpus, max_phrase_len, punctuation=stoplist.punctuation)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    index.save(out / "index.tsv")
    return out


def run_eval(system_path: Path, expert_path: Path, out_dir: Path,
             require_relation: bool = True) -> Path:
    with _stage("evaluation"):
        system = Judgments.load(system_path)
        expert = Judgments.load(expert_path)
        rows = precision_report(system, expert, require_relation)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_precision_report(rows, out / "precision_report.tsv")
    return out
