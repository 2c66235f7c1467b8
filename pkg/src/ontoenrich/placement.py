"""Hierarchy placement: choosing where a suggested term attaches.

Three cases, driven by the sense count of the target concept:

* case1 - the target has a single sense; attach directly.
* case2 - the target has several senses; score each sense's hypernymy path
  by the mean relatedness between the new term and the path's concept
  labels, and attach to every maximally scored sense (ties allowed).
* case3-composite - one term relates to several targets; each target is
  resolved as case1/case2 and every decision is tagged composite.

Path scoring reuses the run's relatedness denominator so placement and
candidate selection speak the same scale. Labels whose hit counts cannot
support a distance (zero hits, or hits at the collection size) are skipped;
a path with no usable label cannot win, and if no path has a usable label
the sense is unresolved.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .hitcounts import HitCountProvider
from .ontology import (
    Axiom,
    Concept,
    Evidence,
    Instance,
    Ontology,
    RelationKind,
)
from .patterns import FALLBACK_MARKER, RelationSuggestion, slug
from .relatedness import DegenerateDenominatorError, DistanceConfig, normalized_distance

logger = logging.getLogger(__name__)


class UnresolvedSenseError(ValueError):
    """No sense path of the target had a usable label to score."""


class ConflictingDecisionError(ValueError):
    """Two decisions disagree on the relation for the same term, target and sense."""


@dataclass(frozen=True)
class PlacementConfig:
    distance: DistanceConfig = DistanceConfig()
    denominator: float | None = None   # batch sum a relatedness run computed
    max_path_depth: int = 5            # path labels scored, counted from the target


@dataclass(frozen=True)
class PathScore:
    sense: int
    labels: tuple[str, ...]
    scored_labels: tuple[str, ...]
    score: float | None                # None when no label was usable


@dataclass(frozen=True)
class PlacementDecision:
    suggestion: RelationSuggestion
    target_concept: str
    senses: tuple[int, ...]
    case: str                          # "case1", "case2" or "case3-composite"
    subcase: str | None = None         # case1/case2 inside a composite decision
    path_scores: tuple[PathScore, ...] = ()

    @property
    def term(self) -> str:
        return self.suggestion.missing_term


def _path_labels(ontology: Ontology, path, max_depth: int) -> tuple[str, ...]:
    return tuple(
        ontology.concepts[cid].label for cid, _ in path.steps[:max_depth]
    )


def disambiguate_sense(
    t_miss: str,
    target: str,
    ontology: Ontology,
    provider: HitCountProvider,
    cfg: PlacementConfig = PlacementConfig(),
) -> tuple[tuple[int, ...], tuple[PathScore, ...]]:
    """Pick the maximally related sense path(s) of a multi-sense target.

    Returns the winning sense set plus the per-path audit. The score of a
    path is the mean relatedness between the new term and its usable labels.
    """
    concept = ontology.concept(target)
    if len(concept.senses) < 2:
        raise ValueError(f"{target!r} has a single sense; nothing to disambiguate")

    paths = ontology.semantic_paths_from(target)
    distances: dict[str, float] = {}
    usable: dict[str, float] = {}
    for path in paths:
        for label in _path_labels(ontology, path, cfg.max_path_depth):
            if label in distances:
                continue
            try:
                value = normalized_distance(t_miss, label, provider, cfg.distance)
            except (ValueError, DegenerateDenominatorError):
                distances[label] = float("nan")
                logger.warning(
                    "sense scoring skips label %r for %r (unusable hit counts)",
                    label, t_miss,
                )
                continue
            distances[label] = value
            usable[label] = value

    denominator = cfg.denominator
    if denominator is None:
        denominator = sum(usable[label] for label in sorted(usable))

    scores = []
    for path, sense in zip(paths, concept.senses):
        labels = _path_labels(ontology, path, cfg.max_path_depth)
        scored = tuple(label for label in labels if label in usable)
        if not scored:
            scores.append(PathScore(sense, labels, scored, None))
            continue
        if denominator == 0.0:
            relatedness_values = [1.0 for _ in scored]
        else:
            relatedness_values = [1.0 - usable[label] / denominator for label in scored]
        scores.append(
            PathScore(sense, labels, scored, sum(relatedness_values) / len(scored))
        )

    defined = [s for s in scores if s.score is not None]
    if not defined:
        raise UnresolvedSenseError(
            f"no sense path of {target!r} has a label with usable hit counts"
        )
    best = max(s.score for s in defined)
    winners = tuple(s.sense for s in defined if s.score == best)
    return winners, tuple(scores)


def place_concept(
    suggestion: RelationSuggestion,
    ontology: Ontology,
    provider: HitCountProvider,
    cfg: PlacementConfig = PlacementConfig(),
) -> PlacementDecision:
    """Resolve one (term, target) suggestion to target senses."""
    match = ontology.contains_term(suggestion.ontology_term)
    if match is None:
        raise LookupError(f"target term {suggestion.ontology_term!r} is not in the ontology")
    if match.kind != "concept":
        raise LookupError(
            f"target term {suggestion.ontology_term!r} resolves to an instance, "
            "which cannot anchor placement"
        )
    concept = ontology.concepts[match.id]
    if len(concept.senses) == 1:
        return PlacementDecision(
            suggestion=suggestion.with_senses((1,)),
            target_concept=match.id,
            senses=(1,),
            case="case1",
        )
    senses, audit = disambiguate_sense(
        suggestion.missing_term, match.id, ontology, provider, cfg
    )
    return PlacementDecision(
        suggestion=suggestion.with_senses(senses),
        target_concept=match.id,
        senses=senses,
        case="case2",
        path_scores=audit,
    )


@dataclass(frozen=True)
class PlacementFailure:
    suggestion: RelationSuggestion
    reason: str


def place_all(
    suggestions: Sequence[RelationSuggestion],
    ontology: Ontology,
    provider: HitCountProvider,
    cfg: PlacementConfig = PlacementConfig(),
) -> tuple[list[PlacementDecision], list[PlacementFailure]]:
    """Place every suggestion; terms with several targets become composite."""
    by_term: dict[str, list[RelationSuggestion]] = {}
    for suggestion in suggestions:
        by_term.setdefault(suggestion.missing_term, []).append(suggestion)

    decisions, failures = [], []
    for term in sorted(by_term, key=str.lower):
        group = sorted(by_term[term], key=lambda s: s.ontology_term.lower())
        composite = len(group) > 1
        for suggestion in group:
            try:
                decision = place_concept(suggestion, ontology, provider, cfg)
            except (UnresolvedSenseError, LookupError) as exc:
                failures.append(PlacementFailure(suggestion, str(exc)))
                continue
            if composite:
                decision = PlacementDecision(
                    suggestion=decision.suggestion,
                    target_concept=decision.target_concept,
                    senses=decision.senses,
                    case="case3-composite",
                    subcase=decision.case,
                    path_scores=decision.path_scores,
                )
            decisions.append(decision)
    return decisions, failures


@dataclass(frozen=True)
class EnrichmentOutcome:
    term: str
    inserted_id: str
    inserted_kind: str                 # "concept" or "instance"
    target_concept: str
    senses: tuple[int, ...]
    relation: RelationKind
    case: str
    winning_pattern: str
    winner_hits: int


@dataclass(frozen=True)
class EnrichmentReport:
    outcomes: tuple[EnrichmentOutcome, ...]
    failures: tuple[PlacementFailure, ...]
    case2_ties: int


def _fresh_id(base: str, ontology: Ontology) -> str:
    if base not in ontology.concepts and base not in ontology.instances:
        return base
    counter = 2
    while f"{base}-{counter}" in ontology.concepts or f"{base}-{counter}" in ontology.instances:
        counter += 1
    return f"{base}-{counter}"


def enrich_ontology(
    ontology: Ontology,
    decisions: Sequence[PlacementDecision],
    failures: Sequence[PlacementFailure] = (),
) -> tuple[Ontology, EnrichmentReport]:
    """Insert each placed term once and one axiom per decision and sense.

    The input ontology is untouched (a new value is returned), re-running
    with the same decisions is a no-op, and new terms are single-sense
    leaves so the hypernymy structure stays acyclic.
    """
    chosen: dict[tuple[str, str, int], RelationKind] = {}
    for decision in decisions:
        for sense in decision.senses:
            key = (slug(decision.term), decision.target_concept, sense)
            previous = chosen.setdefault(key, decision.suggestion.relation)
            if previous is not decision.suggestion.relation:
                raise ConflictingDecisionError(
                    f"decisions disagree for {key}: {previous.value} vs "
                    f"{decision.suggestion.relation.value}"
                )

    by_term: dict[str, list[PlacementDecision]] = {}
    for decision in decisions:
        by_term.setdefault(decision.term, []).append(decision)

    new_concepts: list[Concept] = []
    new_instances: list[Instance] = []
    new_axioms: list[Axiom] = []
    outcomes: list[EnrichmentOutcome] = []
    term_ids: dict[str, tuple[str, str]] = {}

    for term in sorted(by_term, key=str.lower):
        group = sorted(by_term[term], key=lambda d: (d.target_concept, d.senses))
        existing = ontology.contains_term(term)
        wants_instance = any(
            d.suggestion.relation is RelationKind.INSTANCE_OF for d in group
        )
        if existing is not None:
            term_ids[term] = (existing.id, existing.kind)
        else:
            new_id = _fresh_id(slug(term), ontology)
            if wants_instance:
                anchor = next(
                    d for d in group if d.suggestion.relation is RelationKind.INSTANCE_OF
                )
                new_instances.append(Instance(new_id, term, anchor.target_concept))
                term_ids[term] = (new_id, "instance")
            else:
                new_concepts.append(Concept(new_id, term))
                term_ids[term] = (new_id, "concept")

    for term in sorted(by_term, key=str.lower):
        inserted_id, inserted_kind = term_ids[term]
        for decision in sorted(by_term[term], key=lambda d: (d.target_concept, d.senses)):
            suggestion = decision.suggestion
            evidence = Evidence(
                suggestion.winning_group or FALLBACK_MARKER, suggestion.winner_hits
            )
            for sense in decision.senses:
                new_axioms.append(
                    Axiom(
                        relation=suggestion.relation,
                        subject=inserted_id,
                        object=decision.target_concept,
                        object_sense=sense,
                        provenance="enriched",
                        evidence=evidence,
                    )
                )
            outcomes.append(
                EnrichmentOutcome(
                    term=term,
                    inserted_id=inserted_id,
                    inserted_kind=inserted_kind,
                    target_concept=decision.target_concept,
                    senses=decision.senses,
                    relation=suggestion.relation,
                    case=decision.case,
                    winning_pattern=suggestion.winning_group or FALLBACK_MARKER,
                    winner_hits=suggestion.winner_hits,
                )
            )

    enriched = ontology.with_additions(new_concepts, new_instances, new_axioms)
    ties = sum(
        1
        for decision in decisions
        if decision.case in ("case2", "case3-composite") and len(decision.senses) > 1
    )
    report = EnrichmentReport(tuple(outcomes), tuple(failures), ties)
    return enriched, report


def write_enrichment_report(report: EnrichmentReport, path: str | Path) -> None:
    lines = ["term\ttarget\tsenses\trelation\tcase\tpattern\thits\tstatus"]
    for outcome in sorted(report.outcomes, key=lambda o: (o.term.lower(), o.target_concept)):
        senses = ",".join(str(s) for s in outcome.senses)
        lines.append(
            f"{outcome.term}\t{outcome.target_concept}\t{senses}"
            f"\t{outcome.relation.value}\t{outcome.case}"
            f"\t{outcome.winning_pattern}\t{outcome.winner_hits}\tapplied"
        )
    for failure in sorted(report.failures, key=lambda f: f.suggestion.missing_term.lower()):
        lines.append(
            f"{failure.suggestion.missing_term}\t{failure.suggestion.ontology_term}"
            f"\t-\t{failure.suggestion.relation.value}\t-\t-\t-\tunresolved: {failure.reason}"
        )
    lines.append(f"# case2 ties: {report.case2_ties}")
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
