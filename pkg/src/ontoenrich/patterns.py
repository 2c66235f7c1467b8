"""Relation arbitration from surface-pattern hit counts.

A catalogue of templates like ``{X} is a(n) {Y}`` is instantiated for each
candidate pair, every query string is submitted to a hit-count provider, and
the template group with the highest summed count names the relation between
the pair. Variants inside one group ("is a(n)", "is a kind of", the plural
forms) pool their counts before arbitration. When every query returns zero
the pair falls back to the weak "related-to" relation: the statistics already
vouched for the pair, the catalogue just cannot name the relation.

Templates never contain negation operators; the catalogue loader rejects
them, so no negated query is ever issued.
"""

from __future__ import annotations

import importlib.resources
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .hitcounts import HitCountProvider
from .ontology import Axiom, Evidence, RelationKind, normalize_label

NEGATION_WORDS = frozenset(
    {"no", "not", "never", "none", "neither", "nor", "cannot",
     "isn't", "aren't", "wasn't", "weren't", "can't", "won't", "don't"}
)

FALLBACK_MARKER = "related-to-fallback"

# Tie preference: more specific relations first; anything else alphabetical after.
_SPECIFICITY = {
    RelationKind.INSTANCE_OF: 0,
    RelationKind.HYPONYMY: 1,
    RelationKind.MERONYMY: 2,
    RelationKind.SYNONYMY: 3,
}

_SLOT_RE = re.compile(r"\{([XY])(:pl)?\}")


@dataclass(frozen=True)
class PatternTemplate:
    id: str
    relation: RelationKind
    group: str
    template: str

    def __post_init__(self):
        slots = _SLOT_RE.findall(self.template)
        letters = [letter for letter, _ in slots]
        if sorted(letters) != ["X", "Y"]:
            raise ValueError(
                f"pattern {self.id!r} must contain exactly one X and one Y slot"
            )
        lowered = {tok.lower() for tok in self.template.split()}
        banned = lowered & NEGATION_WORDS
        if banned:
            raise ValueError(f"pattern {self.id!r} contains negation {sorted(banned)}")
        if self.relation is RelationKind.RELATED_TO:
            raise ValueError("related-to is the fallback relation, not a pattern relation")


def parse_catalogue(text: str, source: str = "<string>") -> list[PatternTemplate]:
    templates = []
    groups: dict[str, RelationKind] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 5 or fields[0] != "P":
            raise ValueError(f"{source}: line {lineno}: expected P\\t<id>\\t<relation>\\t<group>\\t<template>")
        _, pattern_id, relation_text, group, template = fields
        try:
            relation = RelationKind(relation_text)
        except ValueError:
            raise ValueError(f"{source}: line {lineno}: unknown relation {relation_text!r}") from None
        if groups.setdefault(group, relation) is not relation:
            raise ValueError(
                f"{source}: line {lineno}: group {group!r} mixes relations"
            )
        templates.append(PatternTemplate(pattern_id, relation, group, template))
    return templates


def load_catalogue(path: str | Path) -> list[PatternTemplate]:
    path = Path(path)
    return parse_catalogue(path.read_text(encoding="utf-8"), source=str(path))


def default_catalogue() -> list[PatternTemplate]:
    data = importlib.resources.files("ontoenrich").joinpath("data/patterns.tsv")
    return parse_catalogue(data.read_text(encoding="utf-8"))


_SIBILANT_ENDINGS = ("s", "x", "z", "ch", "sh")
_VOWELS = "aeiou"


def pluralize_word(word: str, exceptions: Mapping[str, str] | None = None) -> str:
    """Naive English pluralization; irregulars come from the exceptions map."""
    if exceptions:
        override = exceptions.get(word.lower())
        if override is not None:
            return override
    if word.endswith(_SIBILANT_ENDINGS):
        return word + "es"
    if len(word) > 1 and word.endswith("y") and word[-2].lower() not in _VOWELS:
        return word[:-1] + "ies"
    return word + "s"


def pluralize_term(term: str, exceptions: Mapping[str, str] | None = None) -> str:
    """Pluralize the head (last) word of a possibly multi-word term."""
    words = term.split()
    return " ".join(words[:-1] + [pluralize_word(words[-1], exceptions)])


def load_plural_exceptions(path: str | Path) -> dict[str, str]:
    exceptions = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        singular, _, plural = line.partition("\t")
        if not plural:
            raise ValueError(f"{path}: expected <singular>\\t<plural>, got {line!r}")
        exceptions[singular.lower()] = plural
    return exceptions


def _resolve_articles(query: str) -> str:
    tokens = query.split()
    resolved = []
    for i, token in enumerate(tokens):
        if token == "a(n)":
            nxt = tokens[i + 1] if i + 1 < len(tokens) else ""
            resolved.append("an" if nxt[:1].lower() in _VOWELS else "a")
        else:
            resolved.append(token)
    return " ".join(resolved)


def instantiate_patterns(
    t_miss: str,
    t_in: str,
    catalogue: Sequence[PatternTemplate],
    plural_exceptions: Mapping[str, str] | None = None,
) -> list[tuple[str, str]]:
    """Expand every template for the pair; returns (pattern id, query string)."""
    if not t_miss.strip() or not t_in.strip():
        raise ValueError("pattern instantiation needs two non-empty terms")

    def fill(match: re.Match) -> str:
        letter, plural = match.group(1), match.group(2)
        term = t_miss if letter == "X" else t_in
        return pluralize_term(term, plural_exceptions) if plural else term

    queries = []
    for template in catalogue:
        query = _SLOT_RE.sub(fill, template.template)
        queries.append((template.id, _resolve_articles(query)))
    return queries


@dataclass(frozen=True)
class QueryRecord:
    pattern_id: str
    group: str
    relation: RelationKind
    query: str
    hits: int


@dataclass(frozen=True)
class RelationSuggestion:
    missing_term: str
    ontology_term: str
    relation: RelationKind
    winning_group: str | None          # None on the related-to fallback
    winner_hits: int
    group_hits: Mapping[str, int]
    queries: tuple[QueryRecord, ...]
    tied: bool = False
    resolved_senses: tuple[int, ...] | None = None

    def with_senses(self, senses: Iterable[int]) -> "RelationSuggestion":
        return replace(self, resolved_senses=tuple(senses))


def extract_relation(
    t_miss: str,
    t_in: str,
    provider: HitCountProvider,
    catalogue: Sequence[PatternTemplate],
    plural_exceptions: Mapping[str, str] | None = None,
) -> RelationSuggestion:
    """Arbitrate one relation for a candidate pair from pattern hit counts."""
    by_id = {template.id: template for template in catalogue}
    records = []
    group_hits: dict[str, int] = {}
    group_relation: dict[str, RelationKind] = {}
    for pattern_id, query in instantiate_patterns(t_miss, t_in, catalogue, plural_exceptions):
        template = by_id[pattern_id]
        count = provider.pattern_hits(query)
        records.append(QueryRecord(pattern_id, template.group, template.relation, query, count))
        group_hits[template.group] = group_hits.get(template.group, 0) + count
        group_relation[template.group] = template.relation

    best = max(group_hits.values(), default=0)
    if best == 0:
        return RelationSuggestion(
            missing_term=t_miss,
            ontology_term=t_in,
            relation=RelationKind.RELATED_TO,
            winning_group=None,
            winner_hits=0,
            group_hits=dict(group_hits),
            queries=tuple(records),
        )
    winners = sorted(
        (group for group, count in group_hits.items() if count == best),
        key=lambda g: (_SPECIFICITY.get(group_relation[g], 99), group_relation[g].value, g),
    )
    return RelationSuggestion(
        missing_term=t_miss,
        ontology_term=t_in,
        relation=group_relation[winners[0]],
        winning_group=winners[0],
        winner_hits=best,
        group_hits=dict(group_hits),
        queries=tuple(records),
        tied=len(winners) > 1,
    )


def slug(surface: str) -> str:
    """Concept id for a new term: normalized label with hyphens for spaces."""
    return normalize_label(surface).replace(" ", "-")


@dataclass(frozen=True)
class EnrichmentAxioms:
    """Axioms proposed by arbitration, before hierarchy placement applies them."""

    axioms: tuple[Axiom, ...]
    instance_terms: frozenset[str]     # missing terms to insert as instances


def build_axioms(suggestions: Iterable[RelationSuggestion]) -> EnrichmentAxioms:
    """One enriched axiom per suggestion and sense; duplicates collapse."""
    axioms: dict[tuple, Axiom] = {}
    instance_terms = set()
    for suggestion in suggestions:
        subject = slug(suggestion.missing_term)
        object_ = slug(suggestion.ontology_term)
        if suggestion.relation is RelationKind.INSTANCE_OF:
            instance_terms.add(suggestion.missing_term)
        evidence = Evidence(
            suggestion.winning_group or FALLBACK_MARKER, suggestion.winner_hits
        )
        for sense in suggestion.resolved_senses or (1,):
            axiom = Axiom(
                relation=suggestion.relation,
                subject=subject,
                object=object_,
                object_sense=sense,
                provenance="enriched",
                evidence=evidence,
            )
            axioms.setdefault(axiom.key, axiom)
    ordered = tuple(sorted(axioms.values(), key=lambda a: a.key))
    return EnrichmentAxioms(ordered, frozenset(instance_terms))


def write_pattern_audit(suggestions: Iterable[RelationSuggestion], path: str | Path) -> None:
    """One line per issued query: pair, pattern, query string, hit count."""
    lines = ["missing_term\tontology_term\tpattern\tquery\thits"]
    ordered = sorted(suggestions, key=lambda s: (s.missing_term.lower(), s.ontology_term.lower()))
    for suggestion in ordered:
        for record in suggestion.queries:
            lines.append(
                f"{suggestion.missing_term}\t{suggestion.ontology_term}"
                f"\t{record.pattern_id}\t{record.query}\t{record.hits}"
            )
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")
