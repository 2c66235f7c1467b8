"""Ontology model: labelled concepts with numbered senses, instances, and
relation axioms, plus a line-based serialization format.

File format (UTF-8, tab-separated, one record per line, `#` starts a comment):

    C  <concept-id>  <label>  <sense-count>
    G  <concept-id>  <category,category,...>
    I  <instance-id>  <label>  <concept-id>
    A  <relation>  <subject-id>[#<sense>]  <object-id>[#<sense>]  <provenance>  [<pattern>  <hits>]

Axioms are stored in a canonical direction: hyponymy lines are converted to
hypernymy with the roles swapped, holonymy to meronymy. Queries mirror them
back, so ``has_axiom`` answers for either direction. Saving writes records in
a fixed order (concepts by id, categories, instances, axioms by key), which
makes save(load(f)) byte-identical for canonically ordered input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping


class OntologyParseError(ValueError):
    """A line in an ontology file could not be parsed."""


class OntologyValidationError(ValueError):
    """A structural invariant of the ontology does not hold."""


class UnknownConceptError(KeyError):
    """A lookup referenced a concept id that is not in the ontology."""


class RelationKind(str, Enum):
    SYNONYMY = "synonymy"
    HYPERNYMY = "hypernymy"
    HYPONYMY = "hyponymy"
    MERONYMY = "meronymy"
    HOLONYMY = "holonymy"
    INSTANCE_OF = "instance-of"
    RELATED_TO = "related-to"


# Inverse pairs; the first member of each pair is the stored direction.
_CANONICAL_INVERSE = {
    RelationKind.HYPONYMY: RelationKind.HYPERNYMY,
    RelationKind.HOLONYMY: RelationKind.MERONYMY,
}
_QUERY_INVERSE = {
    RelationKind.HYPERNYMY: RelationKind.HYPONYMY,
    RelationKind.HYPONYMY: RelationKind.HYPERNYMY,
    RelationKind.MERONYMY: RelationKind.HOLONYMY,
    RelationKind.HOLONYMY: RelationKind.MERONYMY,
}
_SYMMETRIC = {RelationKind.SYNONYMY, RelationKind.RELATED_TO}


def normalize_label(surface: str) -> str:
    """Matching policy for labels and phrases: case-fold, collapse whitespace."""
    return " ".join(surface.split()).lower()


@dataclass(frozen=True)
class Concept:
    id: str
    label: str
    senses: tuple[int, ...] = (1,)
    categories: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Instance:
    id: str
    label: str
    concept_id: str


@dataclass(frozen=True)
class Evidence:
    pattern_id: str
    hits: int


@dataclass(frozen=True)
class Axiom:
    relation: RelationKind
    subject: str
    object: str
    subject_sense: int = 1
    object_sense: int = 1
    provenance: str = "original"
    evidence: Evidence | None = None

    @property
    def key(self) -> tuple:
        """Identity for deduplication: relation plus the ordered endpoints."""
        return (
            self.relation.value,
            self.subject,
            self.subject_sense,
            self.object,
            self.object_sense,
        )


@dataclass(frozen=True)
class SensePath:
    """Hypernymy chain from one sense of a concept up to its root."""

    steps: tuple[tuple[str, int], ...]

    def concept_ids(self) -> tuple[str, ...]:
        return tuple(cid for cid, _ in self.steps)


@dataclass(frozen=True)
class TermMatch:
    id: str
    kind: str  # "concept" or "instance"


_PROVENANCES = ("original", "enriched")


def canonicalize_axiom(axiom: Axiom) -> Axiom:
    """Rewrite hyponymy/holonymy into the stored inverse direction."""
    inverse = _CANONICAL_INVERSE.get(axiom.relation)
    if inverse is None:
        return axiom
    return Axiom(
        relation=inverse,
        subject=axiom.object,
        object=axiom.subject,
        subject_sense=axiom.object_sense,
        object_sense=axiom.subject_sense,
        provenance=axiom.provenance,
        evidence=axiom.evidence,
    )


class Ontology:
    """Immutable container; updates return new Ontology values."""

    def __init__(
        self,
        concepts: Iterable[Concept] = (),
        instances: Iterable[Instance] = (),
        axioms: Iterable[Axiom] = (),
    ):
        self._concepts: dict[str, Concept] = {}
        for c in concepts:
            if not normalize_label(c.label):
                raise OntologyValidationError(f"concept {c.id!r} has an empty label")
            if not c.senses or tuple(c.senses) != tuple(range(1, len(c.senses) + 1)):
                raise OntologyValidationError(
                    f"concept {c.id!r} senses must be 1..n, got {c.senses!r}"
                )
            if c.id in self._concepts:
                raise OntologyValidationError(f"duplicate concept id {c.id!r}")
            self._concepts[c.id] = c

        self._instances: dict[str, Instance] = {}
        for inst in instances:
            if inst.id in self._concepts or inst.id in self._instances:
                raise OntologyValidationError(f"duplicate id {inst.id!r}")
            if inst.concept_id not in self._concepts:
                raise OntologyValidationError(
                    f"instance {inst.id!r} references unknown concept {inst.concept_id!r}"
                )
            self._instances[inst.id] = inst

        # Label index: normalized label -> (kind, id); concepts shadow instances,
        # ties broken by id for determinism.
        self._by_label: dict[str, TermMatch] = {}
        for c in sorted(self._concepts.values(), key=lambda c: c.id, reverse=True):
            self._by_label[normalize_label(c.label)] = TermMatch(c.id, "concept")
        for inst in sorted(self._instances.values(), key=lambda i: i.id):
            self._by_label.setdefault(normalize_label(inst.label), TermMatch(inst.id, "instance"))

        axiom_map: dict[tuple, Axiom] = {}
        for a in axioms:
            if a.relation in _CANONICAL_INVERSE:
                raise OntologyValidationError(
                    f"{a.relation.value} axioms must be canonicalized before storage"
                )
            self._check_endpoint(a, a.subject, a.subject_sense)
            self._check_endpoint(a, a.object, a.object_sense)
            if a.relation is not RelationKind.SYNONYMY and (
                (a.subject, a.subject_sense) == (a.object, a.object_sense)
            ):
                raise OntologyValidationError(
                    f"{a.relation.value} axiom with identical endpoints {a.subject!r}"
                )
            axiom_map.setdefault(a.key, a)
        self._axioms: tuple[Axiom, ...] = tuple(sorted(axiom_map.values(), key=lambda a: a.key))
        self._axiom_keys = frozenset(axiom_map)

        # sense -> hypernym parents, for path traversal
        self._parents: dict[tuple[str, int], list[tuple[str, int]]] = {}
        for a in self._axioms:
            if a.relation is RelationKind.HYPERNYMY:
                child = (a.object, a.object_sense)
                self._parents.setdefault(child, []).append((a.subject, a.subject_sense))
        for parents in self._parents.values():
            parents.sort()
        self._check_acyclic()

    def _check_endpoint(self, axiom: Axiom, ref: str, sense: int) -> None:
        concept = self._concepts.get(ref)
        if concept is not None:
            if sense not in concept.senses:
                raise OntologyValidationError(
                    f"axiom {axiom.key} uses sense {sense} of {ref!r}, "
                    f"which has {len(concept.senses)} sense(s)"
                )
            return
        if ref in self._instances:
            if sense != 1:
                raise OntologyValidationError(f"instance {ref!r} has no sense {sense}")
            return
        raise OntologyValidationError(f"axiom references undeclared id {ref!r}")

    def _check_acyclic(self) -> None:
        state: dict[tuple[str, int], int] = {}  # 1 = on stack, 2 = done

        def visit(node: tuple[str, int]) -> None:
            state[node] = 1
            for parent in self._parents.get(node, ()):
                mark = state.get(parent)
                if mark == 1:
                    raise OntologyValidationError(
                        f"hypernymy cycle through {node[0]!r}#{node[1]}"
                    )
                if mark is None:
                    visit(parent)
            state[node] = 2

        for node in list(self._parents):
            if node not in state:
                visit(node)

    # ---- read API -------------------------------------------------------

    @property
    def concepts(self) -> Mapping[str, Concept]:
        return self._concepts

    @property
    def instances(self) -> Mapping[str, Instance]:
        return self._instances

    @property
    def axioms(self) -> tuple[Axiom, ...]:
        return self._axioms

    @property
    def relations(self) -> frozenset[RelationKind]:
        return frozenset(a.relation for a in self._axioms)

    def concept(self, concept_id: str) -> Concept:
        try:
            return self._concepts[concept_id]
        except KeyError:
            raise UnknownConceptError(concept_id) from None

    def contains_term(self, surface: str) -> TermMatch | None:
        """Match a surface string against concept and instance labels."""
        key = normalize_label(surface)
        if not key:
            return None
        return self._by_label.get(key)

    def has_axiom(
        self,
        relation: RelationKind,
        subject: str,
        object: str,
        subject_sense: int = 1,
        object_sense: int = 1,
    ) -> bool:
        """Axiom membership, mirroring inverse and symmetric relations."""
        direct = (relation.value, subject, subject_sense, object, object_sense)
        if direct in self._axiom_keys:
            return True
        inverse = _QUERY_INVERSE.get(relation)
        if inverse is not None:
            mirrored = (inverse.value, object, object_sense, subject, subject_sense)
            if mirrored in self._axiom_keys:
                return True
        if relation in _SYMMETRIC:
            flipped = (relation.value, object, object_sense, subject, subject_sense)
            if flipped in self._axiom_keys:
                return True
        return False

    def semantic_paths_from(self, concept_id: str) -> list[SensePath]:
        """One hypernymy path per sense, from the sense up to its root."""
        concept = self.concept(concept_id)
        paths = []
        for sense in concept.senses:
            steps = [(concept_id, sense)]
            seen = {(concept_id, sense)}
            node = (concept_id, sense)
            while True:
                parents = self._parents.get(node)
                if not parents:
                    break
                node = parents[0]
                if node in seen:  # unreachable after the DAG check; guards anyway
                    break
                seen.add(node)
                steps.append(node)
            paths.append(SensePath(tuple(steps)))
        return paths

    # ---- updates (return new values) ------------------------------------

    def with_additions(
        self,
        concepts: Iterable[Concept] = (),
        instances: Iterable[Instance] = (),
        axioms: Iterable[Axiom] = (),
    ) -> "Ontology":
        """New ontology with extra records; one validation pass for batches."""
        return Ontology(
            list(self._concepts.values()) + list(concepts),
            list(self._instances.values()) + list(instances),
            list(self._axioms) + [canonicalize_axiom(a) for a in axioms],
        )

    def add_axiom(self, axiom: Axiom) -> "Ontology":
        """Add one axiom; re-adding an identical axiom is a no-op."""
        if canonicalize_axiom(axiom).key in self._axiom_keys:
            return self
        return self.with_additions(axioms=[axiom])

    # ---- serialization ---------------------------------------------------

    def _render_ref(self, ref: str, sense: int) -> str:
        concept = self._concepts.get(ref)
        if concept is not None and len(concept.senses) > 1:
            return f"{ref}#{sense}"
        return ref

    def to_text(self) -> str:
        lines = []
        for c in sorted(self._concepts.values(), key=lambda c: c.id):
            lines.append(f"C\t{c.id}\t{c.label}\t{len(c.senses)}")
        for c in sorted(self._concepts.values(), key=lambda c: c.id):
            if c.categories:
                lines.append(f"G\t{c.id}\t{','.join(sorted(c.categories))}")
        for inst in sorted(self._instances.values(), key=lambda i: i.id):
            lines.append(f"I\t{inst.id}\t{inst.label}\t{inst.concept_id}")
        for a in self._axioms:
            parts = [
                "A",
                a.relation.value,
                self._render_ref(a.subject, a.subject_sense),
                self._render_ref(a.object, a.object_sense),
                a.provenance,
            ]
            if a.evidence is not None:
                parts += [a.evidence.pattern_id, str(a.evidence.hits)]
            lines.append("\t".join(parts))
        return "".join(line + "\n" for line in lines)


def _parse_ref(field_text: str, lineno: int) -> tuple[str, int]:
    if "#" in field_text:
        ref, _, sense_text = field_text.rpartition("#")
        try:
            sense = int(sense_text)
        except ValueError:
            raise OntologyParseError(f"line {lineno}: bad sense in {field_text!r}") from None
        if not ref:
            raise OntologyParseError(f"line {lineno}: bad reference {field_text!r}")
        return ref, sense
    return field_text, 1


def parse_ontology(text: str, source: str = "<string>") -> Ontology:
    concepts: dict[str, Concept] = {}
    categories: dict[str, frozenset[str]] = {}
    instances: list[Instance] = []
    axioms: list[Axiom] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        kind = fields[0]
        if kind == "C":
            if len(fields) != 4:
                raise OntologyParseError(f"{source}: line {lineno}: C record needs 4 fields")
            _, cid, label, count_text = fields
            try:
                count = int(count_text)
            except ValueError:
                raise OntologyParseError(
                    f"{source}: line {lineno}: bad sense count {count_text!r}"
                ) from None
            if count < 1:
                raise OntologyParseError(f"{source}: line {lineno}: sense count must be >= 1")
            if cid in concepts:
                raise OntologyValidationError(f"{source}: duplicate concept id {cid!r}")
            concepts[cid] = Concept(cid, label, tuple(range(1, count + 1)))
        elif kind == "G":
            if len(fields) != 3:
                raise OntologyParseError(f"{source}: line {lineno}: G record needs 3 fields")
            cats = frozenset(c.strip() for c in fields[2].split(",") if c.strip())
            categories[fields[1]] = cats
        elif kind == "I":
            if len(fields) != 4:
                raise OntologyParseError(f"{source}: line {lineno}: I record needs 4 fields")
            instances.append(Instance(fields[1], fields[2], fields[3]))
        elif kind == "A":
            if len(fields) not in (5, 7):
                raise OntologyParseError(
                    f"{source}: line {lineno}: A record needs 5 fields (7 with evidence)"
                )
            try:
                relation = RelationKind(fields[1])
            except ValueError:
                raise OntologyParseError(
                    f"{source}: line {lineno}: unknown relation {fields[1]!r}"
                ) from None
            subject, subject_sense = _parse_ref(fields[2], lineno)
            object_, object_sense = _parse_ref(fields[3], lineno)
            provenance = fields[4]
            if provenance not in _PROVENANCES:
                raise OntologyParseError(
                    f"{source}: line {lineno}: unknown provenance {provenance!r}"
                )
            evidence = None
            if len(fields) == 7:
                try:
                    evidence = Evidence(fields[5], int(fields[6]))
                except ValueError:
                    raise OntologyParseError(
                        f"{source}: line {lineno}: bad evidence hits {fields[6]!r}"
                    ) from None
            axioms.append(
                canonicalize_axiom(
                    Axiom(relation, subject, object_, subject_sense, object_sense,
                          provenance, evidence)
                )
            )
        else:
            raise OntologyParseError(f"{source}: line {lineno}: unknown record kind {kind!r}")

    merged = []
    for cid, concept in concepts.items():
        cats = categories.pop(cid, frozenset())
        merged.append(Concept(concept.id, concept.label, concept.senses, cats))
    if categories:
        missing = sorted(categories)
        raise OntologyValidationError(f"{source}: G records for undeclared concepts {missing}")
    return Ontology(merged, instances, axioms)


def load_ontology(path: str | Path) -> Ontology:
    path = Path(path)
    return parse_ontology(path.read_text(encoding="utf-8"), source=str(path))


def save_ontology(ontology: Ontology, path: str | Path) -> None:
    Path(path).write_text(ontology.to_text(), encoding="utf-8")
