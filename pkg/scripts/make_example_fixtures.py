#!/usr/bin/env python3
"""Regenerate the worked-example fixtures under fixtures/.

Writes the small general-English ontology, the gazetteer, the replay
snapshot with its hand-picked hit counts, and the example corpus documents.
Output is canonical, so re-running leaves files byte-identical.
"""

from __future__ import annotations

from pathlib import Path

from ontoenrich.hitcounts import SnapshotTable, pair_key
from ontoenrich.ontology import Axiom, Concept, Instance, Ontology, RelationKind, save_ontology

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

# (id, label, sense count); ids are lowercase slugs of the labels
CONCEPTS = [
    ("130", "130", 1),
    ("2006", "2006", 1),
    ("abstraction", "abstraction", 1),
    ("act", "act", 1),
    ("activity", "activity", 1),
    ("arrangement", "arrangement", 1),
    ("artifact", "artifact", 1),
    ("ball", "ball", 1),
    ("beverage", "beverage", 1),
    ("book", "book", 1),
    ("capital", "capital", 1),
    ("capital-city", "capital city", 1),
    ("career", "career", 1),
    ("centre", "centre", 1),
    ("city", "city", 1),
    ("colonial", "colonial", 1),
    ("concept", "concept", 1),
    ("condition", "condition", 1),
    ("core", "core", 1),
    ("diversion", "diversion", 1),
    ("dominant", "dominant", 1),
    ("dutch", "Dutch", 1),
    ("dutch-east-indies", "Dutch East Indies", 1),
    ("east", "East", 1),
    ("east-indies", "East Indies", 1),
    ("economic", "economic", 1),
    ("entity", "entity", 1),
    ("equipment", "equipment", 1),
    ("europe", "Europe", 1),
    ("event", "event", 1),
    ("food", "food", 1),
    ("football", "football", 2),
    ("game-equipment", "game equipment", 1),
    ("group", "group", 1),
    ("hindu", "Hindu", 1),
    ("home", "home", 1),
    ("idea", "idea", 1),
    ("indies", "Indies", 1),
    ("indonesia", "Indonesia", 1),
    ("indonesian", "Indonesian", 1),
    ("instrumentality", "instrumentality", 1),
    ("islamic", "Islamic", 1),
    ("island", "island", 1),
    ("java", "Java", 2),
    ("kingdoms", "kingdoms", 1),
    ("land", "land", 1),
    ("life", "life", 1),
    ("million", "million", 1),
    ("now", "now", 1),
    ("object", "object", 1),
    ("once", "once", 1),
    ("organization", "organization", 7),
    ("plan", "plan", 1),
    ("plays", "plays", 1),
    ("political", "political", 1),
    ("population", "population", 1),
    ("powerful", "powerful", 1),
    ("role", "role", 1),
    ("site", "site", 1),
    ("social-group", "social group", 1),
    ("sport", "sport", 1),
    ("state", "state", 1),
    ("structure", "structure", 1),
    ("sultanates", "sultanates", 1),
    ("unit", "unit", 1),
]

CATEGORIES = {
    "book": frozenset({"noun", "verb"}),
    "organization": frozenset({"noun"}),
    "plays": frozenset({"verb"}),
}

# (parent id, parent sense, child id, child sense)
HYPERNYMY = [
    ("entity", 1, "abstraction", 1),
    ("entity", 1, "event", 1),
    ("entity", 1, "object", 1),
    ("entity", 1, "food", 1),
    ("entity", 1, "state", 1),
    ("abstraction", 1, "group", 1),
    ("abstraction", 1, "idea", 1),
    ("abstraction", 1, "arrangement", 1),
    ("group", 1, "social-group", 1),
    ("group", 1, "unit", 1),
    ("event", 1, "act", 1),
    ("act", 1, "activity", 1),
    ("activity", 1, "diversion", 1),
    ("diversion", 1, "sport", 1),
    ("sport", 1, "football", 1),
    ("object", 1, "artifact", 1),
    ("object", 1, "land", 1),
    ("object", 1, "city", 1),
    ("artifact", 1, "structure", 1),
    ("artifact", 1, "instrumentality", 1),
    ("instrumentality", 1, "equipment", 1),
    ("equipment", 1, "game-equipment", 1),
    ("game-equipment", 1, "ball", 1),
    ("ball", 1, "football", 2),
    ("land", 1, "island", 1),
    ("island", 1, "java", 1),
    ("food", 1, "beverage", 1),
    ("beverage", 1, "java", 2),
    ("idea", 1, "concept", 1),
    ("idea", 1, "plan", 1),
    ("state", 1, "condition", 1),
    ("city", 1, "capital-city", 1),
    # the seven hierarchy positions of "organization"
    ("act", 1, "organization", 1),
    ("social-group", 1, "organization", 2),
    ("unit", 1, "organization", 3),
    ("structure", 1, "organization", 4),
    ("arrangement", 1, "organization", 5),
    ("condition", 1, "organization", 6),
    ("plan", 1, "organization", 7),
]

INSTANCES = [("jakarta", "Jakarta", "city")]

GAZETTEER = [
    ("Harbor Lines Press", "company"),
    ("Meridian Institute", "organization"),
    ("Tide Atlas", "website"),
]

SNAPSHOT_TOTAL = 8_000_000_000

TERM_HITS = {
    "abstraction": 120_000_000,
    "act": 1_100_000_000,
    "activity": 950_000_000,
    "arrangement": 60_000_000,
    "artifact": 90_000_000,
    "ball": 420_000_000,
    "beverage": 50_000_000,
    "capital": 600_000_000,
    "capital city": 85_000_000,
    "career": 450_000_000,
    "city": 1_400_000_000,
    "concept": 380_000_000,
    "condition": 500_000_000,
    "corporate body": 2_000_000,
    "diversion": 45_000_000,
    "entity": 1_300_000_000,
    "equipment": 300_000_000,
    "europe": 700_000_000,
    "event": 1_200_000_000,
    "food": 1_000_000_000,
    "football": 600_000_000,
    "game equipment": 5_000_000,
    "group": 1_500_000_000,
    "hindu-buddhist": 128_000,
    "idea": 420_000_000,
    "indonesia": 200_000_000,
    "indonesian": 80_000_000,
    "instrumentality": 25_000_000,
    "island": 300_000_000,
    "jakarta": 90_000_000,
    "java": 800_000_000,
    "jawa": 500_000,
    "land": 700_000_000,
    "object": 1_250_000_000,
    "organization": 1_000_000_000,
    "plan": 350_000_000,
    "ronaldo": 40_000_000,
    "site": 900_000_000,
    "social group": 30_000_000,
    "sport": 500_000_000,
    "state": 900_000_000,
    "structure": 400_000_000,
    "unit": 800_000_000,
}

PAIR_HITS = {
    ("corporate body", "organization"): 1_500_000,
    ("corporate body", "social group"): 600_000,
    ("corporate body", "group"): 400_000,
    ("jawa", "java"): 480_000,
    ("jawa", "island"): 150_000,
    ("jawa", "indonesia"): 90_000,
    ("hindu-buddhist", "indonesia"): 20_000,
    ("ronaldo", "football"): 20_000_000,
    ("ronaldo", "sport"): 10_000_000,
    ("ronaldo", "europe"): 2_000_000,
    ("ronaldo", "career"): 1_500_000,
}

PATTERN_HITS = {
    "corporate body is an organization": 80_700,
}

JAVA_ARTICLE = """\
Java (Indonesian: Jawa) is a large island of Indonesia. The capital city
Jakarta lies on its northwestern coast. Powerful Hindu-Buddhist kingdoms and
Islamic sultanates once ruled here, and the island later became the core of
the colonial Dutch East Indies. Indonesia now counts a population of 130
million on Java, where economic and political life plays a dominant role.
"""

RONALDO_ARTICLE = """\
Ronaldo plays football in Europe. His career in sport made the footballer a
dominant name.
"""

CORPORATE_BODY_ARTICLE = """\
A corporate body is an organization or a group of persons identified by a
particular name. Such a corporate body acts as an entity.
"""


def build_ontology() -> Ontology:
    concepts = [
        Concept(cid, label, tuple(range(1, n + 1)), CATEGORIES.get(cid, frozenset()))
        for cid, label, n in CONCEPTS
    ]
    instances = [Instance(*fields) for fields in INSTANCES]
    axioms = [
        Axiom(RelationKind.HYPERNYMY, parent, child, ps, cs)
        for parent, ps, child, cs in HYPERNYMY
    ]
    return Ontology(concepts, instances, axioms)


def build_snapshot() -> SnapshotTable:
    pairs = list(TERM_HITS.items())
    pairs += [(pair_key(a, b), count) for (a, b), count in PAIR_HITS.items()]
    pairs += list(PATTERN_HITS.items())
    return SnapshotTable.from_pairs(pairs, SNAPSHOT_TOTAL)


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    save_ontology(build_ontology(), FIXTURES / "mini_ontology.tsv")

    gaz_lines = [f"{surface}\t{kind}" for surface, kind in GAZETTEER]
    (FIXTURES / "gazetteer.tsv").write_text("".join(l + "\n" for l in gaz_lines), "utf-8")

    (FIXTURES / "snapshots").mkdir(exist_ok=True)
    build_snapshot().save(FIXTURES / "snapshots" / "worked_examples.tsv")

    hand_case = SnapshotTable.from_pairs(
        [("alpha", 16), ("beta", 4), (pair_key("alpha", "beta"), 2)], total_docs=64
    )
    hand_case.save(FIXTURES / "snapshots" / "distance_hand_case.tsv")

    for rel_path, text in [
        ("corpus_examples/islands/java.txt", JAVA_ARTICLE),
        ("corpus_examples/sports/ronaldo.txt", RONALDO_ARTICLE),
        ("corpus_corp/organizations/corporate_body.txt", CORPORATE_BODY_ARTICLE),
    ]:
        path = FIXTURES / rel_path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")

    print(f"fixtures written under {FIXTURES}")


if __name__ == "__main__":
    main()
