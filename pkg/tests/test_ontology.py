import pytest
from hypothesis import given, strategies as st

from ontoenrich.ontology import (
    Axiom,
    Concept,
    Evidence,
    Instance,
    Ontology,
    OntologyParseError,
    OntologyValidationError,
    RelationKind,
    UnknownConceptError,
    load_ontology,
    parse_ontology,
    save_ontology,
)

TWO_CONCEPTS = """\
# two concepts, one with many senses
C\tconcept\tconcept\t1
C\torganization\torganization\t7
"""

SMALL = """\
C\tcity\tcity\t1
C\tentity\tentity\t1
C\tisland\tisland\t1
C\tjava\tJava\t2
C\tland\tland\t1
I\tjakarta\tJakarta\tcity
A\thypernymy\tentity\tland\toriginal
A\thypernymy\tisland\tjava#1\toriginal
A\thypernymy\tland\tisland\toriginal
"""


@pytest.fixture
def small():
    return parse_ontology(SMALL)


def test_load_two_concepts(tmp_path):
    path = tmp_path / "mini.tsv"
    path.write_text(TWO_CONCEPTS, encoding="utf-8")
    onto = load_ontology(path)
    assert len(onto.concepts) == 2
    assert onto.concepts["organization"].senses == tuple(range(1, 8))


def test_load_empty_file(tmp_path):
    path = tmp_path / "empty.tsv"
    path.write_text("", encoding="utf-8")
    onto = load_ontology(path)
    assert not onto.concepts and not onto.instances and not onto.axioms


def test_dangling_axiom_reference_rejected():
    text = SMALL + "A\trelated-to\tjava\tatlantis\toriginal\n"
    with pytest.raises(OntologyValidationError):
        parse_ontology(text)


def test_malformed_line_reports_lineno():
    with pytest.raises(OntologyParseError, match="line 2"):
        parse_ontology("C\ta\ta\t1\nC\tb\tb\n")


def test_unknown_relation_rejected():
    with pytest.raises(OntologyParseError, match="unknown relation"):
        parse_ontology("C\ta\ta\t1\nC\tb\tb\t1\nA\tfriend-of\ta\tb\toriginal\n")


def test_duplicate_concept_id_rejected():
    with pytest.raises(OntologyValidationError, match="duplicate"):
        parse_ontology("C\ta\ta\t1\nC\ta\tother\t1\n")


def test_contains_term_case_and_whitespace(small):
    assert small.contains_term("Java").id == "java"
    assert small.contains_term("JAVA").id == "java"
    assert small.contains_term("jawa") is None
    assert small.contains_term("") is None


def test_contains_term_matches_instances(small):
    match = small.contains_term("jakarta")
    assert match.kind == "instance"
    assert match.id == "jakarta"


def test_semantic_paths_single_sense(small):
    paths = small.semantic_paths_from("island")
    assert len(paths) == 1
    assert paths[0].concept_ids() == ("island", "land", "entity")


def test_semantic_paths_root_concept(small):
    paths = small.semantic_paths_from("entity")
    assert len(paths) == 1
    assert paths[0].steps == (("entity", 1),)


def test_semantic_paths_seven_senses():
    lines = ["C\torganization\torganization\t7", "C\tgroup\tgroup\t1"]
    for sense in range(1, 8):
        lines.append(f"A\thypernymy\tgroup\torganization#{sense}\toriginal")
    onto = parse_ontology("\n".join(lines) + "\n")
    paths = onto.semantic_paths_from("organization")
    assert len(paths) == 7
    assert all(p.steps[-1] == ("group", 1) for p in paths)


def test_semantic_paths_unknown_concept(small):
    with pytest.raises(UnknownConceptError):
        small.semantic_paths_from("atlantis")


def test_add_axiom_idempotent(small):
    jawa = small.with_additions(concepts=[Concept("jawa", "jawa")])
    axiom = Axiom(RelationKind.RELATED_TO, "jawa", "java", object_sense=1)
    once = jawa.add_axiom(axiom)
    twice = once.add_axiom(axiom)
    assert len(once.axioms) == len(jawa.axioms) + 1
    assert twice.to_text() == once.to_text()


def test_add_axiom_enriched_provenance(small):
    corp = small.with_additions(concepts=[Concept("corporate-body", "corporate body")])
    enriched = corp.add_axiom(
        Axiom(
            RelationKind.HYPONYMY,
            "corporate-body",
            "java",
            object_sense=2,
            provenance="enriched",
            evidence=Evidence("hypo-isa", 80700),
        )
    )
    # stored in the hypernymy direction, mirrored on query
    assert enriched.has_axiom(
        RelationKind.HYPONYMY, "corporate-body", "java", object_sense=2
    )
    assert enriched.has_axiom(
        RelationKind.HYPERNYMY, "java", "corporate-body", subject_sense=2
    )
    stored = [a for a in enriched.axioms if a.provenance == "enriched"]
    assert stored[0].relation is RelationKind.HYPERNYMY
    assert stored[0].evidence == Evidence("hypo-isa", 80700)


def test_add_axiom_unknown_subject(small):
    with pytest.raises(OntologyValidationError):
        small.add_axiom(Axiom(RelationKind.RELATED_TO, "ghost", "java"))


def test_sense_out_of_range_rejected(small):
    with pytest.raises(OntologyValidationError):
        small.add_axiom(Axiom(RelationKind.RELATED_TO, "island", "java", object_sense=5))


def test_self_loop_rejected_for_non_synonymy(small):
    with pytest.raises(OntologyValidationError):
        small.add_axiom(Axiom(RelationKind.RELATED_TO, "island", "island"))


def test_hypernymy_cycle_rejected():
    text = (
        "C\ta\ta\t1\nC\tb\tb\t1\n"
        "A\thypernymy\ta\tb\toriginal\nA\thypernymy\tb\ta\toriginal\n"
    )
    with pytest.raises(OntologyValidationError, match="cycle"):
        parse_ontology(text)


def test_holonymy_normalized_to_meronymy():
    onto = parse_ontology(
        "C\twheel\twheel\t1\nC\tcar\tcar\t1\nA\tholonymy\tcar\twheel\toriginal\n"
    )
    assert onto.axioms[0].relation is RelationKind.MERONYMY
    assert onto.has_axiom(RelationKind.HOLONYMY, "car", "wheel")
    assert onto.has_axiom(RelationKind.MERONYMY, "wheel", "car")


def test_symmetric_query_for_related_to(small):
    jawa = small.with_additions(
        concepts=[Concept("jawa", "jawa")],
        axioms=[Axiom(RelationKind.RELATED_TO, "jawa", "java", object_sense=1)],
    )
    assert jawa.has_axiom(RelationKind.RELATED_TO, "java", "jawa", subject_sense=1)


def test_round_trip_is_byte_identical(tmp_path, small):
    first = tmp_path / "first.tsv"
    second = tmp_path / "second.tsv"
    save_ontology(small, first)
    save_ontology(load_ontology(first), second)
    assert first.read_bytes() == second.read_bytes()


def test_bundled_fixture_is_canonical(tmp_path, mini_ontology_path):
    out = tmp_path / "resaved.tsv"
    save_ontology(load_ontology(mini_ontology_path), out)
    assert out.read_bytes() == mini_ontology_path.read_bytes()


def test_duplicate_axiom_lines_collapse():
    text = SMALL + "A\trelated-to\tisland\tjava#1\toriginal\n" * 2
    onto = parse_ontology(text)
    related = [a for a in onto.axioms if a.relation is RelationKind.RELATED_TO]
    assert len(related) == 1


def test_categories_round_trip(tmp_path):
    text = "C\tbook\tbook\t1\nG\tbook\tnoun,verb\n"
    onto = parse_ontology(text)
    assert onto.concepts["book"].categories == frozenset({"noun", "verb"})
    path = tmp_path / "o.tsv"
    save_ontology(onto, path)
    assert "G\tbook\tnoun,verb" in path.read_text()


_IDENT = st.text(alphabet="abcdefgh", min_size=1, max_size=4)


@st.composite
def ontologies(draw):
    ids = draw(st.lists(_IDENT, min_size=2, max_size=6, unique=True))
    concepts = [Concept(i, i, tuple(range(1, draw(st.integers(1, 3)) + 1))) for i in ids]
    onto = Ontology(concepts)
    # chain a few hypernymy links without creating cycles: parent earlier in list
    axioms = []
    for idx in range(1, len(concepts)):
        if draw(st.booleans()):
            parent = concepts[draw(st.integers(0, idx - 1))]
            child = concepts[idx]
            axioms.append(
                Axiom(
                    RelationKind.HYPERNYMY,
                    parent.id,
                    child.id,
                    subject_sense=draw(st.sampled_from(parent.senses)),
                    object_sense=draw(st.sampled_from(child.senses)),
                )
            )
    return onto.with_additions(axioms=axioms)


@given(ontologies())
def test_property_save_load_fixpoint(onto):
    text = onto.to_text()
    assert parse_ontology(text).to_text() == text


@given(ontologies(), st.integers(1, 3))
def test_property_add_axiom_idempotent(onto, times):
    ids = sorted(onto.concepts)
    axiom = Axiom(RelationKind.RELATED_TO, ids[0], ids[-1])
    if ids[0] == ids[-1]:
        return
    enriched = onto
    for _ in range(times):
        enriched = enriched.add_axiom(axiom)
    assert enriched.to_text() == onto.add_axiom(axiom).to_text()


@given(ontologies())
def test_property_paths_terminate(onto):
    for cid in onto.concepts:
        for path in onto.semantic_paths_from(cid):
            assert len(path.steps) <= len(onto.concepts) * 3
            assert path.steps[0][0] == cid
