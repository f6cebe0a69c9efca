import pytest

from fowl.core.errors import (
    OwlSyntaxError, PunningError, UndeclaredEntityError, UnknownConstructError, UnsupportedSyntaxError,
)
from fowl.owl import model as m
from fowl.owl.parser import ParseMode, parse_ontology
from fowl.owl.printer import print_ontology
from tests.conftest import read_fixture

FISH = "http://example.org/fish#"


def test_parse_single_subclass_axiom():
    """Test the fish/animal ontology yields one SubClassOf axiom"""
    doc = parse_ontology("Prefix(:=<http://example.org/fish#>)\nOntology(SubClassOf(:Fish :Animal))")
    assert doc.axioms == (m.SubClassOf(m.NamedClass(m.Iri(FISH + "Fish")), m.NamedClass(m.Iri(FISH + "Animal"))),)
    assert doc.ontology_iri is None


def test_parse_empty_ontology():
    """Test an empty ontology has no axioms and no entities"""
    doc = parse_ontology("Ontology()")
    assert doc.axioms == ()
    assert doc.entities == ()
    assert doc.imports == ()


def test_declarations_and_entities():
    """Test declared entities end up in the signature with their kinds"""
    doc = parse_ontology(read_fixture("fish.ofn"))
    assert doc.ontology_iri == m.Iri("http://example.org/fish")
    assert len(doc.logical_axioms) == 1
    assert doc.kind_of(m.Iri(FISH + "Fish")) == m.EntityKind.CLASS
    assert {e.kind for e in doc.entities} == {m.EntityKind.CLASS}


def test_print_parse_round_trip():
    """Test parse, print and parse again gives an equal document"""
    doc = parse_ontology(read_fixture("three_axioms.ofn"))
    assert len(doc.logical_axioms) == 3
    again = parse_ontology(print_ontology(doc))
    assert again == doc
    assert again.axioms == doc.axioms


def test_round_trip_keeps_annotation_text_byte_exact():
    """Test embedded FOL text survives the printer unchanged"""
    doc = parse_ontology(read_fixture("obi_pattern.ofn"))
    again = parse_ontology(print_ontology(doc))
    texts = [ax.value.lexical for ax in again.annotation_assertions if "clif" in ax.property.value]
    assert texts == [
        '(forall (x) (if ("independent continuant" x) (exists (r) (and ("spatial region" r) ("located in" x r)))))'
    ]


def test_class_expressions():
    """Test nested class constructors map to the typed model"""
    doc = parse_ontology(read_fixture("three_axioms.ofn"))
    sub_class_of, assertion, data = doc.logical_axioms
    assert isinstance(sub_class_of.sup, m.ObjectSomeValuesFrom)
    assert isinstance(sub_class_of.sup.filler, m.ObjectIntersectionOf)
    assert isinstance(sub_class_of.sup.filler.operands[1], m.ObjectComplementOf)
    assert assertion.cls == m.ObjectMinCardinality(
        2, m.Iri("http://example.org/three#r"), m.NamedClass(m.Iri("http://example.org/three#B"))
    )
    assert data.target == m.Literal("42", m.XSD_INTEGER)


def test_literals():
    """Test plain, typed and language-tagged literals"""
    doc = parse_ontology(
        'Prefix(:=<http://example.org/l#>)\n'
        'Ontology(\n'
        '  AnnotationAssertion(rdfs:label :A "plain")\n'
        '  AnnotationAssertion(rdfs:label :A "chat"@fr)\n'
        '  AnnotationAssertion(rdfs:comment :A "say \\"hi\\""^^xsd:string)\n'
        ')'
    )
    values = [ax.value for ax in doc.annotation_assertions]
    assert values[0] == m.Literal("plain")
    assert values[1] == m.Literal("chat", m.RDF_LANG_STRING, "fr")
    assert values[2].lexical == 'say "hi"'


def test_inverse_and_chain():
    """Test ObjectInverseOf and property chains"""
    doc = parse_ontology(read_fixture("kgemt", "04_premise.ofn"))
    chain = [ax for ax in doc.logical_axioms if isinstance(ax, m.SubObjectPropertyOf)][0]
    assert isinstance(chain.sub, m.ObjectPropertyChain)
    assert isinstance(chain.sub.properties[0], m.ObjectInverseOf)


def test_axiom_annotations_are_dropped():
    """Test annotations on axioms do not change the axiom"""
    doc = parse_ontology(
        'Prefix(:=<http://example.org/a#>)\n'
        'Ontology(SubClassOf(Annotation(rdfs:comment "note") :A :B))'
    )
    assert len(doc.axioms) == 1
    assert isinstance(doc.axioms[0], m.SubClassOf)


def test_unknown_construct_is_named():
    """Test unknown constructs are reported by name with a position"""
    with pytest.raises(UnknownConstructError) as exc:
        parse_ontology('Prefix(:=<http://example.org/a#>)\nOntology(\n  DatatypeDefinition(:d xsd:integer)\n)')
    assert exc.value.construct == "DatatypeDefinition"
    assert exc.value.line == 3


def test_undeclared_prefix():
    """Test a prefixed name with an unknown prefix fails"""
    with pytest.raises(OwlSyntaxError) as exc:
        parse_ontology("Ontology(SubClassOf(ex:A ex:B))")
    assert "ex:" in str(exc.value)


def test_syntax_error_has_position():
    """Test malformed input reports line and column"""
    with pytest.raises(OwlSyntaxError) as exc:
        parse_ontology("Ontology(\n  SubClassOf(<http://a/A> <http://a/B>) }\n)")
    assert exc.value.line == 2
    assert "line 2" in str(exc.value)


def test_punning_is_rejected():
    """Test one IRI used as class and object property"""
    with pytest.raises(PunningError):
        parse_ontology(
            'Prefix(:=<http://example.org/p#>)\n'
            'Ontology(SubClassOf(:A ObjectSomeValuesFrom(:A :B)))'
        )


def test_strict_mode_requires_declarations():
    """Test strict mode rejects undeclared entities, lenient mode infers them"""
    text = 'Prefix(:=<http://example.org/s#>)\nOntology(Declaration(Class(:A)) SubClassOf(:A :B))'
    with pytest.raises(UndeclaredEntityError) as exc:
        parse_ontology(text, ParseMode.STRICT)
    assert exc.value.iri == "http://example.org/s#B"

    doc = parse_ontology(text, ParseMode.LENIENT)
    assert doc.kind_of(m.Iri("http://example.org/s#B")) == m.EntityKind.CLASS
    assert len([ax for ax in doc.axioms if isinstance(ax, m.Declaration)]) == 1


@pytest.mark.parametrize("source", [
    '<?xml version="1.0"?>\n<rdf:RDF></rdf:RDF>',
    "@prefix : <http://example.org/> .\n:A a owl:Class .",
    "Prefix: : <http://example.org/>\nClass: A",
])
def test_other_syntaxes_are_rejected(source):
    """Test RDF/XML, Turtle and Manchester input are refused up front"""
    with pytest.raises(UnsupportedSyntaxError):
        parse_ontology(source)


def test_imports_are_recorded_not_resolved():
    """Test Import(...) lands in doc.imports"""
    doc = parse_ontology(read_fixture("imports", "root.ofn"))
    assert doc.imports == (
        m.Iri("http://example.org/diamond/left"),
        m.Iri("http://example.org/diamond/right"),
    )
    assert len(doc.logical_axioms) == 1


def test_iri_local_name():
    """Test local names split on '#' or '/'"""
    assert m.Iri("http://purl.obolibrary.org/obo/BFO_0000175").local_name == "BFO_0000175"
    assert m.Iri("http://example.org/fish#Fish").local_name == "Fish"
    assert m.Iri("urn:x").local_name == "urn:x"
