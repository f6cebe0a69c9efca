import pytest

from fowl.core.errors import AnnotationParseError
from fowl.logic.ast import (
    Constant, Forall, Implies, Not, Predicate, Role, TptpProblem, TptpUnit, Variable, bound_variable_occurrences,
    free_variables, ordered_symbols,
)
from fowl.logic.tptp import emit_tptp
from fowl.owl import model as m
from fowl.owl.annotations import FolAnnotation, FolSyntax
from fowl.owl.parser import parse_ontology
from fowl.schemas import MembershipOutcome, NamingMode, SzsStatus
from fowl.services.model_finder import is_satisfiable
from fowl.services.molgen import (
    class_predicate, instances_and_classes, molgen_problem, parse_expected_memberships, read_molgen_file,
)
from fowl.services.reasoner import (
    EXTERNAL_INDIVIDUALS, assemble, assemble_problem, batch_membership, check_consistency, check_entailment,
    classify_membership, count_outcomes, entailment_task, externalize, parse_annotation, prove_conjectures,
)
from fowl.services.translator import translate_ontology
from tests.conftest import load_fixture, read_fixture

MIXED = "http://example.org/mixed#"
X = Variable("X")


def theory(problem):
    return [unit.formula for unit in problem]


# Assembly

def test_unit_order():
    """Test background, OWL axioms, annotations, extras and conjectures come in that order"""
    extra = TptpProblem((
        TptpUnit("extra_fact", Role.AXIOM, Predicate("q", (Constant("a"),))),
        TptpUnit("extra_goal", Role.CONJECTURE, Predicate("r", (Constant("a"),))),
    ))
    problem = assemble_problem(
        load_fixture("mixed_annotations.ofn"),
        extra_problems=[extra],
        conjectures=[Predicate("pet", (Constant("tom"),))],
    )
    assert list(problem.names) == [
        "bg_nothing", "bg_thing", "bg_top_op", "bg_bottom_op", "bg_object_domain",
        "ax_0_SubClassOf", "ann_0", "ann_1", "ann_2", "extra_fact", "extra_goal", "conj_0",
    ]
    # conjectures in extra files are used as axioms
    assert [u.name for u in problem.conjectures] == ["conj_0"]
    assert problem.conjectures[0].formula == Predicate(MIXED + "Pet", (Constant("tom"),))


def test_annotations_are_aligned_to_the_ontology():
    """Test label and local-name matches rewrite annotation symbols to IRIs"""
    problem = assemble_problem(load_fixture("mixed_annotations.ofn"))
    units = {u.name: u.formula for u in problem}
    assert units["ann_1"] == Forall(("X",), Implies(Predicate(MIXED + "Dog", (X,)), Predicate(MIXED + "Pet", (X,))))
    assert {s.name for s in ordered_symbols(units["ann_0"])} == {MIXED + "Cat", MIXED + "Pet"}


def test_assembly_is_deterministic():
    """Test two assemblies of the same ontology emit identical text"""
    first = emit_tptp(assemble_problem(load_fixture("mixed_annotations.ofn")))
    second = emit_tptp(assemble_problem(load_fixture("mixed_annotations.ofn")))
    assert first == second


def test_readable_names():
    """Test readable naming renames OWL and annotation units alike"""
    problem = assemble_problem(load_fixture("mixed_annotations.ofn"), naming=NamingMode.READABLE)
    units = {u.name: u.formula for u in problem}
    assert {s.name for s in ordered_symbols(units["ax_0_SubClassOf"])} == {"cat", "pet"}
    assert {s.name for s in ordered_symbols(units["ann_1"])} == {"dog", "pet"}


def test_owl_only_matches_plain_translation():
    """Test ignoring annotations gives the bare OWL translation"""
    doc = load_fixture("mixed_annotations.ofn")
    assert assemble_problem(doc, owl_only=True) == translate_ontology(doc)
    assert assemble_problem(load_fixture("fish.ofn")) == translate_ontology(load_fixture("fish.ofn"))


def test_explicit_annotation_properties():
    """Test only the requested property is read"""
    doc = load_fixture("mixed_annotations.ofn")
    problem = assemble_problem(doc, {m.Iri("http://example.org/fowl#tptp"): FolSyntax.TPTP})
    assert [n for n in problem.names if n.startswith("ann_")] == ["ann_0"]


def test_annotation_parse_error_names_the_annotation():
    """Test a broken annotation reports its subject and index"""
    doc = parse_ontology(
        "Prefix(:=<http://example.org/broken#>)\n"
        "Prefix(fowl:=<http://example.org/fowl#>)\n"
        "Ontology(\n"
        '  AnnotationAssertion(fowl:clif :A "(forall (x) (a x))")\n'
        '  AnnotationAssertion(fowl:clif :B "(forall (x) (b x)")\n'
        ")"
    )
    with pytest.raises(AnnotationParseError) as e:
        assemble_problem(doc)
    assert e.value.subject == "http://example.org/broken#B"
    assert e.value.index == 1


def test_parse_annotation_closes_free_variables():
    """Test free variables of an annotation are universally closed"""
    annotation = FolAnnotation(m.Iri(MIXED + "Cat"), FolSyntax.TPTP, "p(X) => q(X)")
    assert parse_annotation(annotation, 0) == Forall(
        ("X",), Implies(Predicate("p", (X,)), Predicate("q", (X,)))
    )


def test_alignment_report_data():
    """Test the assembly exposes the symbol mapping it used"""
    assembly = assemble(load_fixture("bfo_proper_part.ofn"))
    assert [s.name for s in assembly.signature_map.matched] == ["proper part of"]


def test_externalize():
    """Test one fresh individual per class"""
    doc = load_fixture("obi_pattern.ofn")
    external = externalize(doc)
    classes = doc.entities_of(m.EntityKind.CLASS)
    individuals = external.entities_of(m.EntityKind.NAMED_INDIVIDUAL)
    assert len(individuals) == len(classes) == 6
    assert all(e.iri.value.startswith(EXTERNAL_INDIVIDUALS) for e in individuals)
    assertions = [a for a in external.axioms if isinstance(a, m.ClassAssertion)]
    assert len(assertions) == 6
    assert len(external.axioms) == len(doc.axioms) + 12


# Satisfiability by model search

def test_obi_pattern_is_satisfiable():
    """Test the design pattern alone has a finite model"""
    assert is_satisfiable(theory(assemble_problem(load_fixture("obi_pattern.ofn"))), max_size=2)


def test_obi_pattern_instance_is_unsatisfiable():
    """Test an instance of the recording class makes the theory inconsistent"""
    assert not is_satisfiable(theory(assemble_problem(load_fixture("obi_pattern_instance.ofn"))), max_size=2)


def test_obi_pattern_is_externally_inconsistent():
    """Test externalizing exposes the unsatisfiable class"""
    external = externalize(load_fixture("obi_pattern.ofn"))
    assert not is_satisfiable(theory(assemble_problem(external)), max_size=2)


def test_annotations_matter_for_obi():
    """Test the OWL part alone stays satisfiable with the instance"""
    doc = load_fixture("obi_pattern_instance.ofn")
    assert is_satisfiable(theory(assemble_problem(doc, owl_only=True)), max_size=2)


# Pipelines with fake provers

@pytest.mark.parametrize("reported,expected", [
    ("Theorem", SzsStatus.UNSATISFIABLE),
    ("Unsatisfiable", SzsStatus.UNSATISFIABLE),
    ("CounterSatisfiable", SzsStatus.SATISFIABLE),
    ("Satisfiable", SzsStatus.SATISFIABLE),
    ("Timeout", SzsStatus.TIMEOUT),
    ("GaveUp", SzsStatus.GAVE_UP),
])
def test_consistency_status_mapping(szs_prover, reported, expected):
    """Test proof statuses are read as satisfiability statuses"""
    assert check_consistency(load_fixture("fish.ofn"), config=szs_prover(reported)).status == expected


def test_entailment_one_problem_per_axiom(fake_prover):
    """Test each conjecture axiom is proved in its own problem"""
    body = 'grep -q "fof(conj_0, conjecture" "$1" && echo "% SZS status Theorem for $1"'
    report = check_entailment(
        load_fixture("kgemt", "01_premise.ofn"), load_fixture("kgemt", "01_conjecture.ofn"),
        config=fake_prover(body),
    )
    assert len(report.per_conjecture) == 1
    result = report.per_conjecture[0]
    assert result.unit_name == "conj_0"
    assert result.source.startswith("ObjectPropertyAssertion(")
    assert report.entailed
    assert report.summary["Theorem"] == 1


def test_conjecture_axiom_binds_each_variable_once():
    """Test the formulas of an n-ary conjecture axiom are renamed apart before conjoining"""
    conjecture = parse_ontology("Prefix(:=<http://example.org/t#>)\nOntology(EquivalentClasses(:A :B :C))")
    task = entailment_task(load_fixture("empty.ofn"), conjecture)
    (unit,) = task.conjectures
    bound = bound_variable_occurrences(unit.formula)
    assert len(bound) == 3 and len(set(bound)) == 3
    assert free_variables(unit.formula) == frozenset()
    assert len(task.sources) == 1 and task.sources[0].startswith("EquivalentClasses(")


def test_conjecture_literals_reach_the_background():
    """Test literals that only the conjecture mentions are distinct data values"""
    premise = parse_ontology(
        "Prefix(:=<http://example.org/t#>)\n"
        "Ontology(\n"
        "  DataPropertyAssertion(:age :a \"1\"^^xsd:integer)\n"
        "  FunctionalDataProperty(:age)\n"
        ")"
    )
    conjecture = parse_ontology(
        "Prefix(:=<http://example.org/t#>)\n"
        "Ontology(ClassAssertion(ObjectComplementOf(DataHasValue(:age \"2\"^^xsd:integer)) :a))"
    )
    (problem,) = entailment_task(premise, conjecture).problems()
    goal = problem.conjectures[0].formula
    # no model of the premises refutes the goal
    assert not is_satisfiable(theory(TptpProblem(problem.axioms)) + [Not(goal)], max_size=3)


def test_conjecture_data_switches_on_the_data_domain():
    """Test a data conjecture over an object-only premise gets the two-sorted background"""
    premise = parse_ontology("Prefix(:=<http://example.org/t#>)\nOntology(ClassAssertion(:Person :a))")
    conjecture = parse_ontology(
        "Prefix(:=<http://example.org/t#>)\nOntology(DataPropertyAssertion(:age :a \"1\"^^xsd:integer))"
    )
    names = entailment_task(premise, conjecture).premises.names
    assert "bg_object_domain" not in names
    assert "bg_domains_disjoint" in names and "bg_literal_0" in names
    # conjecture axioms shape the background but are not premises
    assert [n for n in names if n.startswith("ax_")] == ["ax_0_ClassAssertion"]


def test_escaped_clif_annotation_parses():
    """Test escaped double quotes in an annotation become a quoted CLIF name"""
    annotation = FolAnnotation(
        m.Iri(MIXED + "Cat"), FolSyntax.CLIF,
        r'(forall (x) (not (\"proper part of\" x x)))', '(forall (x) (not ("proper part of" x x)))',
    )
    formula = parse_annotation(annotation, 0)
    assert [s.name for s in ordered_symbols(formula)] == ["proper part of"]


def test_entailment_is_vacuous_without_conjectures(szs_prover):
    """Test a conjecture ontology with no logical axioms is entailed"""
    report = check_entailment(load_fixture("fish.ofn"), load_fixture("empty.ofn"), config=szs_prover("Error"))
    assert report.per_conjecture == []
    assert report.entailed


def test_untranslatable_conjecture_is_an_error(szs_prover):
    """Test an unsupported conjecture axiom is reported, not fatal"""
    conjecture = parse_ontology(
        "Prefix(:=<http://example.org/t#>)\n"
        "Ontology(SubClassOf(:A rdfs:Resource) SubClassOf(:A :B))"
    )
    report = check_entailment(load_fixture("fish.ofn"), conjecture, config=szs_prover("Theorem"))
    assert [r.verdict.status for r in report.per_conjecture] == [SzsStatus.THEOREM, SzsStatus.ERROR]
    assert report.per_conjecture[1].unit_name == "unsupported_0"
    assert not report.entailed


def test_prove_conjectures_keeps_order(fake_prover):
    """Test FOL conjectures come back in order with their source text"""
    body = 'if grep -q "conjecture, p(a)" "$1"; then echo "% SZS status Theorem"; ' \
           'else echo "% SZS status CounterSatisfiable"; fi'
    report = prove_conjectures(
        load_fixture("empty.ofn"),
        [Predicate("q", (Constant("a"),)), Predicate("p", (Constant("a"),))],
        extra_problems=[TptpProblem((TptpUnit("fact", Role.AXIOM, Predicate("p", (Constant("a"),))),))],
        config=fake_prover(body),
        parallelism=2,
    )
    assert [(r.unit_name, r.source, r.verdict.status) for r in report.per_conjecture] == [
        ("conj_0", "q(a)", SzsStatus.COUNTER_SATISFIABLE),
        ("conj_1", "p(a)", SzsStatus.THEOREM),
    ]


def test_batch_membership(fake_prover):
    """Test one attempt per pair, instance-major, then classified against expectations"""
    body = 'if grep -q "conjecture, chebi10(m1)" "$1"; then echo "% SZS status Theorem"; ' \
           'else echo "% SZS status CounterSatisfiable"; fi'
    results = batch_membership(TptpProblem(), ["m1", Constant("m2")], ["chebi10", "chebi20"], fake_prover(body))
    assert [(r.instance, r.class_name, r.verdict.status) for r in results] == [
        ("m1", "chebi10", SzsStatus.THEOREM),
        ("m1", "chebi20", SzsStatus.COUNTER_SATISFIABLE),
        ("m2", "chebi10", SzsStatus.COUNTER_SATISFIABLE),
        ("m2", "chebi20", SzsStatus.COUNTER_SATISFIABLE),
    ]

    classified = classify_membership(results, {("m1", "chebi10"), ("m2", "chebi20")})
    assert [c.outcome for c in classified] == [
        MembershipOutcome.EXPECTED_PROOF,
        MembershipOutcome.EXPECTED_COUNTER_EXAMPLE,
        MembershipOutcome.EXPECTED_COUNTER_EXAMPLE,
        MembershipOutcome.UNEXPECTED_COUNTER_EXAMPLE,
    ]
    assert classified[0].to_record()["outcome"] == "expected proof"
    assert count_outcomes(classified) == {
        "expected proof": 1,
        "unexpected proof": 0,
        "expected counter-example": 2,
        "unexpected counter-example": 1,
        "unknown": 0,
    }


def test_batch_membership_empty(szs_prover):
    """Test no instances means no attempts"""
    assert batch_membership(TptpProblem(), [], ["chebi10"], szs_prover("Theorem")) == []


def test_batch_membership_order_ignores_parallelism(fake_prover):
    """Test results come back in the same order with one or several workers"""
    body = 'if grep -q "chebi20(m1)" "$1"; then sleep 1; echo "% SZS status Theorem"; ' \
           'else echo "% SZS status CounterSatisfiable"; fi'
    config = fake_prover(body)

    def run(parallelism):
        results = batch_membership(TptpProblem(), ["m1", "m2"], ["chebi10", "chebi20"], config, parallelism)
        return [(r.instance, r.class_name, r.verdict.status) for r in results]

    assert run(1) == run(3)


def test_unknown_membership_outcome(szs_prover):
    """Test timeouts are classified as unknown"""
    results = batch_membership(TptpProblem(), ["m1"], ["chebi10"], szs_prover("Timeout"))
    assert classify_membership(results, set())[0].outcome == MembershipOutcome.UNKNOWN


# Real prover suites

KGEMT = [f"{n:02d}" for n in range(1, 17)]
SCHNEIDER = [f"{n:02d}" for n in range(1, 13)]


@pytest.mark.prover
@pytest.mark.parametrize("case", KGEMT)
def test_kgemt_entailments(real_prover, case):
    """Test the mereotopology premises entail each conjecture"""
    report = check_entailment(
        load_fixture("kgemt", f"{case}_premise.ofn"), load_fixture("kgemt", f"{case}_conjecture.ofn"),
        config=real_prover,
    )
    assert report.entailed, report.per_conjecture


@pytest.mark.prover
@pytest.mark.parametrize("case", SCHNEIDER)
def test_beyond_owl_entailments(real_prover, case):
    """Test entailments that need the FOL annotations"""
    report = check_entailment(
        load_fixture("schneider", f"{case}_premise.ofn"), load_fixture("schneider", f"{case}_conjecture.ofn"),
        config=real_prover,
    )
    assert report.entailed, report.per_conjecture


@pytest.mark.prover
def test_entailment_survives_extra_premises(real_prover):
    """Test adding premise axioms keeps a proved entailment proved"""
    premise = load_fixture("kgemt", "04_premise.ofn")
    conjecture = load_fixture("kgemt", "04_conjecture.ofn")
    extra = TptpProblem((TptpUnit("extra_fact", Role.AXIOM, Predicate("q", (Constant("a"),))),))
    assert check_entailment(premise, conjecture, config=real_prover).entailed
    assert check_entailment(premise, conjecture, config=real_prover, extra_problems=[extra]).entailed


@pytest.mark.prover
def test_obi_consistency(real_prover):
    """Test the prover agrees with the model search on the design pattern"""
    assert check_consistency(load_fixture("obi_pattern_instance.ofn"), config=real_prover).status == \
        SzsStatus.UNSATISFIABLE
    assert check_consistency(load_fixture("obi_pattern.ofn"), config=real_prover, external=True).status == \
        SzsStatus.UNSATISFIABLE


@pytest.mark.prover
def test_nitrile_membership(real_prover):
    """Test the asserted nitrile membership is proved"""
    schemes, errors = read_molgen_file(read_fixture("molgen", "chebi_small.tsv"))
    assert errors == []
    instances, classes = instances_and_classes(schemes)
    results = batch_membership(
        molgen_problem(schemes), [c for _, c in instances], [class_predicate(c) for c in classes], real_prover,
    )
    expected = parse_expected_memberships(read_fixture("molgen", "expected.txt"))
    classified = classify_membership(results, expected)
    proved = [(c.result.instance, c.result.class_name) for c in classified if c.result.verdict.status == SzsStatus.THEOREM]
    assert ("m38472", "chebi18379") in proved
    assert not any(c.outcome == MembershipOutcome.UNEXPECTED_PROOF for c in classified)
