"""Problem assembly and the consistency, entailment and membership pipelines."""

from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union
import logging

from fowl.core.errors import AnnotationParseError, FowlError
from fowl.logic.ast import (
    Constant, Formula, Predicate, Role, Symbol, TptpProblem, TptpUnit,
    conjunction, free_variables, ordered_symbols, rename_apart, universal_closure,
)
from fowl.logic.clif import parse_clif
from fowl.logic.tptp import emit_formula, parse_tptp_formula
from fowl.owl import model as m
from fowl.owl.annotations import (
    AnnotationProperties, FolAnnotation, FolSyntax, default_annotation_properties,
    extract_fol_annotations, signature_with_labels,
)
from fowl.owl.printer import print_axiom
from fowl.schemas import (
    ClassifiedMembership, ConjectureResult, EntailmentReport, MembershipOutcome, MembershipResult,
    NamingMode, ProverConfig, ProverVerdict, SzsStatus,
)
from fowl.services.aligner import OwlSignature, SignatureMap, build_signature_map, rewrite_formula
from fowl.services.prover import run_prover
from fowl.services.translator import RESERVED_SYMBOLS, translate_axiom, translate_ontology
from fowl.workers.prover_pool import ProverPool

logger = logging.getLogger(__name__)

EXTERNAL_INDIVIDUALS = "urn:fowl:individual:"


@dataclass(frozen=True)
class Assembly:
    problem: TptpProblem
    signature_map: SignatureMap


# Assembly

def parse_annotation(annotation: FolAnnotation, index: int) -> Optional[Formula]:
    """One closed formula per annotation; several CLIF sentences are conjoined"""
    try:
        if annotation.syntax == FolSyntax.TPTP:
            formulas = [parse_tptp_formula(annotation.formula_text)]
        else:
            formulas = parse_clif(annotation.formula_text)
    except FowlError as e:
        raise AnnotationParseError(annotation.subject.value, index, e) from e

    if not formulas:
        logger.warning(f"Annotation #{index} on <{annotation.subject}> holds no sentence")
        return None
    formula = conjunction(rename_apart(formulas))
    if free_variables(formula):
        logger.debug(f"Closing free variables {sorted(free_variables(formula))} of annotation #{index}")
        formula = universal_closure(formula)
    return formula


def _fol_symbols(formulas: Iterable[Formula]) -> List[Symbol]:
    found: Dict[Symbol, None] = {}
    for formula in formulas:
        for symbol in ordered_symbols(formula):
            found.setdefault(symbol)
    return list(found)


def _as_axiom(unit: TptpUnit) -> TptpUnit:
    if unit.role == Role.AXIOM:
        return unit
    logger.warning(f"Extra unit {unit.name} is a {unit.role.value}; used as an axiom")
    return TptpUnit(unit.name, Role.AXIOM, unit.formula)


def _merge_signatures(*signatures: OwlSignature) -> OwlSignature:
    merged: Dict[m.Entity, List[str]] = {}
    for signature in signatures:
        for entity, labels in signature:
            known = merged.setdefault(entity, [])
            known.extend(label for label in labels if label not in known)
    return list(merged.items())


def _rename_unit(unit: TptpUnit, signature_map: SignatureMap, naming: NamingMode) -> TptpUnit:
    return TptpUnit(unit.name, unit.role, rewrite_formula(unit.formula, signature_map, naming))


def assemble(
    doc: m.OntologyDocument,
    annotation_props: Optional[AnnotationProperties] = None,
    extra_problems: Sequence[TptpProblem] = (),
    conjectures: Sequence[Formula] = (),
    naming: NamingMode = NamingMode.IRI,
    owl_only: bool = False,
    extra_signature: OwlSignature = (),
    skip_unsupported: bool = False,
    companions: Sequence[m.OntologyDocument] = (),
) -> Assembly:
    """Merge translation, annotations, extra files and conjectures into one problem.

    Unit order is background, OWL translations, annotations in document
    order, extra files, then conj_<i> units. Every symbol coming from FOL
    text is aligned against the OWL signature through one SignatureMap.
    """
    owl_problem = translate_ontology(doc, skip_unsupported=skip_unsupported, companions=companions)

    annotation_formulas: List[Formula] = []
    if not owl_only:
        properties = annotation_props
        if properties is None or not properties:
            properties = default_annotation_properties(doc)
        if properties:
            for index, annotation in enumerate(extract_fol_annotations(doc, properties)):
                formula = parse_annotation(annotation, index)
                if formula is not None:
                    annotation_formulas.append(formula)

    extra_units = [_as_axiom(unit) for problem in extra_problems for unit in problem]
    fol_formulas = annotation_formulas + [u.formula for u in extra_units] + list(conjectures)

    signature = _merge_signatures(signature_with_labels(doc), extra_signature)
    signature_map = build_signature_map(_fol_symbols(fol_formulas), signature, reserved=RESERVED_SYMBOLS)

    units: List[TptpUnit] = []
    for unit in owl_problem:
        units.append(_rename_unit(unit, signature_map, naming) if naming == NamingMode.READABLE else unit)
    for index, formula in enumerate(annotation_formulas):
        units.append(TptpUnit(f"ann_{index}", Role.AXIOM, rewrite_formula(formula, signature_map, naming)))
    for unit in extra_units:
        units.append(_rename_unit(unit, signature_map, naming))
    for index, formula in enumerate(conjectures):
        units.append(TptpUnit(f"conj_{index}", Role.CONJECTURE, rewrite_formula(formula, signature_map, naming)))

    problem = TptpProblem(tuple(units))
    logger.info(
        f"Assembled problem with {len(problem)} units "
        f"({len(annotation_formulas)} from annotations, {len(extra_units)} extra, {len(conjectures)} conjectures)"
    )
    return Assembly(problem, signature_map)


def assemble_problem(
    doc: m.OntologyDocument,
    annotation_props: Optional[AnnotationProperties] = None,
    extra_problems: Sequence[TptpProblem] = (),
    conjectures: Sequence[Formula] = (),
    naming: NamingMode = NamingMode.IRI,
    owl_only: bool = False,
) -> TptpProblem:
    return assemble(doc, annotation_props, extra_problems, conjectures, naming, owl_only).problem


def externalize(doc: m.OntologyDocument) -> m.OntologyDocument:
    """Add one fresh named individual per class (external consistency)"""
    axioms = list(doc.axioms)
    entities = list(doc.entities)
    for cls in doc.entities_of(m.EntityKind.CLASS):
        instance = m.Iri(f"{EXTERNAL_INDIVIDUALS}{cls.iri.value}_inst")
        entity = m.Entity(m.EntityKind.NAMED_INDIVIDUAL, instance)
        axioms.append(m.Declaration(entity))
        axioms.append(m.ClassAssertion(m.NamedClass(cls.iri), instance))
        entities.append(entity)
    logger.info(f"Externalized {len(entities) - len(doc.entities)} classes")
    return replace(doc, axioms=tuple(axioms), entities=tuple(sorted(entities)))


# Pipelines

@dataclass(frozen=True)
class ProofTask:
    """Premises shared by every conjecture, proved one problem per conjecture"""

    assembly: Assembly
    sources: Tuple[str, ...]
    failed: Tuple[ConjectureResult, ...] = ()

    @property
    def premises(self) -> TptpProblem:
        return TptpProblem(self.assembly.problem.axioms)

    @property
    def conjectures(self) -> Tuple[TptpUnit, ...]:
        return self.assembly.problem.conjectures

    def problems(self) -> List[TptpProblem]:
        return [self.premises.extend([unit]) for unit in self.conjectures]


def run_proof_task(task: ProofTask, config: Optional[ProverConfig] = None, parallelism: int = 1) -> EntailmentReport:
    config = config or ProverConfig.from_settings()
    verdicts = ProverPool(config, parallelism).run_all(task.problems())
    results = [
        ConjectureResult(unit_name=unit.name, source=source, verdict=verdict)
        for unit, source, verdict in zip(task.conjectures, task.sources, verdicts)
    ]
    report = EntailmentReport(per_conjecture=results + list(task.failed))
    logger.info(f"Proved {len(results)} conjectures: {report.summary}")
    return report


def consistency_assembly(
    doc: m.OntologyDocument,
    annotation_props: Optional[AnnotationProperties] = None,
    extra_problems: Sequence[TptpProblem] = (),
    naming: NamingMode = NamingMode.IRI,
    external: bool = False,
    owl_only: bool = False,
) -> Assembly:
    if external:
        doc = externalize(doc)
    return assemble(doc, annotation_props, extra_problems, naming=naming, owl_only=owl_only)


def check_problem_consistency(problem: TptpProblem, config: Optional[ProverConfig] = None) -> ProverVerdict:
    """Satisfiability of an assembled theory.

    Unsatisfiable means inconsistent; only an explicit Satisfiable report
    means consistent.
    """
    config = config or ProverConfig.from_settings()
    verdict = run_prover(problem, config, satisfiability=True)

    # without a conjecture some provers phrase satisfiability as a proof status
    if verdict.status == SzsStatus.THEOREM:
        verdict = verdict.model_copy(update={"status": SzsStatus.UNSATISFIABLE})
    elif verdict.status == SzsStatus.COUNTER_SATISFIABLE:
        verdict = verdict.model_copy(update={"status": SzsStatus.SATISFIABLE})
    logger.info(f"Consistency verdict: {verdict.status.value}")
    return verdict


def check_consistency(
    doc: m.OntologyDocument,
    annotation_props: Optional[AnnotationProperties] = None,
    extra_problems: Sequence[TptpProblem] = (),
    config: Optional[ProverConfig] = None,
    naming: NamingMode = NamingMode.IRI,
    external: bool = False,
    owl_only: bool = False,
) -> ProverVerdict:
    assembly = consistency_assembly(doc, annotation_props, extra_problems, naming, external, owl_only)
    return check_problem_consistency(assembly.problem, config)


def _conjecture_units(doc: m.OntologyDocument) -> Tuple[List[Tuple[Formula, str]], List[ConjectureResult]]:
    translated: List[Tuple[Formula, str]] = []
    failed: List[ConjectureResult] = []
    for axiom in doc.logical_axioms:
        source = print_axiom(axiom)
        try:
            formulas = translate_axiom(axiom)
        except FowlError as e:
            logger.error(f"Could not translate conjecture {source}: {e}")
            failed.append(
                ConjectureResult(
                    unit_name=f"unsupported_{len(failed)}",
                    source=source,
                    verdict=ProverVerdict(status=SzsStatus.ERROR, raw_output=str(e)),
                )
            )
            continue
        if formulas:
            translated.append((conjunction(rename_apart(formulas)), source))
    return translated, failed


def entailment_task(
    premise_doc: m.OntologyDocument,
    conjecture_doc: m.OntologyDocument,
    annotation_props: Optional[AnnotationProperties] = None,
    extra_problems: Sequence[TptpProblem] = (),
    naming: NamingMode = NamingMode.IRI,
    owl_only: bool = False,
) -> ProofTask:
    """One conjecture per logical axiom of conjecture_doc, over the premise theory.

    The conjecture document's literals and signature also shape the
    premise background.
    """
    conjectures, failed = _conjecture_units(conjecture_doc)
    assembly = assemble(
        premise_doc, annotation_props, extra_problems,
        conjectures=[formula for formula, _ in conjectures],
        naming=naming,
        owl_only=owl_only,
        extra_signature=signature_with_labels(conjecture_doc),
        companions=[conjecture_doc],
    )
    return ProofTask(assembly, tuple(source for _, source in conjectures), tuple(failed))


def check_entailment(
    premise_doc: m.OntologyDocument,
    conjecture_doc: m.OntologyDocument,
    annotation_props: Optional[AnnotationProperties] = None,
    config: Optional[ProverConfig] = None,
    extra_problems: Sequence[TptpProblem] = (),
    naming: NamingMode = NamingMode.IRI,
    parallelism: int = 1,
    owl_only: bool = False,
) -> EntailmentReport:
    """Prove each logical axiom of conjecture_doc from premise_doc, one problem per axiom"""
    task = entailment_task(premise_doc, conjecture_doc, annotation_props, extra_problems, naming, owl_only)
    return run_proof_task(task, config, parallelism)


def conjecture_task(
    doc: m.OntologyDocument,
    conjectures: Sequence[Formula],
    annotation_props: Optional[AnnotationProperties] = None,
    extra_problems: Sequence[TptpProblem] = (),
    naming: NamingMode = NamingMode.IRI,
    owl_only: bool = False,
) -> ProofTask:
    assembly = assemble(doc, annotation_props, extra_problems, conjectures, naming, owl_only)
    return ProofTask(assembly, tuple(emit_formula(formula) for formula in conjectures))


def prove_conjectures(
    doc: m.OntologyDocument,
    conjectures: Sequence[Formula],
    annotation_props: Optional[AnnotationProperties] = None,
    extra_problems: Sequence[TptpProblem] = (),
    config: Optional[ProverConfig] = None,
    naming: NamingMode = NamingMode.IRI,
    parallelism: int = 1,
    owl_only: bool = False,
) -> EntailmentReport:
    """Prove FOL conjectures from a (possibly annotated) ontology, one problem each"""
    task = conjecture_task(doc, conjectures, annotation_props, extra_problems, naming, owl_only)
    return run_proof_task(task, config, parallelism)


def batch_membership(
    problem_base: TptpProblem,
    instances: Sequence[Union[Constant, str]],
    class_predicates: Sequence[str],
    config: Optional[ProverConfig] = None,
    parallelism: int = 1,
) -> List[MembershipResult]:
    """One proof attempt of class(instance) per pair, in instance-major order"""
    config = config or ProverConfig.from_settings()
    constants = [i if isinstance(i, Constant) else Constant(i) for i in instances]

    pairs: List[Tuple[Constant, str]] = []
    problems: List[TptpProblem] = []
    for i, instance in enumerate(constants):
        for j, cls in enumerate(class_predicates):
            conjecture = TptpUnit(f"member_{i}_{j}", Role.CONJECTURE, Predicate(cls, (instance,)))
            pairs.append((instance, cls))
            problems.append(problem_base.extend([conjecture]))

    verdicts = ProverPool(config, parallelism).run_all(problems)
    results = []
    for (instance, cls), verdict in zip(pairs, verdicts):
        logger.debug(f"{cls}({instance.name}): {verdict.status.value}")
        results.append(MembershipResult(instance=instance.name, class_name=cls, verdict=verdict))
    return results


def classify_membership(
    results: Iterable[MembershipResult],
    expected: Set[Tuple[str, str]],
) -> List[ClassifiedMembership]:
    """Label each attempt against the (instance, class) pairs the source ontology asserts"""
    classified = []
    for result in results:
        asserted = (result.instance, result.class_name) in expected
        status = result.verdict.status
        if status == SzsStatus.THEOREM:
            outcome = MembershipOutcome.EXPECTED_PROOF if asserted else MembershipOutcome.UNEXPECTED_PROOF
        elif status == SzsStatus.COUNTER_SATISFIABLE:
            outcome = (
                MembershipOutcome.UNEXPECTED_COUNTER_EXAMPLE if asserted
                else MembershipOutcome.EXPECTED_COUNTER_EXAMPLE
            )
        else:
            outcome = MembershipOutcome.UNKNOWN
        classified.append(ClassifiedMembership(result=result, outcome=outcome))
    return classified


def count_outcomes(classified: Iterable[ClassifiedMembership]) -> Mapping[str, int]:
    counts = {outcome.value: 0 for outcome in MembershipOutcome}
    for item in classified:
        counts[item.outcome.value] += 1
    return counts
