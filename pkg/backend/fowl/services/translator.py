"""Direct-semantics translation of OWL axioms into first-order formulas."""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging

from fowl.core.errors import UnsupportedConstructError
from fowl.logic.ast import (
    And, Constant, Equality, Exists, Forall, Formula, Iff, Implies, Not, Or,
    Predicate, Role, Term, TptpProblem, TptpUnit, TrueFormula, Variable, conjunction, disjunction,
)
from fowl.owl import model as m
from fowl.owl.parser import is_builtin

logger = logging.getLogger(__name__)

THING = "thing"
NOTHING = "nothing"
TOP_OP = "top_op"
BOTTOM_OP = "bottom_op"
IOBJ = "iobj"
IDATA = "idata"

RESERVED_SYMBOLS = frozenset({THING, NOTHING, TOP_OP, BOTTOM_OP, IOBJ, IDATA})

_RESERVED_CLASSES = {m.OWL_THING: THING, m.OWL_NOTHING: NOTHING}
_RESERVED_PROPERTIES = {m.OWL_TOP_OBJECT_PROPERTY: TOP_OP, m.OWL_BOTTOM_OBJECT_PROPERTY: BOTTOM_OP}

X, Y, Z = "X", "Y", "Z"


@dataclass
class TranslationContext:
    """Per-axiom state: the fresh-variable counter.

    ``literals`` is shared across the axioms of one ontology so the
    background theory can mention every literal constant.
    """

    counter: int = 0
    literals: Dict[m.Literal, None] = field(default_factory=dict)
    uses_data_domain: bool = False

    def fresh(self) -> str:
        name = f"X{self.counter}"
        self.counter += 1
        return name


# Signature symbols

def class_symbol(iri: m.Iri) -> str:
    if iri in _RESERVED_CLASSES:
        return _RESERVED_CLASSES[iri]
    if is_builtin(iri):
        raise UnsupportedConstructError(f"<{iri}>", "reserved vocabulary used as a class")
    return iri.value


def property_symbol(iri: m.Iri) -> str:
    if iri in _RESERVED_PROPERTIES:
        return _RESERVED_PROPERTIES[iri]
    if is_builtin(iri):
        raise UnsupportedConstructError(f"<{iri}>", "reserved vocabulary used as a property")
    return iri.value


def datatype_symbol(iri: m.Iri) -> str:
    if iri == m.RDFS_LITERAL:
        return IDATA
    if iri.value.startswith((m.OWL, m.RDFS)):
        raise UnsupportedConstructError(f"<{iri}>", "unsupported datatype")
    return iri.value


def literal_name(literal: m.Literal) -> str:
    """Constant naming a literal: lit_<datatype local name>_<lexical form>[@lang]"""
    name = f"lit_{literal.datatype.local_name}_{literal.lexical}"
    if literal.lang is not None:
        name = f"{name}@{literal.lang}"
    return name


def individual(iri: m.Iri) -> Constant:
    return Constant(iri.value)


def literal_constant(literal: m.Literal, ctx: TranslationContext) -> Constant:
    ctx.literals.setdefault(literal)
    ctx.uses_data_domain = True
    return Constant(literal_name(literal))


def property_atom(prop: m.ObjectPropertyExpression, subject: Term, target: Term) -> Predicate:
    if isinstance(prop, m.ObjectInverseOf):
        return Predicate(property_symbol(prop.property), (target, subject))
    return Predicate(property_symbol(prop), (subject, target))


def data_property_atom(prop: m.Iri, subject: Term, target: Term, ctx: TranslationContext) -> Predicate:
    ctx.uses_data_domain = True
    return Predicate(property_symbol(prop), (subject, target))


# Expressions

def _var(value) -> Term:
    return Variable(value) if isinstance(value, str) else value


def translate_data_range(data_range: m.DataRange, var, ctx: TranslationContext) -> Formula:
    term = _var(var)
    ctx.uses_data_domain = True
    if isinstance(data_range, m.NamedDatatype):
        return Predicate(datatype_symbol(data_range.iri), (term,))
    if isinstance(data_range, m.DataOneOf):
        return disjunction(Equality(term, literal_constant(lit, ctx)) for lit in data_range.literals)
    raise UnsupportedConstructError(type(data_range).__name__)


def _successors(prop, term: Term, filler: Optional[m.ClassExpression], variables, ctx) -> List[Formula]:
    items: List[Formula] = []
    for name in variables:
        items.append(property_atom(prop, term, Variable(name)))
        if filler is not None:
            items.append(translate_class_expression(filler, name, ctx))
    return items


def translate_class_expression(ce: m.ClassExpression, var, ctx: TranslationContext) -> Formula:
    """[ce] at var, where var is a variable name or a ground term"""
    term = _var(var)

    if isinstance(ce, m.NamedClass):
        return Predicate(class_symbol(ce.iri), (term,))
    if isinstance(ce, m.ObjectIntersectionOf):
        return And(tuple(translate_class_expression(op, term, ctx) for op in ce.operands))
    if isinstance(ce, m.ObjectUnionOf):
        return Or(tuple(translate_class_expression(op, term, ctx) for op in ce.operands))
    if isinstance(ce, m.ObjectComplementOf):
        return Not(translate_class_expression(ce.operand, term, ctx))
    if isinstance(ce, m.ObjectSomeValuesFrom):
        y = ctx.fresh()
        return Exists((y,), And((property_atom(ce.property, term, Variable(y)),
                                 translate_class_expression(ce.filler, y, ctx))))
    if isinstance(ce, m.ObjectAllValuesFrom):
        y = ctx.fresh()
        return Forall((y,), Implies(property_atom(ce.property, term, Variable(y)),
                                    translate_class_expression(ce.filler, y, ctx)))
    if isinstance(ce, m.ObjectHasValue):
        return property_atom(ce.property, term, individual(ce.individual))
    if isinstance(ce, m.ObjectHasSelf):
        return property_atom(ce.property, term, term)
    if isinstance(ce, m.ObjectMinCardinality):
        return _at_least(ce.cardinality, ce.property, term, ce.filler, ctx)
    if isinstance(ce, m.ObjectMaxCardinality):
        return _at_most(ce.cardinality, ce.property, term, ce.filler, ctx)
    if isinstance(ce, m.ObjectExactCardinality):
        if ce.cardinality == 0:
            return _at_most(0, ce.property, term, ce.filler, ctx)
        return And((
            _at_least(ce.cardinality, ce.property, term, ce.filler, ctx),
            _at_most(ce.cardinality, ce.property, term, ce.filler, ctx),
        ))
    if isinstance(ce, m.ObjectOneOf):
        return disjunction(Equality(term, individual(i)) for i in ce.individuals)
    if isinstance(ce, m.DataSomeValuesFrom):
        y = ctx.fresh()
        return Exists((y,), And((data_property_atom(ce.property, term, Variable(y), ctx),
                                 translate_data_range(ce.range, y, ctx))))
    if isinstance(ce, m.DataAllValuesFrom):
        y = ctx.fresh()
        return Forall((y,), Implies(data_property_atom(ce.property, term, Variable(y), ctx),
                                    translate_data_range(ce.range, y, ctx)))
    if isinstance(ce, m.DataHasValue):
        return data_property_atom(ce.property, term, literal_constant(ce.literal, ctx), ctx)
    raise UnsupportedConstructError(type(ce).__name__)


def _at_least(n: int, prop, term: Term, filler, ctx: TranslationContext) -> Formula:
    if n == 0:
        return TrueFormula()
    variables = tuple(ctx.fresh() for _ in range(n))
    items = _successors(prop, term, filler, variables, ctx)
    items += [Not(Equality(Variable(a), Variable(b))) for a, b in combinations(variables, 2)]
    return Exists(variables, conjunction(items))


def _at_most(n: int, prop, term: Term, filler, ctx: TranslationContext) -> Formula:
    variables = tuple(ctx.fresh() for _ in range(n + 1))
    premise = conjunction(_successors(prop, term, filler, variables, ctx))
    if n == 0:
        return Forall(variables, Not(premise))
    equalities = disjunction(Equality(Variable(a), Variable(b)) for a, b in combinations(variables, 2))
    return Forall(variables, Implies(premise, equalities))


# Axioms

def _pairs(items):
    return combinations(items, 2)


def translate_axiom(axiom: m.Axiom, ctx: Optional[TranslationContext] = None) -> List[Formula]:
    """Closed formulas expressing axiom; declarations and annotations give none"""
    ctx = ctx or TranslationContext()
    x, y, z = Variable(X), Variable(Y), Variable(Z)
    ce = translate_class_expression

    if not axiom.is_logical:
        return []
    if isinstance(axiom, m.SubClassOf):
        return [Forall((X,), Implies(ce(axiom.sub, X, ctx), ce(axiom.sup, X, ctx)))]
    if isinstance(axiom, m.EquivalentClasses):
        return [Forall((X,), Iff(ce(a, X, ctx), ce(b, X, ctx))) for a, b in _pairs(axiom.operands)]
    if isinstance(axiom, m.DisjointClasses):
        return [Forall((X,), Not(And((ce(a, X, ctx), ce(b, X, ctx))))) for a, b in _pairs(axiom.operands)]
    if isinstance(axiom, m.DisjointUnion):
        union = disjunction(ce(op, X, ctx) for op in axiom.operands)
        formulas: List[Formula] = [Forall((X,), Iff(Predicate(class_symbol(axiom.defined), (x,)), union))]
        formulas += [Forall((X,), Not(And((ce(a, X, ctx), ce(b, X, ctx))))) for a, b in _pairs(axiom.operands)]
        return formulas
    if isinstance(axiom, m.SubObjectPropertyOf):
        if isinstance(axiom.sub, m.ObjectPropertyChain):
            return [_chain(axiom.sub.properties, axiom.sup, ctx)]
        return [Forall((X, Y), Implies(property_atom(axiom.sub, x, y), property_atom(axiom.sup, x, y)))]
    if isinstance(axiom, m.EquivalentObjectProperties):
        return [Forall((X, Y), Iff(property_atom(a, x, y), property_atom(b, x, y)))
                for a, b in _pairs(axiom.operands)]
    if isinstance(axiom, m.DisjointObjectProperties):
        return [Forall((X, Y), Not(And((property_atom(a, x, y), property_atom(b, x, y)))))
                for a, b in _pairs(axiom.operands)]
    if isinstance(axiom, m.InverseObjectProperties):
        return [Forall((X, Y), Iff(property_atom(axiom.first, x, y), property_atom(axiom.second, y, x)))]
    if isinstance(axiom, m.ObjectPropertyDomain):
        return [Forall((X, Y), Implies(property_atom(axiom.property, x, y), ce(axiom.domain, X, ctx)))]
    if isinstance(axiom, m.ObjectPropertyRange):
        return [Forall((X, Y), Implies(property_atom(axiom.property, x, y), ce(axiom.range, Y, ctx)))]
    if isinstance(axiom, m.FunctionalObjectProperty):
        r = axiom.property
        return [Forall((X, Y, Z), Implies(And((property_atom(r, x, y), property_atom(r, x, z))), Equality(y, z)))]
    if isinstance(axiom, m.InverseFunctionalObjectProperty):
        r = axiom.property
        return [Forall((X, Y, Z), Implies(And((property_atom(r, y, x), property_atom(r, z, x))), Equality(y, z)))]
    if isinstance(axiom, m.ReflexiveObjectProperty):
        return [Forall((X,), Implies(Predicate(IOBJ, (x,)), property_atom(axiom.property, x, x)))]
    if isinstance(axiom, m.IrreflexiveObjectProperty):
        return [Forall((X,), Not(property_atom(axiom.property, x, x)))]
    if isinstance(axiom, m.SymmetricObjectProperty):
        r = axiom.property
        return [Forall((X, Y), Implies(property_atom(r, x, y), property_atom(r, y, x)))]
    if isinstance(axiom, m.AsymmetricObjectProperty):
        r = axiom.property
        return [Forall((X, Y), Implies(property_atom(r, x, y), Not(property_atom(r, y, x))))]
    if isinstance(axiom, m.TransitiveObjectProperty):
        r = axiom.property
        return [Forall((X, Y, Z), Implies(And((property_atom(r, x, y), property_atom(r, y, z))),
                                          property_atom(r, x, z)))]
    if isinstance(axiom, m.SubDataPropertyOf):
        return [Forall((X, Y), Implies(data_property_atom(axiom.sub, x, y, ctx),
                                       data_property_atom(axiom.sup, x, y, ctx)))]
    if isinstance(axiom, m.DataPropertyDomain):
        return [Forall((X, Y), Implies(data_property_atom(axiom.property, x, y, ctx), ce(axiom.domain, X, ctx)))]
    if isinstance(axiom, m.DataPropertyRange):
        return [Forall((X, Y), Implies(data_property_atom(axiom.property, x, y, ctx),
                                       translate_data_range(axiom.range, Y, ctx)))]
    if isinstance(axiom, m.FunctionalDataProperty):
        p = axiom.property
        return [Forall((X, Y, Z), Implies(And((data_property_atom(p, x, y, ctx), data_property_atom(p, x, z, ctx))),
                                          Equality(y, z)))]
    if isinstance(axiom, m.ClassAssertion):
        return [ce(axiom.cls, individual(axiom.individual), ctx)]
    if isinstance(axiom, m.ObjectPropertyAssertion):
        return [property_atom(axiom.property, individual(axiom.source), individual(axiom.target))]
    if isinstance(axiom, m.NegativeObjectPropertyAssertion):
        return [Not(property_atom(axiom.property, individual(axiom.source), individual(axiom.target)))]
    if isinstance(axiom, m.DataPropertyAssertion):
        return [data_property_atom(axiom.property, individual(axiom.source),
                                   literal_constant(axiom.target, ctx), ctx)]
    if isinstance(axiom, m.SameIndividual):
        first = individual(axiom.individuals[0])
        return [Equality(first, individual(other)) for other in axiom.individuals[1:]]
    if isinstance(axiom, m.DifferentIndividuals):
        return [Not(Equality(individual(a), individual(b))) for a, b in _pairs(axiom.individuals)]
    raise UnsupportedConstructError(axiom.kind)


def _chain(chain: Tuple[m.ObjectPropertyExpression, ...], sup: m.ObjectPropertyExpression,
           ctx: TranslationContext) -> Formula:
    links = [ctx.fresh() for _ in range(len(chain) - 1)]
    path = [X] + links + [Y]
    atoms = [property_atom(prop, Variable(path[i]), Variable(path[i + 1])) for i, prop in enumerate(chain)]
    return Forall(tuple(path), Implies(conjunction(atoms), property_atom(sup, Variable(X), Variable(Y))))


# Background theory

@dataclass(frozen=True)
class BackgroundTheory:
    units: Tuple[TptpUnit, ...]


def _axiom(name: str, formula: Formula) -> TptpUnit:
    return TptpUnit(name, Role.AXIOM, formula)


def background_theory(
    uses_data_domain: bool,
    individuals: Iterable[m.Iri] = (),
    literals: Iterable[m.Literal] = (),
    datatypes: Iterable[m.Iri] = (),
    object_properties: Iterable[m.Iri] = (),
    data_properties: Iterable[m.Iri] = (),
) -> BackgroundTheory:
    """Fixed assumptions of the direct semantics.

    Object and data values live in disjoint domains only when the ontology
    uses the data side at all; otherwise every element is an object.
    """
    x, y = Variable(X), Variable(Y)
    iobj = lambda t: Predicate(IOBJ, (t,))
    idata = lambda t: Predicate(IDATA, (t,))

    units = [
        _axiom("bg_nothing", Forall((X,), Not(Predicate(NOTHING, (x,))))),
        _axiom("bg_thing", Forall((X,), Iff(Predicate(THING, (x,)), iobj(x)))),
        _axiom("bg_top_op", Forall((X, Y), Iff(Predicate(TOP_OP, (x, y)), And((iobj(x), iobj(y)))))),
        _axiom("bg_bottom_op", Forall((X, Y), Not(Predicate(BOTTOM_OP, (x, y))))),
    ]
    if not uses_data_domain:
        units.append(_axiom("bg_object_domain", Forall((X,), iobj(x))))
        return BackgroundTheory(tuple(units))

    units.append(_axiom("bg_domains_disjoint", Forall((X,), Not(And((iobj(x), idata(x)))))))
    units.append(_axiom("bg_domains_cover", Forall((X,), Or((iobj(x), idata(x))))))

    for n, iri in enumerate(sorted(set(individuals))):
        units.append(_axiom(f"bg_individual_{n}", iobj(individual(iri))))

    literals = sorted(set(literals), key=lambda lit: (lit.datatype.value, lit.lexical, lit.lang or ""))
    datatypes = sorted(({lit.datatype for lit in literals} | set(datatypes)) - {m.RDFS_LITERAL})
    for n, literal in enumerate(literals):
        constant = Constant(literal_name(literal))
        guards = [idata(constant)]
        if literal.datatype != m.RDFS_LITERAL:
            guards.append(Predicate(datatype_symbol(literal.datatype), (constant,)))
        units.append(_axiom(f"bg_literal_{n}", conjunction(guards)))

    for n, datatype in enumerate(datatypes):
        units.append(_axiom(f"bg_datatype_{n}", Forall((X,), Implies(Predicate(datatype_symbol(datatype), (x,)),
                                                                     idata(x)))))
        same_type = [Constant(literal_name(lit)) for lit in literals if lit.datatype == datatype]
        inequalities = [Not(Equality(a, b)) for a, b in combinations(same_type, 2)]
        if inequalities:
            units.append(_axiom(f"bg_distinct_{n}", conjunction(inequalities)))

    for n, iri in enumerate(sorted(set(object_properties))):
        r = Predicate(property_symbol(iri), (x, y))
        units.append(_axiom(f"bg_object_property_{n}", Forall((X, Y), Implies(r, And((iobj(x), iobj(y)))))))
    for n, iri in enumerate(sorted(set(data_properties))):
        p = Predicate(property_symbol(iri), (x, y))
        units.append(_axiom(f"bg_data_property_{n}", Forall((X, Y), Implies(p, And((iobj(x), idata(y)))))))

    return BackgroundTheory(tuple(units))


def _iris(docs: Sequence[m.OntologyDocument], kind: m.EntityKind) -> List[m.Iri]:
    return [e.iri for doc in docs for e in doc.entities_of(kind)]


def translate_ontology(
    doc: m.OntologyDocument,
    skip_unsupported: bool = False,
    companions: Sequence[m.OntologyDocument] = (),
) -> TptpProblem:
    """Background units followed by one ax_<n>_<Kind> unit per translated formula.

    ``companions`` are documents whose axioms are translated elsewhere (the
    conjecture side of an entailment check); their literals and signature
    still shape the background theory, but none of their axioms is emitted.
    """
    literals: Dict[m.Literal, None] = {}
    docs = [doc, *companions]
    uses_data_domain = bool(_iris(docs, m.EntityKind.DATA_PROPERTY) or _iris(docs, m.EntityKind.DATATYPE))

    translated: List[TptpUnit] = []
    for axiom in doc.logical_axioms:
        ctx = TranslationContext(literals=literals)
        try:
            formulas = translate_axiom(axiom, ctx)
        except UnsupportedConstructError as e:
            if not skip_unsupported:
                raise
            logger.warning(f"Skipped axiom: {e}")
            continue
        uses_data_domain = uses_data_domain or ctx.uses_data_domain
        for formula in formulas:
            translated.append(TptpUnit(f"ax_{len(translated)}_{axiom.kind}", Role.AXIOM, formula))

    for companion in companions:
        for axiom in companion.logical_axioms:
            ctx = TranslationContext(literals=literals)
            try:
                translate_axiom(axiom, ctx)
            except UnsupportedConstructError:
                continue
            uses_data_domain = uses_data_domain or ctx.uses_data_domain

    background = background_theory(
        uses_data_domain,
        individuals=_iris(docs, m.EntityKind.NAMED_INDIVIDUAL),
        literals=literals,
        datatypes=_iris(docs, m.EntityKind.DATATYPE),
        object_properties=_iris(docs, m.EntityKind.OBJECT_PROPERTY),
        data_properties=_iris(docs, m.EntityKind.DATA_PROPERTY),
    )
    logger.info(f"Translated {len(translated)} formulas with {len(background.units)} background units")
    return TptpProblem(background.units + tuple(translated))
