"""Pretty-printer back to functional-style syntax, full IRIs throughout."""

from typing import Union

from fowl.owl import model as m


def _iri(iri: m.Iri) -> str:
    return f"<{iri.value}>"


def _string(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def print_literal(literal: m.Literal) -> str:
    if literal.lang is not None:
        return f"{_string(literal.lexical)}@{literal.lang}"
    return f"{_string(literal.lexical)}^^{_iri(literal.datatype)}"


def print_object_property(prop: m.ObjectPropertyExpression) -> str:
    if isinstance(prop, m.ObjectInverseOf):
        return f"ObjectInverseOf({_iri(prop.property)})"
    return _iri(prop)


def print_data_range(data_range: m.DataRange) -> str:
    if isinstance(data_range, m.NamedDatatype):
        return _iri(data_range.iri)
    return f"DataOneOf({' '.join(print_literal(lit) for lit in data_range.literals)})"


def print_class_expression(ce: m.ClassExpression) -> str:
    if isinstance(ce, m.NamedClass):
        return _iri(ce.iri)
    if isinstance(ce, (m.ObjectIntersectionOf, m.ObjectUnionOf)):
        return f"{type(ce).__name__}({' '.join(print_class_expression(op) for op in ce.operands)})"
    if isinstance(ce, m.ObjectComplementOf):
        return f"ObjectComplementOf({print_class_expression(ce.operand)})"
    if isinstance(ce, (m.ObjectSomeValuesFrom, m.ObjectAllValuesFrom)):
        return f"{type(ce).__name__}({print_object_property(ce.property)} {print_class_expression(ce.filler)})"
    if isinstance(ce, m.ObjectHasValue):
        return f"ObjectHasValue({print_object_property(ce.property)} {_iri(ce.individual)})"
    if isinstance(ce, m.ObjectHasSelf):
        return f"ObjectHasSelf({print_object_property(ce.property)})"
    if isinstance(ce, (m.ObjectMinCardinality, m.ObjectMaxCardinality, m.ObjectExactCardinality)):
        parts = [str(ce.cardinality), print_object_property(ce.property)]
        if ce.filler is not None:
            parts.append(print_class_expression(ce.filler))
        return f"{type(ce).__name__}({' '.join(parts)})"
    if isinstance(ce, m.ObjectOneOf):
        return f"ObjectOneOf({' '.join(_iri(i) for i in ce.individuals)})"
    if isinstance(ce, (m.DataSomeValuesFrom, m.DataAllValuesFrom)):
        return f"{type(ce).__name__}({_iri(ce.property)} {print_data_range(ce.range)})"
    if isinstance(ce, m.DataHasValue):
        return f"DataHasValue({_iri(ce.property)} {print_literal(ce.literal)})"
    raise TypeError(f"Unknown class expression {ce!r}")


def _args(*parts: Union[str, m.Iri]) -> str:
    return " ".join(_iri(p) if isinstance(p, m.Iri) else p for p in parts)


def print_axiom(axiom: m.Axiom) -> str:
    name = axiom.kind
    ce = print_class_expression
    op = print_object_property

    if isinstance(axiom, m.Declaration):
        return f"Declaration({axiom.entity.kind.value}({_iri(axiom.entity.iri)}))"
    if isinstance(axiom, m.AnnotationAssertion):
        value = print_literal(axiom.value) if isinstance(axiom.value, m.Literal) else _iri(axiom.value)
        return f"AnnotationAssertion({_args(axiom.property, axiom.subject, value)})"
    if isinstance(axiom, m.SubClassOf):
        return f"SubClassOf({ce(axiom.sub)} {ce(axiom.sup)})"
    if isinstance(axiom, (m.EquivalentClasses, m.DisjointClasses)):
        return f"{name}({' '.join(ce(o) for o in axiom.operands)})"
    if isinstance(axiom, m.DisjointUnion):
        return f"DisjointUnion({_iri(axiom.defined)} {' '.join(ce(o) for o in axiom.operands)})"
    if isinstance(axiom, m.SubObjectPropertyOf):
        if isinstance(axiom.sub, m.ObjectPropertyChain):
            sub = f"ObjectPropertyChain({' '.join(op(p) for p in axiom.sub.properties)})"
        else:
            sub = op(axiom.sub)
        return f"SubObjectPropertyOf({sub} {op(axiom.sup)})"
    if isinstance(axiom, (m.EquivalentObjectProperties, m.DisjointObjectProperties)):
        return f"{name}({' '.join(op(p) for p in axiom.operands)})"
    if isinstance(axiom, m.InverseObjectProperties):
        return f"InverseObjectProperties({op(axiom.first)} {op(axiom.second)})"
    if isinstance(axiom, m.ObjectPropertyDomain):
        return f"ObjectPropertyDomain({op(axiom.property)} {ce(axiom.domain)})"
    if isinstance(axiom, m.ObjectPropertyRange):
        return f"ObjectPropertyRange({op(axiom.property)} {ce(axiom.range)})"
    if isinstance(axiom, m._ObjectPropertyCharacteristic):
        return f"{name}({op(axiom.property)})"
    if isinstance(axiom, m.SubDataPropertyOf):
        return f"SubDataPropertyOf({_args(axiom.sub, axiom.sup)})"
    if isinstance(axiom, m.DataPropertyDomain):
        return f"DataPropertyDomain({_iri(axiom.property)} {ce(axiom.domain)})"
    if isinstance(axiom, m.DataPropertyRange):
        return f"DataPropertyRange({_iri(axiom.property)} {print_data_range(axiom.range)})"
    if isinstance(axiom, m.FunctionalDataProperty):
        return f"FunctionalDataProperty({_iri(axiom.property)})"
    if isinstance(axiom, m.ClassAssertion):
        return f"ClassAssertion({ce(axiom.cls)} {_iri(axiom.individual)})"
    if isinstance(axiom, (m.ObjectPropertyAssertion, m.NegativeObjectPropertyAssertion)):
        return f"{name}({op(axiom.property)} {_args(axiom.source, axiom.target)})"
    if isinstance(axiom, m.DataPropertyAssertion):
        return f"DataPropertyAssertion({_args(axiom.property, axiom.source)} {print_literal(axiom.target)})"
    if isinstance(axiom, (m.SameIndividual, m.DifferentIndividuals)):
        return f"{name}({_args(*axiom.individuals)})"
    raise TypeError(f"Unknown axiom {axiom!r}")


def print_ontology(doc: m.OntologyDocument) -> str:
    """Functional-style text that parses back to an equal document"""
    lines = []
    header = []
    if doc.ontology_iri is not None:
        header.append(_iri(doc.ontology_iri))
    lines.append(f"Ontology({' '.join(header)}")
    for target in doc.imports:
        lines.append(f"Import({_iri(target)})")
    for axiom in doc.axioms:
        lines.append(print_axiom(axiom))
    lines.append(")")
    return "\n".join(lines) + "\n"
