"""Typed model of the OWL 2 constructs the toolkit understands."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple, Union
import re

from fowl.core.errors import InvalidIriError

_WHITESPACE = re.compile(r"\s")


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        if not self.value:
            raise InvalidIriError("IRI must not be empty")
        if _WHITESPACE.search(self.value):
            raise InvalidIriError(f"IRI must not contain whitespace: {self.value!r}")

    @property
    def local_name(self) -> str:
        """Text after the last '#' or '/'"""
        cut = max(self.value.rfind("#"), self.value.rfind("/"))
        return self.value[cut + 1:] if cut >= 0 else self.value

    def __str__(self) -> str:
        return self.value


OWL = "http://www.w3.org/2002/07/owl#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"

STANDARD_PREFIXES = {"owl:": OWL, "rdf:": RDF, "rdfs:": RDFS, "xsd:": XSD}

OWL_THING = Iri(OWL + "Thing")
OWL_NOTHING = Iri(OWL + "Nothing")
OWL_TOP_OBJECT_PROPERTY = Iri(OWL + "topObjectProperty")
OWL_BOTTOM_OBJECT_PROPERTY = Iri(OWL + "bottomObjectProperty")
RDFS_LABEL = Iri(RDFS + "label")
RDFS_LITERAL = Iri(RDFS + "Literal")
XSD_STRING = Iri(XSD + "string")
XSD_INTEGER = Iri(XSD + "integer")
XSD_DECIMAL = Iri(XSD + "decimal")
XSD_BOOLEAN = Iri(XSD + "boolean")
RDF_PLAIN_LITERAL = Iri(RDF + "PlainLiteral")
RDF_LANG_STRING = Iri(RDF + "langString")

SUPPORTED_DATATYPES = (XSD_STRING, XSD_INTEGER, XSD_DECIMAL, XSD_BOOLEAN)


class EntityKind(str, Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    DATA_PROPERTY = "DataProperty"
    NAMED_INDIVIDUAL = "NamedIndividual"
    ANNOTATION_PROPERTY = "AnnotationProperty"
    DATATYPE = "Datatype"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class Entity:
    kind: EntityKind
    iri: Iri


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: Iri = XSD_STRING
    lang: Optional[str] = None
    # source text between the quotes, escapes intact
    raw: Optional[str] = field(default=None, compare=False, repr=False)


# Properties

@dataclass(frozen=True)
class ObjectInverseOf:
    property: Iri


ObjectPropertyExpression = Union[Iri, ObjectInverseOf]


# Class expressions

class ClassExpression:
    __slots__ = ()


@dataclass(frozen=True)
class NamedClass(ClassExpression):
    iri: Iri


@dataclass(frozen=True)
class ObjectIntersectionOf(ClassExpression):
    operands: Tuple[ClassExpression, ...]

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError("ObjectIntersectionOf needs at least two operands")


@dataclass(frozen=True)
class ObjectUnionOf(ClassExpression):
    operands: Tuple[ClassExpression, ...]

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError("ObjectUnionOf needs at least two operands")


@dataclass(frozen=True)
class ObjectComplementOf(ClassExpression):
    operand: ClassExpression


@dataclass(frozen=True)
class ObjectSomeValuesFrom(ClassExpression):
    property: ObjectPropertyExpression
    filler: ClassExpression


@dataclass(frozen=True)
class ObjectAllValuesFrom(ClassExpression):
    property: ObjectPropertyExpression
    filler: ClassExpression


@dataclass(frozen=True)
class ObjectHasValue(ClassExpression):
    property: ObjectPropertyExpression
    individual: Iri


@dataclass(frozen=True)
class ObjectHasSelf(ClassExpression):
    property: ObjectPropertyExpression


@dataclass(frozen=True)
class _Cardinality(ClassExpression):
    cardinality: int
    property: ObjectPropertyExpression
    filler: Optional[ClassExpression] = None

    def __post_init__(self):
        if self.cardinality < 0:
            raise ValueError("cardinality must be non-negative")


@dataclass(frozen=True)
class ObjectMinCardinality(_Cardinality):
    pass


@dataclass(frozen=True)
class ObjectMaxCardinality(_Cardinality):
    pass


@dataclass(frozen=True)
class ObjectExactCardinality(_Cardinality):
    pass


@dataclass(frozen=True)
class ObjectOneOf(ClassExpression):
    individuals: Tuple[Iri, ...]


# Data ranges

class DataRange:
    __slots__ = ()


@dataclass(frozen=True)
class NamedDatatype(DataRange):
    iri: Iri


@dataclass(frozen=True)
class DataOneOf(DataRange):
    literals: Tuple[Literal, ...]


@dataclass(frozen=True)
class DataSomeValuesFrom(ClassExpression):
    property: Iri
    range: DataRange


@dataclass(frozen=True)
class DataAllValuesFrom(ClassExpression):
    property: Iri
    range: DataRange


@dataclass(frozen=True)
class DataHasValue(ClassExpression):
    property: Iri
    literal: Literal


# Axioms

class Axiom:
    __slots__ = ()

    @property
    def kind(self) -> str:
        return type(self).__name__

    @property
    def is_logical(self) -> bool:
        return not isinstance(self, (Declaration, AnnotationAssertion))


@dataclass(frozen=True)
class Declaration(Axiom):
    entity: Entity


@dataclass(frozen=True)
class AnnotationAssertion(Axiom):
    property: Iri
    subject: Iri
    value: Union[Literal, Iri]


@dataclass(frozen=True)
class SubClassOf(Axiom):
    sub: ClassExpression
    sup: ClassExpression


@dataclass(frozen=True)
class EquivalentClasses(Axiom):
    operands: Tuple[ClassExpression, ...]


@dataclass(frozen=True)
class DisjointClasses(Axiom):
    operands: Tuple[ClassExpression, ...]


@dataclass(frozen=True)
class DisjointUnion(Axiom):
    defined: Iri
    operands: Tuple[ClassExpression, ...]


@dataclass(frozen=True)
class ObjectPropertyChain:
    properties: Tuple[ObjectPropertyExpression, ...]


@dataclass(frozen=True)
class SubObjectPropertyOf(Axiom):
    sub: Union[ObjectPropertyExpression, ObjectPropertyChain]
    sup: ObjectPropertyExpression


@dataclass(frozen=True)
class EquivalentObjectProperties(Axiom):
    operands: Tuple[ObjectPropertyExpression, ...]


@dataclass(frozen=True)
class DisjointObjectProperties(Axiom):
    operands: Tuple[ObjectPropertyExpression, ...]


@dataclass(frozen=True)
class InverseObjectProperties(Axiom):
    first: ObjectPropertyExpression
    second: ObjectPropertyExpression


@dataclass(frozen=True)
class ObjectPropertyDomain(Axiom):
    property: ObjectPropertyExpression
    domain: ClassExpression


@dataclass(frozen=True)
class ObjectPropertyRange(Axiom):
    property: ObjectPropertyExpression
    range: ClassExpression


@dataclass(frozen=True)
class _ObjectPropertyCharacteristic(Axiom):
    property: ObjectPropertyExpression


@dataclass(frozen=True)
class FunctionalObjectProperty(_ObjectPropertyCharacteristic):
    pass


@dataclass(frozen=True)
class InverseFunctionalObjectProperty(_ObjectPropertyCharacteristic):
    pass


@dataclass(frozen=True)
class ReflexiveObjectProperty(_ObjectPropertyCharacteristic):
    pass


@dataclass(frozen=True)
class IrreflexiveObjectProperty(_ObjectPropertyCharacteristic):
    pass


@dataclass(frozen=True)
class SymmetricObjectProperty(_ObjectPropertyCharacteristic):
    pass


@dataclass(frozen=True)
class AsymmetricObjectProperty(_ObjectPropertyCharacteristic):
    pass


@dataclass(frozen=True)
class TransitiveObjectProperty(_ObjectPropertyCharacteristic):
    pass


@dataclass(frozen=True)
class SubDataPropertyOf(Axiom):
    sub: Iri
    sup: Iri


@dataclass(frozen=True)
class DataPropertyDomain(Axiom):
    property: Iri
    domain: ClassExpression


@dataclass(frozen=True)
class DataPropertyRange(Axiom):
    property: Iri
    range: DataRange


@dataclass(frozen=True)
class FunctionalDataProperty(Axiom):
    property: Iri


@dataclass(frozen=True)
class ClassAssertion(Axiom):
    cls: ClassExpression
    individual: Iri


@dataclass(frozen=True)
class ObjectPropertyAssertion(Axiom):
    property: ObjectPropertyExpression
    source: Iri
    target: Iri


@dataclass(frozen=True)
class NegativeObjectPropertyAssertion(Axiom):
    property: ObjectPropertyExpression
    source: Iri
    target: Iri


@dataclass(frozen=True)
class DataPropertyAssertion(Axiom):
    property: Iri
    source: Iri
    target: Literal


@dataclass(frozen=True)
class SameIndividual(Axiom):
    individuals: Tuple[Iri, ...]


@dataclass(frozen=True)
class DifferentIndividuals(Axiom):
    individuals: Tuple[Iri, ...]


# Documents

@dataclass(frozen=True)
class OntologyDocument:
    """A parsed ontology.

    ``entities`` holds every entity of the signature, declared or inferred
    from usage; inferred entities never add Declaration axioms.
    """

    ontology_iri: Optional[Iri] = None
    imports: Tuple[Iri, ...] = ()
    prefixes: Dict[str, str] = field(default_factory=dict, hash=False, compare=False)
    axioms: Tuple[Axiom, ...] = ()
    entities: Tuple[Entity, ...] = ()

    @property
    def logical_axioms(self) -> Tuple[Axiom, ...]:
        return tuple(ax for ax in self.axioms if ax.is_logical)

    @property
    def annotation_assertions(self) -> Tuple[AnnotationAssertion, ...]:
        return tuple(ax for ax in self.axioms if isinstance(ax, AnnotationAssertion))

    def entities_of(self, kind: EntityKind) -> Tuple[Entity, ...]:
        return tuple(e for e in self.entities if e.kind == kind)

    def kind_of(self, iri: Iri) -> Optional[EntityKind]:
        for entity in self.entities:
            if entity.iri == iri:
                return entity.kind
        return None
