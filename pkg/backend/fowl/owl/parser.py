"""Parser for OWL 2 functional-style syntax.

The grammar only knows the generic shape ``Name(arg ...)``; the meaning of
each constructor is resolved here in Python, which keeps error messages
specific ("unknown construct HasKey") instead of generic parse failures.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Set, Tuple, Union
import logging
import re

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from fowl.core.errors import (
    FowlError, InvalidIriError, OwlSyntaxError, PunningError, UndeclaredEntityError,
    UnknownConstructError, UnsupportedSyntaxError,
)
from fowl.owl import model as m
from fowl.owl.model import EntityKind, Iri

logger = logging.getLogger(__name__)

GRAMMAR = r"""
    start: prefix_decl* ontology

    prefix_decl: "Prefix" "(" PNAME "=" FULL_IRI ")"

    ontology: "Ontology" "(" element* ")"

    ?element: construct
            | FULL_IRI -> full_iri
            | PNAME -> prefixed_name
            | literal
            | INT -> integer

    construct: CONSTRUCTOR "(" element* ")"

    literal: STRING
           | STRING LANGTAG -> lang_literal
           | STRING "^^" datatype -> typed_literal

    ?datatype: FULL_IRI -> full_iri
             | PNAME -> prefixed_name

    PNAME.2: /(?:[A-Za-z_][A-Za-z0-9_.\-]*)?:[^\s()"<>=#,^]*/
    CONSTRUCTOR: /[A-Za-z][A-Za-z0-9]*/
    FULL_IRI: /<[^<>"{}|^`\\\s]*>/
    STRING: /"(?:[^"\\]|\\.)*"/
    LANGTAG: /@[a-zA-Z]+(?:-[a-zA-Z0-9]+)*/
    INT: /[0-9]+/

    COMMENT: /#[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_parser = Lark(GRAMMAR, parser="lalr")


class ParseMode(str, Enum):
    STRICT = "strict"
    LENIENT = "lenient"


# Generic syntax nodes

@dataclass(frozen=True)
class Node:
    line: Optional[int]
    column: Optional[int]


@dataclass(frozen=True)
class Construct(Node):
    name: str
    args: Tuple["Element", ...]


@dataclass(frozen=True)
class IriRef(Node):
    text: str
    full: bool


@dataclass(frozen=True)
class LiteralNode(Node):
    lexical: str
    lang: Optional[str] = None
    datatype: Optional[IriRef] = None
    raw: Optional[str] = None


@dataclass(frozen=True)
class IntNode(Node):
    value: int


Element = Union[Construct, IriRef, LiteralNode, IntNode]


def unescape_string(token: str) -> str:
    """Strip the quotes; only \\" and \\\\ are escapes in functional syntax"""
    return re.sub(r'\\(["\\])', r"\1", token[1:-1])


def _literal_node(token, **kwargs) -> LiteralNode:
    return LiteralNode(token.line, token.column, unescape_string(str(token)), raw=str(token)[1:-1], **kwargs)


class SyntaxBuilder(Transformer):
    def start(self, children):
        return children[:-1], children[-1]

    def prefix_decl(self, children):
        name, iri = children
        return str(name), str(iri)[1:-1], name.line, name.column

    def ontology(self, children):
        return children

    def construct(self, children):
        name, *args = children
        return Construct(name.line, name.column, str(name), tuple(args))

    def full_iri(self, children):
        token = children[0]
        return IriRef(token.line, token.column, str(token)[1:-1], True)

    def prefixed_name(self, children):
        token = children[0]
        return IriRef(token.line, token.column, str(token), False)

    def literal(self, children):
        token = children[0]
        return _literal_node(token)

    def lang_literal(self, children):
        token, lang = children
        return _literal_node(token, lang=str(lang)[1:])

    def typed_literal(self, children):
        token, datatype = children
        return _literal_node(token, datatype=datatype)

    def integer(self, children):
        token = children[0]
        return IntNode(token.line, token.column, int(token))


_SNIFFERS = (
    (re.compile(r"^\s*<\?xml|^\s*<rdf:RDF"), "RDF/XML"),
    (re.compile(r"^\s*(@prefix|@base|PREFIX\s|BASE\s)"), "Turtle"),
    (re.compile(r"^\s*(Prefix|Ontology|Class|ObjectProperty)\s*:"), "Manchester syntax"),
)


def _sniff(source: str) -> None:
    body = "\n".join(line for line in source.splitlines() if not line.lstrip().startswith("#"))
    for pattern, name in _SNIFFERS:
        if pattern.search(body):
            raise UnsupportedSyntaxError(
                f"Input looks like {name}; only OWL 2 functional-style syntax is supported"
            )


def is_builtin(iri: Iri) -> bool:
    return iri.value.startswith((m.OWL, m.RDF, m.RDFS, m.XSD))


_CLASS_EXPRESSIONS = {
    "ObjectIntersectionOf", "ObjectUnionOf", "ObjectComplementOf", "ObjectOneOf",
    "ObjectSomeValuesFrom", "ObjectAllValuesFrom", "ObjectHasValue", "ObjectHasSelf",
    "ObjectMinCardinality", "ObjectMaxCardinality", "ObjectExactCardinality",
    "DataSomeValuesFrom", "DataAllValuesFrom", "DataHasValue",
}

_CHARACTERISTICS = {
    "FunctionalObjectProperty": m.FunctionalObjectProperty,
    "InverseFunctionalObjectProperty": m.InverseFunctionalObjectProperty,
    "ReflexiveObjectProperty": m.ReflexiveObjectProperty,
    "IrreflexiveObjectProperty": m.IrreflexiveObjectProperty,
    "SymmetricObjectProperty": m.SymmetricObjectProperty,
    "AsymmetricObjectProperty": m.AsymmetricObjectProperty,
    "TransitiveObjectProperty": m.TransitiveObjectProperty,
}

_CARDINALITIES = {
    "ObjectMinCardinality": m.ObjectMinCardinality,
    "ObjectMaxCardinality": m.ObjectMaxCardinality,
    "ObjectExactCardinality": m.ObjectExactCardinality,
}

# Non-logical axioms that carry nothing the translation could use
_SKIPPED = {"SubAnnotationPropertyOf", "AnnotationPropertyDomain", "AnnotationPropertyRange"}


class DocumentBuilder:
    """Resolve generic constructs into the typed OWL model"""

    def __init__(self, prefixes: Dict[str, str], mode: ParseMode):
        self.prefixes = dict(m.STANDARD_PREFIXES)
        self.prefixes.update(prefixes)
        self.mode = mode
        self.declared: Dict[Iri, Set[EntityKind]] = {}
        self.used: Dict[Iri, Set[EntityKind]] = {}

        self.axiom_handlers: Dict[str, Callable[[Construct], Optional[m.Axiom]]] = {
            "Declaration": self.declaration,
            "AnnotationAssertion": self.annotation_assertion,
            "SubClassOf": self.sub_class_of,
            "EquivalentClasses": self.class_list(m.EquivalentClasses),
            "DisjointClasses": self.class_list(m.DisjointClasses),
            "DisjointUnion": self.disjoint_union,
            "SubObjectPropertyOf": self.sub_object_property_of,
            "EquivalentObjectProperties": self.property_list(m.EquivalentObjectProperties),
            "DisjointObjectProperties": self.property_list(m.DisjointObjectProperties),
            "InverseObjectProperties": self.inverse_object_properties,
            "ObjectPropertyDomain": self.object_property_domain,
            "ObjectPropertyRange": self.object_property_range,
            "SubDataPropertyOf": self.sub_data_property_of,
            "DataPropertyDomain": self.data_property_domain,
            "DataPropertyRange": self.data_property_range,
            "FunctionalDataProperty": self.functional_data_property,
            "ClassAssertion": self.class_assertion,
            "ObjectPropertyAssertion": self.object_property_assertion(m.ObjectPropertyAssertion),
            "NegativeObjectPropertyAssertion": self.object_property_assertion(
                m.NegativeObjectPropertyAssertion
            ),
            "DataPropertyAssertion": self.data_property_assertion,
            "SameIndividual": self.individual_list(m.SameIndividual),
            "DifferentIndividuals": self.individual_list(m.DifferentIndividuals),
        }
        for name, cls in _CHARACTERISTICS.items():
            self.axiom_handlers[name] = self.characteristic(cls)

    # IRIs and entities

    def iri(self, node: Element) -> Iri:
        if not isinstance(node, IriRef):
            raise OwlSyntaxError("Expected an IRI", node.line, node.column)
        if node.full:
            text = node.text
        else:
            prefix, _, local = node.text.partition(":")
            prefix += ":"
            if prefix == "_:":
                raise OwlSyntaxError(
                    f"Anonymous individual {node.text} is not supported", node.line, node.column
                )
            if prefix not in self.prefixes:
                raise OwlSyntaxError(f"Undeclared prefix '{prefix}'", node.line, node.column)
            text = self.prefixes[prefix] + local
        try:
            return Iri(text)
        except InvalidIriError as e:
            raise OwlSyntaxError(str(e), node.line, node.column) from e

    def use(self, kind: EntityKind, node: Element) -> Iri:
        iri = self.iri(node)
        if not is_builtin(iri):
            self.used.setdefault(iri, set()).add(kind)
        return iri

    def entities(self) -> Tuple[m.Entity, ...]:
        found = []
        for iri in set(self.declared) | set(self.used):
            kinds = self.declared.get(iri, set()) | self.used.get(iri, set())
            if len(kinds) > 1:
                raise PunningError(iri.value, kinds)
            kind = next(iter(kinds))
            if self.mode == ParseMode.STRICT and kind not in self.declared.get(iri, set()):
                raise UndeclaredEntityError(iri.value, kind)
            if iri not in self.declared:
                logger.debug(f"Inferred {kind} for undeclared <{iri}>")
            found.append(m.Entity(kind, iri))
        return tuple(sorted(found))

    # Expressions

    @staticmethod
    def expect(node: Construct, count: int, at_least: bool = False) -> Tuple[Element, ...]:
        args = node.args
        if (len(args) < count) if at_least else (len(args) != count):
            wanted = f"at least {count}" if at_least else str(count)
            raise OwlSyntaxError(
                f"{node.name} takes {wanted} argument(s), got {len(args)}", node.line, node.column
            )
        return args

    def class_expression(self, node: Element) -> m.ClassExpression:
        if isinstance(node, IriRef):
            return m.NamedClass(self.use(EntityKind.CLASS, node))
        if not isinstance(node, Construct):
            raise OwlSyntaxError("Expected a class expression", node.line, node.column)
        if node.name not in _CLASS_EXPRESSIONS:
            raise UnknownConstructError(node.name, node.line, node.column)

        try:
            return self._class_construct(node)
        except ValueError as e:
            raise OwlSyntaxError(f"{node.name}: {e}", node.line, node.column) from e

    def _class_construct(self, node: Construct) -> m.ClassExpression:
        name = node.name
        if name == "ObjectIntersectionOf":
            return m.ObjectIntersectionOf(tuple(self.class_expression(a) for a in self.expect(node, 2, True)))
        if name == "ObjectUnionOf":
            return m.ObjectUnionOf(tuple(self.class_expression(a) for a in self.expect(node, 2, True)))
        if name == "ObjectComplementOf":
            (operand,) = self.expect(node, 1)
            return m.ObjectComplementOf(self.class_expression(operand))
        if name == "ObjectOneOf":
            return m.ObjectOneOf(tuple(self.individual(a) for a in self.expect(node, 1, True)))
        if name == "ObjectSomeValuesFrom":
            prop, filler = self.expect(node, 2)
            return m.ObjectSomeValuesFrom(self.object_property(prop), self.class_expression(filler))
        if name == "ObjectAllValuesFrom":
            prop, filler = self.expect(node, 2)
            return m.ObjectAllValuesFrom(self.object_property(prop), self.class_expression(filler))
        if name == "ObjectHasValue":
            prop, individual = self.expect(node, 2)
            return m.ObjectHasValue(self.object_property(prop), self.individual(individual))
        if name == "ObjectHasSelf":
            (prop,) = self.expect(node, 1)
            return m.ObjectHasSelf(self.object_property(prop))
        if name in _CARDINALITIES:
            if len(node.args) not in (2, 3):
                raise OwlSyntaxError(f"{name} takes 2 or 3 arguments", node.line, node.column)
            count = node.args[0]
            if not isinstance(count, IntNode):
                raise OwlSyntaxError(f"{name} needs a non-negative integer", node.line, node.column)
            filler = self.class_expression(node.args[2]) if len(node.args) == 3 else None
            return _CARDINALITIES[name](count.value, self.object_property(node.args[1]), filler)

        # data restrictions over a single property
        if name == "DataHasValue":
            prop, value = self.expect(node, 2)
            return m.DataHasValue(self.data_property(prop), self.literal(value))
        if len(node.args) != 2:
            raise UnknownConstructError(f"{name} over several data properties", node.line, node.column)
        prop, data_range = node.args
        cls = m.DataSomeValuesFrom if name == "DataSomeValuesFrom" else m.DataAllValuesFrom
        return cls(self.data_property(prop), self.data_range(data_range))

    def object_property(self, node: Element) -> m.ObjectPropertyExpression:
        if isinstance(node, Construct):
            if node.name != "ObjectInverseOf":
                raise UnknownConstructError(node.name, node.line, node.column)
            (inner,) = self.expect(node, 1)
            if not isinstance(inner, IriRef):
                raise OwlSyntaxError("ObjectInverseOf takes a named property", node.line, node.column)
            return m.ObjectInverseOf(self.use(EntityKind.OBJECT_PROPERTY, inner))
        return self.use(EntityKind.OBJECT_PROPERTY, node)

    def data_property(self, node: Element) -> Iri:
        return self.use(EntityKind.DATA_PROPERTY, node)

    def individual(self, node: Element) -> Iri:
        return self.use(EntityKind.NAMED_INDIVIDUAL, node)

    def data_range(self, node: Element) -> m.DataRange:
        if isinstance(node, IriRef):
            return m.NamedDatatype(self.use(EntityKind.DATATYPE, node))
        if isinstance(node, Construct) and node.name == "DataOneOf":
            return m.DataOneOf(tuple(self.literal(a) for a in self.expect(node, 1, True)))
        if isinstance(node, Construct):
            raise UnknownConstructError(node.name, node.line, node.column)
        raise OwlSyntaxError("Expected a data range", node.line, node.column)

    def literal(self, node: Element) -> m.Literal:
        if not isinstance(node, LiteralNode):
            raise OwlSyntaxError("Expected a literal", node.line, node.column)
        if node.lang is not None:
            return m.Literal(node.lexical, m.RDF_LANG_STRING, node.lang)
        if node.datatype is None:
            return m.Literal(node.lexical)
        return m.Literal(node.lexical, self.use(EntityKind.DATATYPE, node.datatype))

    # Axioms

    @staticmethod
    def strip_annotations(node: Construct) -> Construct:
        args = tuple(
            a for a in node.args if not (isinstance(a, Construct) and a.name == "Annotation")
        )
        return Construct(node.line, node.column, node.name, args)

    def axiom(self, node: Construct) -> Optional[m.Axiom]:
        if node.name in _SKIPPED:
            logger.debug(f"Skipped {node.name} at line {node.line}")
            for arg in node.args:
                if isinstance(arg, IriRef):
                    self.use(EntityKind.ANNOTATION_PROPERTY, arg)
                    break
            return None
        handler = self.axiom_handlers.get(node.name)
        if handler is None:
            raise UnknownConstructError(node.name, node.line, node.column)
        try:
            return handler(self.strip_annotations(node))
        except ValueError as e:
            raise OwlSyntaxError(f"{node.name}: {e}", node.line, node.column) from e

    def declaration(self, node: Construct) -> Optional[m.Axiom]:
        (inner,) = self.expect(node, 1)
        if not isinstance(inner, Construct):
            raise OwlSyntaxError("Declaration needs an entity", node.line, node.column)
        try:
            kind = EntityKind(inner.name)
        except ValueError:
            raise UnknownConstructError(inner.name, inner.line, inner.column) from None
        (target,) = self.expect(inner, 1)
        iri = self.iri(target)
        if is_builtin(iri):
            return None
        self.declared.setdefault(iri, set()).add(kind)
        return m.Declaration(m.Entity(kind, iri))

    def annotation_assertion(self, node: Construct) -> m.Axiom:
        prop, subject, value = self.expect(node, 3)
        prop_iri = self.use(EntityKind.ANNOTATION_PROPERTY, prop)
        subject_iri = self.iri(subject)
        if isinstance(value, LiteralNode):
            parsed_value = self.literal_preserving(value)
        else:
            parsed_value = self.iri(value)
        return m.AnnotationAssertion(prop_iri, subject_iri, parsed_value)

    def literal_preserving(self, node: LiteralNode) -> m.Literal:
        # annotation values never declare their datatype as an entity
        if node.lang is not None:
            return m.Literal(node.lexical, m.RDF_LANG_STRING, node.lang, raw=node.raw)
        if node.datatype is None:
            return m.Literal(node.lexical, raw=node.raw)
        return m.Literal(node.lexical, self.iri(node.datatype), raw=node.raw)

    def sub_class_of(self, node: Construct) -> m.Axiom:
        sub, sup = self.expect(node, 2)
        return m.SubClassOf(self.class_expression(sub), self.class_expression(sup))

    def class_list(self, cls):
        def handler(node: Construct) -> m.Axiom:
            return cls(tuple(self.class_expression(a) for a in self.expect(node, 2, True)))
        return handler

    def property_list(self, cls):
        def handler(node: Construct) -> m.Axiom:
            return cls(tuple(self.object_property(a) for a in self.expect(node, 2, True)))
        return handler

    def individual_list(self, cls):
        def handler(node: Construct) -> m.Axiom:
            return cls(tuple(self.individual(a) for a in self.expect(node, 2, True)))
        return handler

    def characteristic(self, cls):
        def handler(node: Construct) -> m.Axiom:
            (prop,) = self.expect(node, 1)
            return cls(self.object_property(prop))
        return handler

    def object_property_assertion(self, cls):
        def handler(node: Construct) -> m.Axiom:
            prop, source, target = self.expect(node, 3)
            return cls(self.object_property(prop), self.individual(source), self.individual(target))
        return handler

    def disjoint_union(self, node: Construct) -> m.Axiom:
        defined, *operands = self.expect(node, 3, True)
        return m.DisjointUnion(
            self.use(EntityKind.CLASS, defined), tuple(self.class_expression(a) for a in operands)
        )

    def sub_object_property_of(self, node: Construct) -> m.Axiom:
        sub, sup = self.expect(node, 2)
        if isinstance(sub, Construct) and sub.name == "ObjectPropertyChain":
            chain = tuple(self.object_property(a) for a in self.expect(sub, 2, True))
            return m.SubObjectPropertyOf(m.ObjectPropertyChain(chain), self.object_property(sup))
        return m.SubObjectPropertyOf(self.object_property(sub), self.object_property(sup))

    def inverse_object_properties(self, node: Construct) -> m.Axiom:
        first, second = self.expect(node, 2)
        return m.InverseObjectProperties(self.object_property(first), self.object_property(second))

    def object_property_domain(self, node: Construct) -> m.Axiom:
        prop, domain = self.expect(node, 2)
        return m.ObjectPropertyDomain(self.object_property(prop), self.class_expression(domain))

    def object_property_range(self, node: Construct) -> m.Axiom:
        prop, range_ = self.expect(node, 2)
        return m.ObjectPropertyRange(self.object_property(prop), self.class_expression(range_))

    def sub_data_property_of(self, node: Construct) -> m.Axiom:
        sub, sup = self.expect(node, 2)
        return m.SubDataPropertyOf(self.data_property(sub), self.data_property(sup))

    def data_property_domain(self, node: Construct) -> m.Axiom:
        prop, domain = self.expect(node, 2)
        return m.DataPropertyDomain(self.data_property(prop), self.class_expression(domain))

    def data_property_range(self, node: Construct) -> m.Axiom:
        prop, range_ = self.expect(node, 2)
        return m.DataPropertyRange(self.data_property(prop), self.data_range(range_))

    def functional_data_property(self, node: Construct) -> m.Axiom:
        (prop,) = self.expect(node, 1)
        return m.FunctionalDataProperty(self.data_property(prop))

    def class_assertion(self, node: Construct) -> m.Axiom:
        cls, individual = self.expect(node, 2)
        return m.ClassAssertion(self.class_expression(cls), self.individual(individual))

    def data_property_assertion(self, node: Construct) -> m.Axiom:
        prop, source, target = self.expect(node, 3)
        return m.DataPropertyAssertion(self.data_property(prop), self.individual(source), self.literal(target))


def parse_ontology(source: str, mode: ParseMode = ParseMode.LENIENT) -> m.OntologyDocument:
    """Parse functional-style syntax into an OntologyDocument; imports are recorded, not resolved"""
    _sniff(source)
    try:
        prefix_decls, elements = SyntaxBuilder().transform(_parser.parse(source))
    except UnexpectedInput as e:
        line = e.line if getattr(e, "line", -1) > 0 else None
        column = e.column if line is not None else None
        raise OwlSyntaxError("Invalid functional-style syntax", line, column) from e
    except VisitError as e:
        if isinstance(e.orig_exc, FowlError):
            raise e.orig_exc from None
        raise OwlSyntaxError(str(e.orig_exc)) from e

    prefixes: Dict[str, str] = {}
    for name, iri, line, column in prefix_decls:
        if name in prefixes and prefixes[name] != iri:
            raise OwlSyntaxError(f"Prefix '{name}' declared twice", line, column)
        prefixes[name] = iri
    builder = DocumentBuilder(prefixes, mode)

    ontology_iri: Optional[Iri] = None
    leading = True
    imports: List[Iri] = []
    axioms: List[m.Axiom] = []
    for element in elements:
        if isinstance(element, IriRef):
            if not leading:
                raise OwlSyntaxError("Unexpected IRI inside the ontology body", element.line, element.column)
            # ontology IRI, then an optional version IRI that is not kept
            if ontology_iri is None:
                ontology_iri = builder.iri(element)
            continue
        leading = False
        if not isinstance(element, Construct):
            raise OwlSyntaxError("Expected an axiom", element.line, element.column)
        if element.name == "Import":
            (target,) = builder.expect(element, 1)
            imports.append(builder.iri(target))
            continue
        if element.name == "Annotation":
            continue
        axiom = builder.axiom(element)
        if axiom is not None:
            axioms.append(axiom)

    doc = m.OntologyDocument(
        ontology_iri=ontology_iri,
        imports=tuple(imports),
        prefixes={**builder.prefixes},
        axioms=tuple(axioms),
        entities=builder.entities(),
    )
    logger.info(f"Parsed ontology {ontology_iri or '(anonymous)'} with {len(axioms)} axioms")
    return doc
