"""Annotation values that carry embedded first-order axioms, and labelled signatures."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union
import logging

from fowl.owl import model as m

logger = logging.getLogger(__name__)


class FolSyntax(str, Enum):
    CLIF = "clif"
    TPTP = "tptp"


@dataclass(frozen=True)
class FolAnnotation:
    """An annotation value read as FOL.

    ``text`` is the literal exactly as written between its quotes; ``value``
    is the decoded literal when the source used escapes.
    """

    subject: m.Iri
    syntax: FolSyntax
    text: str
    value: Optional[str] = None

    @property
    def formula_text(self) -> str:
        return self.text if self.value is None else self.value


AnnotationProperties = Union[Mapping[m.Iri, FolSyntax], Iterable[m.Iri]]


def syntax_from_suffix(iri: m.Iri) -> Optional[FolSyntax]:
    """Default convention: properties ending in /tptp, #tptp, /clif or #clif"""
    lowered = iri.value.lower()
    for syntax in FolSyntax:
        if lowered.endswith(f"/{syntax.value}") or lowered.endswith(f"#{syntax.value}"):
            return syntax
    return None


def default_annotation_properties(doc: m.OntologyDocument) -> Dict[m.Iri, FolSyntax]:
    """Every annotation property of doc whose IRI follows the suffix convention"""
    found: Dict[m.Iri, FolSyntax] = {}
    candidates = [e.iri for e in doc.entities_of(m.EntityKind.ANNOTATION_PROPERTY)]
    candidates += [ax.property for ax in doc.annotation_assertions]
    for iri in candidates:
        syntax = syntax_from_suffix(iri)
        if syntax is not None:
            found.setdefault(iri, syntax)
    return found


def _as_mapping(properties: AnnotationProperties) -> Dict[m.Iri, FolSyntax]:
    if isinstance(properties, Mapping):
        return dict(properties)

    mapping: Dict[m.Iri, FolSyntax] = {}
    for iri in properties:
        syntax = syntax_from_suffix(iri)
        if syntax is None:
            raise ValueError(
                f"Cannot tell the syntax of annotation property <{iri}>; give it explicitly as IRI=clif or IRI=tptp"
            )
        mapping[iri] = syntax
    return mapping


def extract_fol_annotations(doc: m.OntologyDocument, properties: AnnotationProperties) -> List[FolAnnotation]:
    """Annotation values carried by the selected properties, in document order.

    properties is either a mapping from property IRI to syntax or a set of
    IRIs whose syntax follows from their suffix. The text is returned byte for
    byte as it appears between the literal's quotes.
    """
    mapping = _as_mapping(properties)
    if not mapping:
        raise ValueError("At least one annotation property must be selected")

    found = []
    for axiom in doc.annotation_assertions:
        syntax = mapping.get(axiom.property)
        if syntax is None:
            continue
        if not isinstance(axiom.value, m.Literal):
            logger.warning(f"Ignored IRI-valued {syntax.value} annotation on <{axiom.subject}>")
            continue
        literal = axiom.value
        if literal.raw is None or literal.raw == literal.lexical:
            found.append(FolAnnotation(axiom.subject, syntax, literal.lexical))
        else:
            found.append(FolAnnotation(axiom.subject, syntax, literal.raw, literal.lexical))
    logger.debug(f"Extracted {len(found)} FOL annotations")
    return found


def signature_with_labels(doc: m.OntologyDocument) -> List[Tuple[m.Entity, List[str]]]:
    """Every entity of doc with its rdfs:label values in source order"""
    labels: Dict[m.Iri, List[str]] = {}
    for axiom in doc.annotation_assertions:
        if axiom.property == m.RDFS_LABEL and isinstance(axiom.value, m.Literal):
            labels.setdefault(axiom.subject, []).append(axiom.value.lexical)
    return [(entity, list(labels.get(entity.iri, []))) for entity in doc.entities]
