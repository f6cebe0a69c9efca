from fowl.owl.model import Entity, EntityKind, Iri, Literal, OntologyDocument
from fowl.owl.parser import ParseMode, parse_ontology
from fowl.owl.printer import print_ontology
from fowl.owl.imports import catalog_loader, load_catalog, resolve_imports
from fowl.owl.annotations import FolAnnotation, FolSyntax, extract_fol_annotations, signature_with_labels
