"""Import closure over a local IRI-to-file catalog."""

from pathlib import Path
from typing import Callable, Dict, List, Optional, Set
import logging

from fowl.core.errors import ImportResolutionError, PrefixConflictError, PunningError
from fowl.owl import model as m
from fowl.owl.parser import ParseMode, parse_ontology

logger = logging.getLogger(__name__)

Loader = Callable[[m.Iri], str]


def load_catalog(path: str) -> Dict[m.Iri, Path]:
    """Read `<iri> <path>` lines; relative paths resolve against the catalog's directory"""
    catalog_path = Path(path)
    base = catalog_path.parent
    catalog: Dict[m.Iri, Path] = {}

    with open(catalog_path, "r", encoding="utf-8") as f:
        for number, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise ImportResolutionError(f"{path}:{number}: expected '<iri> <path>'")
            iri_text, file_text = parts
            if iri_text.startswith("<") and iri_text.endswith(">"):
                iri_text = iri_text[1:-1]
            target = Path(file_text.strip())
            if not target.is_absolute():
                target = base / target
            catalog[m.Iri(iri_text)] = target

    logger.info(f"Loaded catalog {path} with {len(catalog)} entries")
    return catalog


def catalog_loader(catalog: Dict[m.Iri, Path]) -> Loader:
    """Loader that reads catalog files and refuses anything else"""

    def load(iri: m.Iri) -> str:
        target = catalog.get(iri)
        if target is None:
            raise ImportResolutionError(f"No catalog entry for import <{iri}>")
        try:
            return target.read_text(encoding="utf-8")
        except OSError as e:
            raise ImportResolutionError(f"Cannot read {target} for import <{iri}>: {e}") from e

    return load


def _merge_prefixes(merged: Dict[str, str], incoming: Dict[str, str]) -> None:
    for prefix, iri in incoming.items():
        known = merged.get(prefix)
        if known is not None and known != iri:
            raise PrefixConflictError(prefix, known, iri)
        merged[prefix] = iri


def resolve_imports(
    doc: m.OntologyDocument,
    loader: Optional[Loader] = None,
    mode: ParseMode = ParseMode.LENIENT,
) -> m.OntologyDocument:
    """Merge doc with its import closure.

    Every ontology IRI is loaded at most once, so cycles and diamonds are
    harmless. Axioms are deduplicated keeping first-seen order, the root
    document's axioms first.
    """
    if not doc.imports:
        return doc

    visited: Set[m.Iri] = set()
    if doc.ontology_iri is not None:
        visited.add(doc.ontology_iri)

    documents: List[m.OntologyDocument] = [doc]
    pending: List[m.Iri] = list(doc.imports)
    while pending:
        target = pending.pop(0)
        if target in visited:
            continue
        visited.add(target)
        if loader is None:
            raise ImportResolutionError(f"Ontology imports <{target}> but no catalog was given")
        logger.info(f"Loading import <{target}>")
        imported = parse_ontology(loader(target), mode)
        if imported.ontology_iri is not None:
            visited.add(imported.ontology_iri)
        documents.append(imported)
        pending.extend(imported.imports)

    prefixes: Dict[str, str] = {}
    axioms: Dict[m.Axiom, None] = {}
    entities: Dict[m.Entity, None] = {}
    for part in documents:
        _merge_prefixes(prefixes, part.prefixes)
        for axiom in part.axioms:
            axioms.setdefault(axiom)
        for entity in part.entities:
            entities.setdefault(entity)

    # punning across files
    kinds: Dict[m.Iri, m.EntityKind] = {}
    for entity in entities:
        known = kinds.setdefault(entity.iri, entity.kind)
        if known != entity.kind:
            raise PunningError(entity.iri.value, {known, entity.kind})

    merged = m.OntologyDocument(
        ontology_iri=doc.ontology_iri,
        imports=doc.imports,
        prefixes=prefixes,
        axioms=tuple(axioms),
        entities=tuple(sorted(entities)),
    )
    logger.info(f"Merged {len(documents)} ontologies into {len(merged.axioms)} axioms")
    return merged
