"""Match FOL symbols to OWL entities by edit distance over labels and IRI local names."""

from dataclasses import dataclass, field
from enum import Enum
from math import ceil
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging
import re

import Levenshtein

from fowl.config import settings
from fowl.logic.ast import Formula, Symbol, SymbolKind, rename_symbols
from fowl.logic.mangle import Mangler
from fowl.owl.model import Entity, EntityKind
from fowl.schemas import NamingMode

logger = logging.getLogger(__name__)

_SEPARATORS = re.compile(r"[\s_\-]+")

OwlSignature = Sequence[Tuple[Entity, List[str]]]


class MatchKind(str, Enum):
    LABEL = "label"
    IRI_SUFFIX = "iriSuffix"
    NONE = "none"


@dataclass(frozen=True)
class SignatureEntry:
    entity: Optional[Entity]
    match_kind: MatchKind
    distance: int = 0


@dataclass
class SignatureMap:
    entries: Dict[Symbol, SignatureEntry] = field(default_factory=dict)
    reverse: Dict[Entity, str] = field(default_factory=dict)
    by_iri: Dict[str, Entity] = field(default_factory=dict)

    def entity_for(self, symbol: Symbol) -> Optional[Entity]:
        entry = self.entries.get(symbol)
        if entry is not None and entry.entity is not None:
            return entry.entity
        return self.by_iri.get(symbol.name)

    @property
    def matched(self) -> Dict[Symbol, SignatureEntry]:
        return {s: e for s, e in self.entries.items() if e.match_kind != MatchKind.NONE}


def normalize(name: str) -> str:
    """Lowercase, strip surrounding quotes, collapse separators to one space"""
    name = name.strip()
    if len(name) >= 2 and name[0] == name[-1] and name[0] in "'\"":
        name = name[1:-1]
    return _SEPARATORS.sub(" ", name).strip().lower()


def levenshtein(a: str, b: str) -> int:
    return Levenshtein.distance(a, b)


def compatible_kinds(symbol: Symbol) -> Tuple[EntityKind, ...]:
    if symbol.kind == SymbolKind.CONSTANT:
        return (EntityKind.NAMED_INDIVIDUAL,)
    if symbol.kind == SymbolKind.PREDICATE and symbol.arity == 1:
        return (EntityKind.CLASS, EntityKind.DATATYPE)
    if symbol.kind == SymbolKind.PREDICATE and symbol.arity == 2:
        return (EntityKind.OBJECT_PROPERTY, EntityKind.DATA_PROPERTY)
    return ()


def threshold(normalized: str, ratio: float, min_distance: int) -> int:
    return max(min_distance, ceil(ratio * len(normalized)))


def _match(symbol: Symbol, signature: OwlSignature, ratio: float, min_distance: int) -> SignatureEntry:
    kinds = compatible_kinds(symbol)
    if not kinds:
        return SignatureEntry(None, MatchKind.NONE)

    best = None
    target = normalize(symbol.name)
    for entity, labels in signature:
        if entity.kind not in kinds:
            continue
        if symbol.name == entity.iri.value:
            return SignatureEntry(entity, MatchKind.IRI_SUFFIX, 0)
        for label in labels:
            score = (levenshtein(target, normalize(label)), 0, entity.iri.value)
            if best is None or score < best[0]:
                best = (score, entity, MatchKind.LABEL)
        score = (levenshtein(target, normalize(entity.iri.local_name)), 1, entity.iri.value)
        if best is None or score < best[0]:
            best = (score, entity, MatchKind.IRI_SUFFIX)

    if best is None:
        return SignatureEntry(None, MatchKind.NONE)
    (distance, _, _), entity, kind = best
    if distance > threshold(target, ratio, min_distance):
        return SignatureEntry(None, MatchKind.NONE, distance)
    return SignatureEntry(entity, kind, distance)


def readable_names(signature: OwlSignature, reserved: Iterable[str] = ()) -> Dict[Entity, str]:
    """First label, else IRI local name, mangled; entities are named in IRI order"""
    mangler = Mangler(reserved=reserved)
    names: Dict[Entity, str] = {}
    for entity, labels in sorted(signature, key=lambda pair: pair[0].iri.value):
        base = labels[0] if labels else entity.iri.local_name
        names[entity] = mangler.fresh(base)
    return names


def build_signature_map(
    fol_symbols: Iterable[Symbol],
    owl_signature: OwlSignature,
    ratio: float = settings.FOWL_ALIGN_RATIO,
    min_distance: int = settings.FOWL_ALIGN_MIN_DISTANCE,
    reserved: Iterable[str] = (),
) -> SignatureMap:
    """Align FOL symbols with the OWL signature.

    Symbols in ``reserved`` are never matched; together with every unmatched
    symbol they are kept out of the readable-name space.
    """
    reserved = set(reserved)
    signature = list(owl_signature)
    result = SignatureMap()

    for symbol in sorted(set(fol_symbols)):
        if symbol.name in reserved:
            entry = SignatureEntry(None, MatchKind.NONE)
        else:
            entry = _match(symbol, signature, ratio, min_distance)
        result.entries[symbol] = entry
        if entry.entity is not None:
            logger.debug(
                f"Aligned {symbol.name}/{symbol.arity} to <{entry.entity.iri}> "
                f"({entry.match_kind.value}, distance {entry.distance})"
            )
        elif symbol.name not in reserved:
            logger.warning(f"No OWL entity for {symbol.kind.value} {symbol.name}/{symbol.arity}; used as-is")

    passthrough = reserved | {s.name for s, e in result.entries.items() if e.entity is None}
    result.reverse = readable_names(signature, passthrough)
    result.by_iri = {entity.iri.value: entity for entity, _ in signature}
    return result


def rewrite_formula(formula: Formula, signature_map: SignatureMap, target: NamingMode = NamingMode.IRI) -> Formula:
    """Replace matched symbols by entity IRIs or readable names; others pass through"""

    def rename(name: str, kind: SymbolKind, arity: int) -> str:
        entity = signature_map.entity_for(Symbol(name, kind, arity))
        if entity is None:
            return name
        if target == NamingMode.READABLE:
            return signature_map.reverse.get(entity, entity.iri.value)
        return entity.iri.value

    return rename_symbols(formula, rename)


def alignment_report(signature_map: SignatureMap) -> str:
    """Two-column table: FOL symbol and the IRI it was aligned to"""
    rows = []
    for symbol, entry in sorted(signature_map.entries.items()):
        left = f"{symbol.name}/{symbol.arity}"
        if entry.entity is None:
            right = "(unmatched)"
        else:
            right = f"{entry.entity.iri.value}  [{entry.match_kind.value}, distance {entry.distance}]"
        rows.append((left, right))

    if not rows:
        return "No annotation symbols to align.\n"
    width = max(len("symbol"), *(len(left) for left, _ in rows))
    lines = [f"{'symbol'.ljust(width)}  iri", f"{'-' * width}  {'-' * 3}"]
    lines += [f"{left.ljust(width)}  {right}" for left, right in rows]
    return "\n".join(lines) + "\n"
