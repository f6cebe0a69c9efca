"""Molecular graphs from a SMILES subset, and a plain serializer back to SMILES."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple
import logging

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedInput

from fowl.core.errors import SmilesError, UnsupportedSmilesFeature

logger = logging.getLogger(__name__)

WILDCARD = "*"
ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}
BOND_ORDERS = {"-": 1, "=": 2, "#": 3}
BOND_SYMBOLS = {order: symbol for symbol, order in BOND_ORDERS.items()}

GRAMMAR = r"""
    start: chain

    chain: (atom | RING_NUMBER | branch | BOND | DOT)+
    branch: "(" chain ")"

    ?atom: ORGANIC | AROMATIC | WILDCARD | bracket_atom
    bracket_atom: "[" ISOTOPE? BRACKET_SYMBOL CHIRAL? HCOUNT? CHARGE? ATOM_CLASS? "]"

    BOND: "-" | "=" | "#" | "$" | ":" | "/" | "\\"
    DOT: "."
    RING_NUMBER: /%[0-9]{2}|[0-9]/
    ORGANIC: "Cl" | "Br" | "B" | "C" | "N" | "O" | "P" | "S" | "F" | "I"
    AROMATIC: "b" | "c" | "n" | "o" | "p" | "s"
    WILDCARD: "*"

    ISOTOPE: /[0-9]+/
    BRACKET_SYMBOL: /[A-Z][a-z]?|[a-z]{1,2}|\*/
    CHIRAL: /@@?/
    HCOUNT: /H[0-9]*/
    CHARGE: /[+-][0-9]+|\+\+|--|[+-]/
    ATOM_CLASS: /:[0-9]+/
"""

_parser = Lark(GRAMMAR, parser="lalr")


@dataclass(frozen=True)
class Atom:
    index: int
    element: str
    charge: int = 0

    @property
    def is_wildcard(self) -> bool:
        return self.element == WILDCARD


@dataclass(frozen=True)
class Bond:
    first: int
    second: int
    order: int = 1

    def __post_init__(self):
        if self.first >= self.second:
            raise ValueError(f"bond endpoints must satisfy i < j, got ({self.first}, {self.second})")
        if self.order not in BOND_SYMBOLS:
            raise ValueError(f"unsupported bond order {self.order}")


@dataclass(frozen=True)
class MolecularGraph:
    atoms: Tuple[Atom, ...] = ()
    bonds: Tuple[Bond, ...] = ()
    _index: Dict[Tuple[int, int], Bond] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        for position, atom in enumerate(self.atoms):
            if atom.index != position:
                raise ValueError(f"atom {atom.index} listed at position {position}")
        for bond in self.bonds:
            if bond.second >= len(self.atoms):
                raise ValueError(f"bond ({bond.first}, {bond.second}) refers to a missing atom")
            key = (bond.first, bond.second)
            if key in self._index:
                raise ValueError(f"more than one bond between atoms {bond.first} and {bond.second}")
            self._index[key] = bond

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def has_wildcard(self) -> bool:
        return any(atom.is_wildcard for atom in self.atoms)

    @property
    def elements(self) -> Set[str]:
        return {atom.element for atom in self.atoms if not atom.is_wildcard}

    def bond_between(self, i: int, j: int) -> Optional[Bond]:
        return self._index.get((min(i, j), max(i, j)))

    def neighbors(self, i: int) -> List[int]:
        found = []
        for bond in self.bonds:
            if bond.first == i:
                found.append(bond.second)
            elif bond.second == i:
                found.append(bond.first)
        return sorted(found)


# Parsing

def _parse_charge(text: str) -> int:
    if text in ("+", "-"):
        return 1 if text == "+" else -1
    if text in ("++", "--"):
        return 2 if text == "++" else -2
    return int(text)


class GraphBuilder:
    """Walks the parse tree left to right, resolving branches and ring closures"""

    def __init__(self):
        self.atoms: List[Atom] = []
        self.bonds: Dict[Tuple[int, int], int] = {}
        self.open_rings: Dict[str, Tuple[int, Optional[int], int]] = {}

    def build(self, tree: Tree) -> MolecularGraph:
        self.chain(tree.children[0], None)
        if self.open_rings:
            label, (_, _, column) = next(iter(self.open_rings.items()))
            raise SmilesError(f"Unmatched ring-closure digit {label}", 1, column)
        bonds = tuple(Bond(i, j, order) for (i, j), order in sorted(self.bonds.items()))
        return MolecularGraph(tuple(self.atoms), bonds)

    def bond_order(self, token: Token) -> int:
        order = BOND_ORDERS.get(str(token))
        if order is None:
            raise UnsupportedSmilesFeature(f"bond '{token}'", token.column)
        return order

    def connect(self, i: int, j: int, order: int, column: Optional[int]) -> None:
        if i == j:
            raise SmilesError("An atom cannot bond to itself", 1, column)
        key = (min(i, j), max(i, j))
        if key in self.bonds:
            raise SmilesError(f"Atoms {key[0]} and {key[1]} are bonded twice", 1, column)
        self.bonds[key] = order

    def chain(self, tree: Tree, previous: Optional[int]) -> None:
        """Items in order: atoms, bond symbols, ring digits, dots and branches.

        previous is the atom a branch hangs from, None at top level.
        """
        pending: Optional[Token] = None
        detached = False
        for item in tree.children:
            if isinstance(item, Tree) and item.data == "branch":
                if previous is None or pending is not None or detached:
                    raise SmilesError("Branch must follow an atom", 1, self._column(item))
                self.chain(item.children[0], previous)
                continue

            kind = item.type if isinstance(item, Token) else "ATOM"
            if kind in ("BOND", "DOT"):
                if pending is not None or detached:
                    raise SmilesError("Two bond symbols in a row", 1, item.column)
                if previous is None:
                    raise SmilesError(f"'{item}' must follow an atom", 1, item.column)
                if kind == "BOND":
                    self.bond_order(item)
                    pending = item
                else:
                    detached = True
            elif kind == "RING_NUMBER":
                if previous is None:
                    raise SmilesError(f"Ring-closure digit {item} must follow an atom", 1, item.column)
                self.ring_bond(previous, item, pending)
                pending = None
            else:
                index = self.atom(item)
                if previous is not None and not detached:
                    order = self.bond_order(pending) if pending is not None else 1
                    self.connect(previous, index, order, pending.column if pending is not None else None)
                previous, pending, detached = index, None, False

        if pending is not None or detached:
            raise SmilesError("Bond symbol without a following atom", 1, (pending or item).column)

    @staticmethod
    def _column(tree: Tree) -> Optional[int]:
        for token in tree.scan_values(lambda value: isinstance(value, Token)):
            return token.column
        return None

    def ring_bond(self, index: int, token: Token, bond: Optional[Token]) -> None:
        label = str(token)
        order = self.bond_order(bond) if bond is not None else None
        if label not in self.open_rings:
            self.open_rings[label] = (index, order, token.column)
            return
        start, opening_order, _ = self.open_rings.pop(label)
        if order is not None and opening_order is not None and order != opening_order:
            raise SmilesError(f"Conflicting bond orders on ring closure {label}", 1, token.column)
        self.connect(start, index, order or opening_order or 1, token.column)

    def add_atom(self, element: str, charge: int = 0) -> int:
        index = len(self.atoms)
        self.atoms.append(Atom(index, element, charge))
        return index

    def atom(self, node) -> int:
        if isinstance(node, Token):
            if node.type == "AROMATIC":
                raise UnsupportedSmilesFeature(f"aromatic atom '{node}'", node.column)
            return self.add_atom(str(node))

        tokens = {token.type: token for token in node.children}
        for kind, feature in (("ISOTOPE", "isotope"), ("CHIRAL", "stereo marker"), ("ATOM_CLASS", "atom class")):
            if kind in tokens:
                raise UnsupportedSmilesFeature(f"{feature} '{tokens[kind]}'", tokens[kind].column)

        symbol = tokens["BRACKET_SYMBOL"]
        if symbol[0].islower():
            raise UnsupportedSmilesFeature(f"aromatic atom '[{symbol}]'", symbol.column)
        charge = _parse_charge(str(tokens["CHARGE"])) if "CHARGE" in tokens else 0
        index = self.add_atom(str(symbol), charge)

        # bracket hydrogens are explicit, so they become atoms
        if "HCOUNT" in tokens:
            count = int(tokens["HCOUNT"][1:] or 1)
            for _ in range(count):
                hydrogen = self.add_atom("H")
                self.connect(index, hydrogen, 1, tokens["HCOUNT"].column)
        return index


def _check_branches(text: str) -> None:
    depth = 0
    for position, char in enumerate(text, start=1):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
            if depth < 0:
                raise SmilesError("Unbalanced branch: ')' without '('", 1, position)
    if depth:
        raise SmilesError("Unbalanced branch: '(' is never closed", 1, text.rfind("(") + 1)


def parse_smiles(text: str) -> MolecularGraph:
    """Parse the supported SMILES subset; no implicit hydrogens are added"""
    text = text.strip()
    if not text:
        raise SmilesError("Empty SMILES string")
    _check_branches(text)
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as e:
        column = e.column if getattr(e, "column", -1) > 0 else None
        char = text[column - 1] if column else ""
        if char in "@/\\":
            raise UnsupportedSmilesFeature(f"stereo marker '{char}'", column) from e
        raise SmilesError(f"Invalid SMILES '{text}'", 1 if column else None, column) from e
    graph = GraphBuilder().build(tree)
    logger.debug(f"Parsed {text}: {len(graph.atoms)} atoms, {len(graph.bonds)} bonds")
    return graph


# Serialization

def _atom_text(atom: Atom) -> str:
    if atom.charge == 0 and (atom.element in ORGANIC_SUBSET or atom.is_wildcard):
        return atom.element
    charge = ""
    if atom.charge:
        charge = f"{'+' if atom.charge > 0 else '-'}{abs(atom.charge)}"
    return f"[{atom.element}{charge}]"


def _ring_label(number: int) -> str:
    return str(number) if number < 10 else f"%{number:02d}"


def write_smiles(graph: MolecularGraph) -> str:
    """Serialize graph depth-first; parse_smiles reads the result back to an isomorphic graph"""
    order: Dict[int, int] = {}
    children: Dict[int, List[int]] = {}

    def visit(i: int) -> None:
        order[i] = len(order)
        children[i] = []
        for j in graph.neighbors(i):
            if j not in order:
                children[i].append(j)
                visit(j)

    roots = []
    for atom in graph.atoms:
        if atom.index not in order:
            roots.append(atom.index)
            visit(atom.index)

    tree_edges = {(min(i, j), max(i, j)) for i, kids in children.items() for j in kids}
    ring_numbers: Dict[Tuple[int, int], int] = {}
    rings_opened = 0

    def emit(i: int) -> str:
        nonlocal rings_opened
        text = _atom_text(graph.atoms[i])
        for j in graph.neighbors(i):
            key = (min(i, j), max(i, j))
            if key in tree_edges:
                continue
            bond = graph.bond_between(i, j)
            if order[j] > order[i]:
                rings_opened += 1
                ring_numbers[key] = rings_opened
                symbol = BOND_SYMBOLS[bond.order] if bond.order != 1 else ""
                text += symbol + _ring_label(rings_opened)
            else:
                text += _ring_label(ring_numbers[key])
        parts = []
        for j in children[i]:
            bond = graph.bond_between(i, j)
            symbol = BOND_SYMBOLS[bond.order] if bond.order != 1 else ""
            parts.append(symbol + emit(j))
        for part in parts[:-1]:
            text += f"({part})"
        if parts:
            text += parts[-1]
        return text

    return ".".join(emit(root) for root in roots)
