"""Brute-force finite model search for small function-free theories.

Formulas are grounded over a domain {0..n-1}, then decided with a
DPLL-style search over the ground atoms. Only meant for tiny problems,
where it serves as an independent check on prover verdicts.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union
import logging

from fowl.core.errors import UnsupportedConstructError
from fowl.logic.ast import (
    And, Constant, Equality, Exists, FalseFormula, Forall, Formula, Function, Iff, Implies, Not, Or,
    Predicate, Term, TrueFormula, Variable, subformulas,
)

logger = logging.getLogger(__name__)

GroundAtom = Tuple[str, Tuple[int, ...]]
# a ground node is a bool, ("atom", GroundAtom), ("not", node), ("and", nodes) or ("or", nodes)
Node = Union[bool, tuple]


@dataclass(frozen=True)
class Model:
    size: int
    constants: Dict[str, int]
    true_atoms: FrozenSet[GroundAtom]

    def holds(self, predicate: str, *elements: int) -> bool:
        return (predicate, tuple(elements)) in self.true_atoms


def constants_of(formulas: Iterable[Formula]) -> List[str]:
    found: Dict[str, None] = {}

    def visit(term: Term) -> None:
        if isinstance(term, Constant):
            found.setdefault(term.name)
        elif isinstance(term, Function):
            raise UnsupportedConstructError(f"function symbol {term.name}", "model search is function-free")

    for formula in formulas:
        for sub in subformulas(formula):
            if isinstance(sub, Predicate):
                for arg in sub.args:
                    visit(arg)
            elif isinstance(sub, Equality):
                visit(sub.left)
                visit(sub.right)
    return list(found)


# Ground node constructors fold constants as they go

def _not(node: Node) -> Node:
    if isinstance(node, bool):
        return not node
    if node[0] == "not":
        return node[1]
    return ("not", node)


def _and(nodes: Iterable[Node]) -> Node:
    kept = []
    for node in nodes:
        if node is False:
            return False
        if node is not True:
            kept.append(node)
    if not kept:
        return True
    return kept[0] if len(kept) == 1 else ("and", tuple(kept))


def _or(nodes: Iterable[Node]) -> Node:
    kept = []
    for node in nodes:
        if node is True:
            return True
        if node is not False:
            kept.append(node)
    if not kept:
        return False
    return kept[0] if len(kept) == 1 else ("or", tuple(kept))


class Grounder:
    def __init__(self, size: int, constants: Dict[str, int]):
        self.size = size
        self.constants = constants

    def element(self, term: Term, env: Dict[str, int]) -> int:
        if isinstance(term, Variable):
            return env[term.name]
        if isinstance(term, Constant):
            return self.constants[term.name]
        raise UnsupportedConstructError(f"function symbol {term.name}", "model search is function-free")

    def _instances(self, variables: Sequence[str], env: Dict[str, int]) -> Iterator[Dict[str, int]]:
        for values in product(range(self.size), repeat=len(variables)):
            inner = dict(env)
            inner.update(zip(variables, values))
            yield inner

    def ground(self, formula: Formula, env: Dict[str, int]) -> Node:
        if isinstance(formula, TrueFormula):
            return True
        if isinstance(formula, FalseFormula):
            return False
        if isinstance(formula, Predicate):
            return ("atom", (formula.name, tuple(self.element(a, env) for a in formula.args)))
        if isinstance(formula, Equality):
            return self.element(formula.left, env) == self.element(formula.right, env)
        if isinstance(formula, Not):
            return _not(self.ground(formula.body, env))
        if isinstance(formula, And):
            return _and(self.ground(item, env) for item in formula.items)
        if isinstance(formula, Or):
            return _or(self.ground(item, env) for item in formula.items)
        if isinstance(formula, Implies):
            return _or([_not(self.ground(formula.left, env)), self.ground(formula.right, env)])
        if isinstance(formula, Iff):
            left, right = self.ground(formula.left, env), self.ground(formula.right, env)
            return _and([_or([_not(left), right]), _or([left, _not(right)])])
        if isinstance(formula, Forall):
            return _and(self.ground(formula.body, inner) for inner in self._instances(formula.variables, env))
        if isinstance(formula, Exists):
            return _or(self.ground(formula.body, inner) for inner in self._instances(formula.variables, env))
        raise TypeError(f"Unknown formula {formula!r}")


def force(node: Node, atom: GroundAtom, value: bool) -> Node:
    """Simplify node under atom=value"""
    if isinstance(node, bool):
        return node
    tag = node[0]
    if tag == "atom":
        return value if node[1] == atom else node
    if tag == "not":
        return _not(force(node[1], atom, value))
    if tag == "and":
        return _and(force(child, atom, value) for child in node[1])
    return _or(force(child, atom, value) for child in node[1])


def atoms_of(node: Node, found: Optional[Set[GroundAtom]] = None) -> Set[GroundAtom]:
    found = set() if found is None else found
    if isinstance(node, bool):
        return found
    if node[0] == "atom":
        found.add(node[1])
    elif node[0] == "not":
        atoms_of(node[1], found)
    else:
        for child in node[1]:
            atoms_of(child, found)
    return found


def _unit(node: Node) -> Optional[Tuple[GroundAtom, bool]]:
    if isinstance(node, tuple) and node[0] == "atom":
        return node[1], True
    if isinstance(node, tuple) and node[0] == "not" and node[1][0] == "atom":
        return node[1][1], False
    return None


def _split(roots: Iterable[Node]) -> List[Node]:
    """Top-level conjunctions become separate roots"""
    split: List[Node] = []
    for root in roots:
        if isinstance(root, tuple) and root[0] == "and":
            split.extend(_split(root[1]))
        elif root is not True:
            split.append(root)
    return split


def _search(roots: List[Node], assignment: Dict[GroundAtom, bool]) -> Optional[Dict[GroundAtom, bool]]:
    # unit propagation
    while True:
        roots = _split(roots)
        if any(root is False for root in roots):
            return None
        unit = next((u for u in map(_unit, roots) if u is not None), None)
        if unit is None:
            break
        atom, value = unit
        assignment = {**assignment, atom: value}
        roots = [force(root, atom, value) for root in roots]

    if not roots:
        return assignment

    # branch inside the smallest constraint, false before true
    smallest = min(roots, key=lambda root: len(atoms_of(root)))
    atom = min(atoms_of(smallest))
    for value in (False, True):
        found = _search([force(root, atom, value) for root in roots], {**assignment, atom: value})
        if found is not None:
            return found
    return None


def _constant_assignments(names: Sequence[str], size: int) -> Iterator[Dict[str, int]]:
    """Constant interpretations up to renaming of domain elements"""

    def extend(index: int, values: List[int], used: int) -> Iterator[List[int]]:
        if index == len(names):
            yield list(values)
            return
        for value in range(min(used + 1, size)):
            values.append(value)
            yield from extend(index + 1, values, max(used, value + 1))
            values.pop()

    for values in extend(0, [], 0):
        yield dict(zip(names, values))


def find_model(formulas: Sequence[Formula], max_size: int = 3) -> Optional[Model]:
    """Smallest model of formulas with at most max_size elements, or None"""
    formulas = list(formulas)
    names = constants_of(formulas)
    for size in range(1, max_size + 1):
        for constants in _constant_assignments(names, size):
            grounder = Grounder(size, constants)
            roots = [grounder.ground(formula, {}) for formula in formulas]
            assignment = _search(roots, {})
            if assignment is not None:
                true_atoms = frozenset(atom for atom, value in assignment.items() if value)
                logger.debug(f"Found a model of size {size}")
                return Model(size, constants, true_atoms)
    logger.debug(f"No model with up to {max_size} elements")
    return None


def is_satisfiable(formulas: Sequence[Formula], max_size: int = 3) -> bool:
    return find_model(formulas, max_size) is not None


def evaluate(formula: Formula, model: Model) -> bool:
    """Truth of a closed formula in model; atoms outside true_atoms are false"""
    node = Grounder(model.size, model.constants).ground(formula, {})
    for atom in atoms_of(node):
        node = force(node, atom, atom in model.true_atoms)
    return bool(node)
