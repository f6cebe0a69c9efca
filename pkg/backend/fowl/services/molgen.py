"""First-order axioms for molecular classes generated from SMILES structures.

Incompletely specified classes (SMILES with wildcards) get a substructure
definition over a molecule variable M. Fully specified classes get a
prototypical instance: ground facts about constants n<id>_<i> that are the
parts of m<id>, closed off by a domain-closure axiom.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple
import logging
import re

from fowl.core.errors import FowlError, WildcardError
from fowl.logic.ast import (
    Constant, Equality, Exists, Forall, Formula, Iff, Implies, Not, Predicate, Role,
    TptpProblem, TptpUnit, Variable, conjunction, disjunction,
)
from fowl.services.smiles import MolecularGraph, parse_smiles

logger = logging.getLogger(__name__)

PART_OF = "part_of"
CONNECTED = "connected"
HAS_BOND = "has_bond"
NO_CHARGE = "has_no_charge"
BOND_PREDICATES = {1: "has_single_bond_to", 2: "has_double_bond_to", 3: "has_triple_bond_to"}

_CLASS_ID = re.compile(r"^(?:chebi[:_]?)?([A-Za-z0-9_]+)$", re.IGNORECASE)


class SchemeKind(str, Enum):
    CLASS_DEFINITION = "class"
    PROTOTYPICAL_INSTANCE = "instance"


@dataclass(frozen=True)
class AxiomScheme:
    kind: SchemeKind
    class_id: str
    formulas: Tuple[Formula, ...]
    elements: FrozenSet[str] = frozenset()

    def units(self) -> List[TptpUnit]:
        if self.kind == SchemeKind.CLASS_DEFINITION:
            names = [f"chebi_{self.class_id}_{i}" for i in range(len(self.formulas))]
        else:
            names = [f"chebi_{self.class_id}_inst"] + [
                f"chebi_{self.class_id}_inst_{i}" for i in range(1, len(self.formulas))
            ]
        return [TptpUnit(name, Role.AXIOM, formula) for name, formula in zip(names, self.formulas)]


# Naming

def normalize_class_id(class_id: str) -> str:
    """'CHEBI:15377', 'chebi15377' and '15377' all name class 15377"""
    match = _CLASS_ID.match(class_id.strip())
    if match is None:
        raise ValueError(f"Invalid class id '{class_id}'")
    return match.group(1)


def class_predicate(class_id: str) -> str:
    return f"chebi{normalize_class_id(class_id)}"


def molecule_constant(class_id: str) -> Constant:
    return Constant(f"m{normalize_class_id(class_id)}")


def atom_constant(class_id: str, index: int) -> Constant:
    return Constant(f"n{normalize_class_id(class_id)}_{index}")


def element_predicate(element: str) -> str:
    return element.lower()


def _element_predicates(graph: MolecularGraph) -> FrozenSet[str]:
    return frozenset(element_predicate(e) for e in graph.elements)


def charge_predicate(charge: int) -> str:
    if charge == 0:
        return NO_CHARGE
    return f"has_charge_{'plus' if charge > 0 else 'minus'}_{abs(charge)}"


def _atom_facts(graph: MolecularGraph, index: int, term, molecule) -> List[Formula]:
    atom = graph.atoms[index]
    return [
        Predicate(element_predicate(atom.element), (term,)),
        Predicate(PART_OF, (term, molecule)),
        Predicate(charge_predicate(atom.charge), (term,)),
    ]


# Schemes

def generate_class_definition(graph: MolecularGraph, class_id: str) -> AxiomScheme:
    """chebi<id>(M) holds iff M has parts matching every non-wildcard atom and bond of graph"""
    class_id = normalize_class_id(class_id)
    molecule = Variable("M")
    atoms = [atom.index for atom in graph.atoms if not atom.is_wildcard]
    variables = {i: Variable(f"N{i}") for i in atoms}

    conjuncts: List[Formula] = []
    for i in atoms:
        conjuncts += _atom_facts(graph, i, variables[i], molecule)
    for bond in graph.bonds:
        if bond.first in variables and bond.second in variables:
            conjuncts.append(Predicate(BOND_PREDICATES[bond.order], (variables[bond.first], variables[bond.second])))
    for i, j in combinations(atoms, 2):
        conjuncts.append(Not(Equality(variables[j], variables[i])))
    conjuncts.append(Predicate(CONNECTED, (molecule,)))

    body = conjunction(conjuncts)
    if variables:
        body = Exists(tuple(v.name for v in variables.values()), body)
    definition = Forall(("M",), Iff(Predicate(class_predicate(class_id), (molecule,)), body))
    return AxiomScheme(SchemeKind.CLASS_DEFINITION, class_id, (definition,), _element_predicates(graph))


def generate_prototypical_instance(graph: MolecularGraph, class_id: str) -> AxiomScheme:
    """Ground description of one molecule of the class, closed over its parts.

    A second formula states that distinct atoms are distinct individuals
    when the molecule has more than one atom.
    """
    class_id = normalize_class_id(class_id)
    if graph.has_wildcard:
        raise WildcardError(f"Class {class_id} has a wildcard atom and cannot have a prototypical instance")

    molecule = molecule_constant(class_id)
    constants = [atom_constant(class_id, atom.index) for atom in graph.atoms]

    conjuncts: List[Formula] = []
    for atom in graph.atoms:
        conjuncts += _atom_facts(graph, atom.index, constants[atom.index], molecule)
    for bond in graph.bonds:
        conjuncts.append(Predicate(BOND_PREDICATES[bond.order], (constants[bond.first], constants[bond.second])))
    for i, j in combinations(range(len(constants)), 2):
        if graph.bond_between(i, j) is None:
            conjuncts.append(Not(Predicate(HAS_BOND, (constants[i], constants[j]))))

    x = Variable("X")
    closure = Forall(("X",), Implies(Predicate(PART_OF, (x, molecule)), disjunction(Equality(x, c) for c in constants)))
    conjuncts.append(closure)
    conjuncts.append(Predicate(CONNECTED, (molecule,)))

    formulas = [conjunction(conjuncts)]
    if len(constants) > 1:
        formulas.append(conjunction(Not(Equality(a, b)) for a, b in combinations(constants, 2)))
    return AxiomScheme(SchemeKind.PROTOTYPICAL_INSTANCE, class_id, tuple(formulas), _element_predicates(graph))


def make_membership_conjectures(
    instances: Sequence[Tuple[str, Constant]],
    classes: Sequence[str],
) -> List[Tuple[str, Formula]]:
    """Conjecture chebi<class>(m<instance>) for every pair, instance-major"""
    conjectures = []
    for instance_id, molecule in instances:
        for class_id in classes:
            name = f"member_{normalize_class_id(instance_id)}_{normalize_class_id(class_id)}"
            conjectures.append((name, Predicate(class_predicate(class_id), (molecule,))))
    return conjectures


def background_chemistry(elements: Iterable[str]) -> TptpProblem:
    """Element disjointness for the elements in use, plus bond symmetry and bond typing"""
    x, y = Variable("X"), Variable("Y")
    units: List[TptpUnit] = []

    used = sorted({element_predicate(e) for e in elements})
    for a, b in combinations(used, 2):
        formula = Forall(("X",), Not(conjunction([Predicate(a, (x,)), Predicate(b, (x,))])))
        units.append(TptpUnit(f"chem_disjoint_{a}_{b}", Role.AXIOM, formula))

    for order, predicate in sorted(BOND_PREDICATES.items()):
        symmetric = Forall(("X", "Y"), Implies(Predicate(predicate, (x, y)), Predicate(predicate, (y, x))))
        typed = Forall(("X", "Y"), Implies(Predicate(predicate, (x, y)), Predicate(HAS_BOND, (x, y))))
        units.append(TptpUnit(f"chem_symmetric_{order}", Role.AXIOM, symmetric))
        units.append(TptpUnit(f"chem_bond_{order}", Role.AXIOM, typed))
    units.append(
        TptpUnit(
            "chem_symmetric_bond",
            Role.AXIOM,
            Forall(("X", "Y"), Implies(Predicate(HAS_BOND, (x, y)), Predicate(HAS_BOND, (y, x)))),
        )
    )
    return TptpProblem(tuple(units))


# Input files

@dataclass(frozen=True)
class MolgenEntry:
    line: int
    class_id: str
    graph: MolecularGraph
    kind: SchemeKind

    def scheme(self) -> AxiomScheme:
        if self.kind == SchemeKind.CLASS_DEFINITION:
            return generate_class_definition(self.graph, self.class_id)
        return generate_prototypical_instance(self.graph, self.class_id)


@dataclass(frozen=True)
class MolgenLineError:
    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


def parse_molgen_line(number: int, raw: str) -> Optional[MolgenEntry]:
    line = raw.rstrip("\n")
    if not line.strip() or line.lstrip().startswith("#"):
        return None
    fields = line.split("\t")
    if len(fields) != 3:
        raise ValueError("expected <classId><TAB><smiles><TAB><mode>")
    class_id, smiles, mode = (f.strip() for f in fields)
    try:
        kind = SchemeKind(mode.lower())
    except ValueError:
        raise ValueError(f"mode must be 'class' or 'instance', got '{mode}'") from None
    return MolgenEntry(number, normalize_class_id(class_id), parse_smiles(smiles), kind)


def read_molgen_file(text: str) -> Tuple[List[AxiomScheme], List[MolgenLineError]]:
    """Schemes for every good line; bad lines are reported, not fatal"""
    schemes: List[AxiomScheme] = []
    errors: List[MolgenLineError] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        try:
            entry = parse_molgen_line(number, raw)
            if entry is not None:
                schemes.append(entry.scheme())
        except (FowlError, ValueError) as e:
            logger.error(f"Molgen input line {number}: {e}")
            errors.append(MolgenLineError(number, str(e)))
    return schemes, errors


def elements_of(schemes: Iterable[AxiomScheme]) -> Set[str]:
    found: Set[str] = set()
    for scheme in schemes:
        found |= scheme.elements
    return found


def molgen_problem(schemes: Sequence[AxiomScheme]) -> TptpProblem:
    """Background chemistry followed by every scheme's units, in input order"""
    units: List[TptpUnit] = list(background_chemistry(elements_of(schemes)))
    for scheme in schemes:
        units.extend(scheme.units())
    return TptpProblem(tuple(units))


def instances_and_classes(schemes: Sequence[AxiomScheme]) -> Tuple[List[Tuple[str, Constant]], List[str]]:
    instances = [(s.class_id, molecule_constant(s.class_id)) for s in schemes
                 if s.kind == SchemeKind.PROTOTYPICAL_INSTANCE]
    classes = [s.class_id for s in schemes if s.kind == SchemeKind.CLASS_DEFINITION]
    return instances, classes


def parse_expected_memberships(text: str) -> Set[Tuple[str, str]]:
    """`<instanceClassId> <classId>` lines as (molecule constant, class predicate) pairs"""
    expected: Set[Tuple[str, str]] = set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        instance_id, class_id = line.split()[:2]
        expected.add((molecule_constant(instance_id).name, class_predicate(class_id)))
    return expected
