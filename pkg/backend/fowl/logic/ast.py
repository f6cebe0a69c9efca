"""First-order logic AST shared by the TPTP and CLIF front ends and the OWL translator."""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Set, Tuple

from fowl.core.errors import DuplicateUnitError, UnsupportedRoleError


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Variable(Term):
    name: str


@dataclass(frozen=True)
class Constant(Term):
    name: str


@dataclass(frozen=True)
class Function(Term):
    name: str
    args: Tuple[Term, ...]


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Predicate(Formula):
    name: str
    args: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class Equality(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    items: Tuple[Formula, ...]

    def __post_init__(self):
        if len(self.items) < 2:
            raise ValueError("a conjunction needs at least two items")


@dataclass(frozen=True)
class Or(Formula):
    items: Tuple[Formula, ...]

    def __post_init__(self):
        if len(self.items) < 2:
            raise ValueError("a disjunction needs at least two items")


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Quantified(Formula):
    variables: Tuple[str, ...]
    body: Formula

    def __post_init__(self):
        if not self.variables:
            raise ValueError("a quantifier needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate quantified variable in {self.variables}")


@dataclass(frozen=True)
class Forall(Quantified):
    pass


@dataclass(frozen=True)
class Exists(Quantified):
    pass


@dataclass(frozen=True)
class TrueFormula(Formula):
    pass


@dataclass(frozen=True)
class FalseFormula(Formula):
    pass


def conjunction(items: Iterable[Formula]) -> Formula:
    """And over items, collapsing the empty and singleton cases"""
    items = tuple(items)
    if not items:
        return TrueFormula()
    if len(items) == 1:
        return items[0]
    return And(items)


def disjunction(items: Iterable[Formula]) -> Formula:
    """Or over items, collapsing the empty and singleton cases"""
    items = tuple(items)
    if not items:
        return FalseFormula()
    if len(items) == 1:
        return items[0]
    return Or(items)


# Traversal

def term_variables(term: Term) -> Set[str]:
    if isinstance(term, Variable):
        return {term.name}
    if isinstance(term, Function):
        found = set()
        for arg in term.args:
            found |= term_variables(arg)
        return found
    return set()


def free_variables(formula: Formula) -> FrozenSet[str]:
    """Names of the variables occurring free in formula"""
    if isinstance(formula, Predicate):
        found = set()
        for arg in formula.args:
            found |= term_variables(arg)
        return frozenset(found)
    if isinstance(formula, Equality):
        return frozenset(term_variables(formula.left) | term_variables(formula.right))
    if isinstance(formula, Not):
        return free_variables(formula.body)
    if isinstance(formula, (And, Or)):
        return frozenset().union(*(free_variables(item) for item in formula.items))
    if isinstance(formula, (Implies, Iff)):
        return free_variables(formula.left) | free_variables(formula.right)
    if isinstance(formula, Quantified):
        return free_variables(formula.body) - frozenset(formula.variables)
    return frozenset()


def subformulas(formula: Formula) -> Iterator[Formula]:
    """Pre-order walk over formula and all of its subformulas"""
    yield formula
    if isinstance(formula, Not):
        yield from subformulas(formula.body)
    elif isinstance(formula, (And, Or)):
        for item in formula.items:
            yield from subformulas(item)
    elif isinstance(formula, (Implies, Iff)):
        yield from subformulas(formula.left)
        yield from subformulas(formula.right)
    elif isinstance(formula, Quantified):
        yield from subformulas(formula.body)


def bound_variable_occurrences(formula: Formula) -> list:
    """Every variable name bound by a quantifier, once per binding occurrence"""
    names = []
    for sub in subformulas(formula):
        if isinstance(sub, Quantified):
            names.extend(sub.variables)
    return names


def universal_closure(formula: Formula) -> Formula:
    free = sorted(free_variables(formula))
    if not free:
        return formula
    return Forall(tuple(free), formula)


def _rename_term_variables(term: Term, renaming: Dict[str, str]) -> Term:
    if isinstance(term, Variable):
        return Variable(renaming.get(term.name, term.name))
    if isinstance(term, Function):
        return Function(term.name, tuple(_rename_term_variables(arg, renaming) for arg in term.args))
    return term


def _rename_bound(formula: Formula, renaming: Dict[str, str], used: Set[str]) -> Formula:
    if isinstance(formula, Predicate):
        return Predicate(formula.name, tuple(_rename_term_variables(arg, renaming) for arg in formula.args))
    if isinstance(formula, Equality):
        return Equality(_rename_term_variables(formula.left, renaming), _rename_term_variables(formula.right, renaming))
    if isinstance(formula, Not):
        return Not(_rename_bound(formula.body, renaming, used))
    if isinstance(formula, (And, Or)):
        return type(formula)(tuple(_rename_bound(item, renaming, used) for item in formula.items))
    if isinstance(formula, (Implies, Iff)):
        return type(formula)(_rename_bound(formula.left, renaming, used), _rename_bound(formula.right, renaming, used))
    if isinstance(formula, Quantified):
        inner = dict(renaming)
        fresh = []
        for name in formula.variables:
            candidate, n = name, 1
            while candidate in used:
                candidate = f"{name}{n}"
                n += 1
            used.add(candidate)
            inner[name] = candidate
            fresh.append(candidate)
        return type(formula)(tuple(fresh), _rename_bound(formula.body, inner, used))
    return formula


def rename_apart(formulas: Iterable[Formula]) -> List[Formula]:
    """Rename bound variables so that no name is bound twice across formulas.

    Free variables keep their names and are never reused for a binder.
    """
    formulas = list(formulas)
    used: Set[str] = set()
    for formula in formulas:
        used |= free_variables(formula)
    return [_rename_bound(formula, {}, used) for formula in formulas]


class SymbolKind(str, Enum):
    PREDICATE = "predicate"
    FUNCTION = "function"
    CONSTANT = "constant"


class Symbol(NamedTuple):
    name: str
    kind: SymbolKind
    arity: int


def _term_symbols(term: Term, found: Dict[Symbol, None]) -> None:
    if isinstance(term, Constant):
        found.setdefault(Symbol(term.name, SymbolKind.CONSTANT, 0))
    elif isinstance(term, Function):
        found.setdefault(Symbol(term.name, SymbolKind.FUNCTION, len(term.args)))
        for arg in term.args:
            _term_symbols(arg, found)


def ordered_symbols(formula: Formula) -> List[Symbol]:
    """Non-logical symbols of formula in first-occurrence order"""
    found: Dict[Symbol, None] = {}
    for sub in subformulas(formula):
        if isinstance(sub, Predicate):
            found.setdefault(Symbol(sub.name, SymbolKind.PREDICATE, len(sub.args)))
            for arg in sub.args:
                _term_symbols(arg, found)
        elif isinstance(sub, Equality):
            _term_symbols(sub.left, found)
            _term_symbols(sub.right, found)
    return list(found)


def symbols(formula: Formula) -> Set[Symbol]:
    """Non-logical symbols of formula, tagged with their role and arity"""
    return set(ordered_symbols(formula))


SymbolRenamer = Callable[[str, SymbolKind, int], str]


def _rename_term(term: Term, rename: SymbolRenamer) -> Term:
    if isinstance(term, Constant):
        return Constant(rename(term.name, SymbolKind.CONSTANT, 0))
    if isinstance(term, Function):
        return Function(
            rename(term.name, SymbolKind.FUNCTION, len(term.args)),
            tuple(_rename_term(arg, rename) for arg in term.args),
        )
    return term


def rename_symbols(formula: Formula, rename: SymbolRenamer) -> Formula:
    """Rebuild formula with every non-logical symbol passed through rename"""
    if isinstance(formula, Predicate):
        return Predicate(
            rename(formula.name, SymbolKind.PREDICATE, len(formula.args)),
            tuple(_rename_term(arg, rename) for arg in formula.args),
        )
    if isinstance(formula, Equality):
        return Equality(_rename_term(formula.left, rename), _rename_term(formula.right, rename))
    if isinstance(formula, Not):
        return Not(rename_symbols(formula.body, rename))
    if isinstance(formula, And):
        return And(tuple(rename_symbols(item, rename) for item in formula.items))
    if isinstance(formula, Or):
        return Or(tuple(rename_symbols(item, rename) for item in formula.items))
    if isinstance(formula, Implies):
        return Implies(rename_symbols(formula.left, rename), rename_symbols(formula.right, rename))
    if isinstance(formula, Iff):
        return Iff(rename_symbols(formula.left, rename), rename_symbols(formula.right, rename))
    if isinstance(formula, Quantified):
        return type(formula)(formula.variables, rename_symbols(formula.body, rename))
    return formula


def flatten(formula: Formula) -> Formula:
    """Merge nested conjunctions and disjunctions into single n-ary nodes"""
    if isinstance(formula, (And, Or)):
        kind = type(formula)
        items = []
        for item in formula.items:
            item = flatten(item)
            if isinstance(item, kind):
                items.extend(item.items)
            else:
                items.append(item)
        return kind(tuple(items))
    if isinstance(formula, Not):
        return Not(flatten(formula.body))
    if isinstance(formula, (Implies, Iff)):
        return type(formula)(flatten(formula.left), flatten(formula.right))
    if isinstance(formula, Quantified):
        return type(formula)(formula.variables, flatten(formula.body))
    return formula


# Problems

class Role(str, Enum):
    AXIOM = "axiom"
    CONJECTURE = "conjecture"

    @classmethod
    def parse(cls, value: str) -> "Role":
        try:
            return cls(value)
        except ValueError:
            raise UnsupportedRoleError(value) from None


@dataclass(frozen=True)
class TptpUnit:
    name: str
    role: Role
    formula: Formula


@dataclass(frozen=True)
class TptpProblem:
    units: Tuple[TptpUnit, ...] = ()

    def __post_init__(self):
        seen = set()
        for unit in self.units:
            if unit.name in seen:
                raise DuplicateUnitError(unit.name)
            seen.add(unit.name)

    def __len__(self) -> int:
        return len(self.units)

    def __iter__(self):
        return iter(self.units)

    @property
    def axioms(self) -> Tuple[TptpUnit, ...]:
        return tuple(u for u in self.units if u.role == Role.AXIOM)

    @property
    def conjectures(self) -> Tuple[TptpUnit, ...]:
        return tuple(u for u in self.units if u.role == Role.CONJECTURE)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(u.name for u in self.units)

    def extend(self, units: Iterable[TptpUnit]) -> "TptpProblem":
        return TptpProblem(self.units + tuple(units))

    def __add__(self, other: "TptpProblem") -> "TptpProblem":
        return self.extend(other.units)
