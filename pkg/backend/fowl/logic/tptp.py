"""TPTP first-order form: parser for bare formulas and fof files, and the problem emitter."""

from typing import Callable, Dict, List, Optional, Tuple
import logging

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from fowl.core.errors import FowlError, MangleCollisionError, TptpSyntaxError
from fowl.logic.ast import (
    And, Constant, Equality, Exists, FalseFormula, Forall, Formula, Function,
    Iff, Implies, Not, Or, Predicate, Quantified, Role, Symbol, SymbolKind,
    Term, TptpProblem, TptpUnit, TrueFormula, Variable, ordered_symbols,
)
from fowl.logic.mangle import Mangler, is_lower_word, is_upper_word, mangle_name, mangle_variable
from fowl.schemas import EmitStyle

logger = logging.getLogger(__name__)

HEADER = "% TPTP FOF problem written by fowl\n"

# Lenient superset of the TPTP FOF syntax: binary connectives may take
# conjunctions and disjunctions as operands, and the colon after a
# quantifier's variable list is optional.
GRAMMAR = r"""
    tptp_file: fof_unit*

    fof_unit: "fof" "(" unit_name "," LOWER_WORD "," formula ")" "."

    ?unit_name: LOWER_WORD | SINGLE_QUOTED | INTEGER

    ?formula: disjunction
            | disjunction BINARY_CONNECTIVE disjunction -> binary

    ?disjunction: conjunction
                | conjunction ("|" conjunction)+ -> or_formula

    ?conjunction: unary
                | unary ("&" unary)+ -> and_formula

    ?unary: "~" unary -> not_formula
          | QUANTIFIER "[" variable_list "]" ":"? unary -> quantified
          | "(" formula ")"
          | atomic

    ?atomic: term -> plain_atom
           | term EQUALITY term -> equation
           | DEFINED_PROP -> defined_atom

    variable_list: VARIABLE ("," VARIABLE)*

    ?term: VARIABLE -> variable
         | name -> constant
         | name "(" term ("," term)* ")" -> application

    ?name: LOWER_WORD | SINGLE_QUOTED

    BINARY_CONNECTIVE: /<=>|<~>|=>|<=|~\||~&/
    EQUALITY: /!=|=/
    QUANTIFIER: /[!?]/
    DEFINED_PROP: /\$true|\$false/
    LOWER_WORD: /[a-z][a-zA-Z0-9_]*/
    VARIABLE: /[A-Z][a-zA-Z0-9_]*/
    SINGLE_QUOTED: /'(?:[^'\\\n]|\\[\\'])+'/
    INTEGER: /[0-9]+/

    LINE_COMMENT: /%[^\n]*/
    BLOCK_COMMENT: /\/\*(.|\n)*?\*\//

    %import common.WS
    %ignore WS
    %ignore LINE_COMMENT
    %ignore BLOCK_COMMENT
"""

_parser = Lark(GRAMMAR, parser="lalr", start=["formula", "tptp_file"])


def _unquote(token: Token) -> str:
    text = str(token)
    if token.type == "SINGLE_QUOTED":
        text = text[1:-1].replace("\\'", "'").replace("\\\\", "\\")
    return text


class TptpBuilder(Transformer):
    """Turn the lark parse tree into AST values"""

    def variable(self, children):
        return Variable(str(children[0]))

    def constant(self, children):
        return Constant(_unquote(children[0]))

    def application(self, children):
        name, *args = children
        return Function(_unquote(name), tuple(args))

    def plain_atom(self, children):
        term = children[0]
        if isinstance(term, Variable):
            raise TptpSyntaxError(f"Variable {term.name} used in formula position")
        if isinstance(term, Constant):
            return Predicate(term.name)
        return Predicate(term.name, term.args)

    def equation(self, children):
        left, operator, right = children
        equality = Equality(left, right)
        return Not(equality) if operator == "!=" else equality

    def defined_atom(self, children):
        return TrueFormula() if children[0] == "$true" else FalseFormula()

    def not_formula(self, children):
        return Not(children[0])

    def and_formula(self, children):
        return And(tuple(children))

    def or_formula(self, children):
        return Or(tuple(children))

    def variable_list(self, children):
        return tuple(str(token) for token in children)

    def quantified(self, children):
        quantifier, variables, body = children
        if len(set(variables)) != len(variables):
            raise TptpSyntaxError(f"Duplicate variable in quantifier list {', '.join(variables)}")
        cls = Forall if quantifier == "!" else Exists
        return cls(variables, body)

    def binary(self, children):
        left, connective, right = children
        if connective == "<=>":
            return Iff(left, right)
        if connective == "=>":
            return Implies(left, right)
        if connective == "<=":
            return Implies(right, left)
        if connective == "<~>":
            return Not(Iff(left, right))
        if connective == "~|":
            return Not(Or((left, right)))
        return Not(And((left, right)))

    def fof_unit(self, children):
        name, role, formula = children
        return TptpUnit(_unquote(name), Role.parse(str(role)), formula)

    def tptp_file(self, children):
        return TptpProblem(tuple(children))


def _parse(text: str, start: str):
    try:
        tree = _parser.parse(text, start=start)
        return TptpBuilder().transform(tree)
    except UnexpectedInput as e:
        line = e.line if getattr(e, "line", -1) > 0 else None
        column = e.column if line is not None else None
        raise TptpSyntaxError(f"Invalid TPTP input: {_describe(e)}", line, column) from e
    except VisitError as e:
        if isinstance(e.orig_exc, FowlError):
            raise e.orig_exc from None
        raise TptpSyntaxError(f"Invalid TPTP input: {e.orig_exc}") from e


def _describe(error: UnexpectedInput) -> str:
    token = getattr(error, "token", None)
    if token is not None:
        return f"unexpected {token.type} '{token}'"
    char = getattr(error, "char", None)
    if char is not None:
        return f"unexpected character '{char}'"
    return "unexpected end of input"


def parse_tptp_formula(text: str) -> Formula:
    """Parse the formula part of a TPTP FOF unit (no fof(...) wrapper)"""
    return _parse(text, "formula")


def parse_tptp_file(text: str) -> TptpProblem:
    """Parse a sequence of fof units; comments are skipped"""
    return _parse(text, "tptp_file")


# Emission

def quote_name(name: str) -> str:
    if is_lower_word(name):
        return name
    escaped = name.replace("\\", "\\\\").replace("'", "\\'")
    return f"'{escaped}'"


def _unit_name_text(name: str) -> str:
    return name if name.isdigit() else quote_name(name)


class _FormulaWriter:
    def __init__(self, names: Callable[[Symbol], str]):
        self.names = names

    def term(self, term: Term) -> str:
        if isinstance(term, Variable):
            return term.name if is_upper_word(term.name) else mangle_variable(term.name)
        if isinstance(term, Constant):
            return self.names(Symbol(term.name, SymbolKind.CONSTANT, 0))
        name = self.names(Symbol(term.name, SymbolKind.FUNCTION, len(term.args)))
        return f"{name}({','.join(self.term(arg) for arg in term.args)})"

    def operand(self, formula: Formula) -> str:
        if isinstance(formula, (And, Or, Implies, Iff)):
            return f"({self.formula(formula)})"
        return self.formula(formula)

    def formula(self, formula: Formula) -> str:
        if isinstance(formula, Predicate):
            name = self.names(Symbol(formula.name, SymbolKind.PREDICATE, len(formula.args)))
            if not formula.args:
                return name
            return f"{name}({','.join(self.term(arg) for arg in formula.args)})"
        if isinstance(formula, Equality):
            return f"{self.term(formula.left)} = {self.term(formula.right)}"
        if isinstance(formula, Not):
            if isinstance(formula.body, Equality):
                return f"{self.term(formula.body.left)} != {self.term(formula.body.right)}"
            return f"~ {self.operand(formula.body)}"
        if isinstance(formula, And):
            return " & ".join(self.operand(item) for item in formula.items)
        if isinstance(formula, Or):
            return " | ".join(self.operand(item) for item in formula.items)
        if isinstance(formula, Implies):
            return f"{self.operand(formula.left)} => {self.operand(formula.right)}"
        if isinstance(formula, Iff):
            return f"{self.operand(formula.left)} <=> {self.operand(formula.right)}"
        if isinstance(formula, Quantified):
            quantifier = "!" if isinstance(formula, Forall) else "?"
            variables = ",".join(
                name if is_upper_word(name) else mangle_variable(name) for name in formula.variables
            )
            return f"{quantifier} [{variables}] : {self.operand(formula.body)}"
        if isinstance(formula, TrueFormula):
            return "$true"
        if isinstance(formula, FalseFormula):
            return "$false"
        raise TypeError(f"Not a formula: {formula!r}")


def _plain_symbol_name(symbol: Symbol) -> str:
    return quote_name(symbol.name)


def emit_formula(formula: Formula) -> str:
    """Render one formula in TPTP syntax, quoting names that are not lower words"""
    return _FormulaWriter(_plain_symbol_name).formula(formula)


def _kind_tag(symbol: Symbol) -> str:
    if symbol.kind == SymbolKind.CONSTANT:
        return "c"
    if symbol.kind == SymbolKind.FUNCTION:
        return f"f{symbol.arity}"
    return f"p{symbol.arity}"


def symbol_table(problem: TptpProblem, style: EmitStyle = EmitStyle.QUOTED) -> Dict[Symbol, str]:
    """Map every symbol of problem to the bare name it is emitted under.

    FOF keeps predicates, functions and constants in one namespace, so a
    name used in several roles (or with several arities) keeps its name for
    the first predicate use and is suffixed with a role tag elsewhere.
    """
    seen: Dict[Symbol, None] = {}
    for unit in problem.units:
        for symbol in ordered_symbols(unit.formula):
            seen.setdefault(symbol)
    ordered: List[Symbol] = sorted(seen, key=lambda s: s.kind != SymbolKind.PREDICATE)

    if style == EmitStyle.MANGLED:
        mangler = Mangler(reserved=[s.name for s in ordered if is_lower_word(s.name)])

        def base(symbol: Symbol) -> str:
            return symbol.name if is_lower_word(symbol.name) else mangler(symbol.name)
    else:
        def base(symbol: Symbol) -> str:
            return symbol.name

    table: Dict[Symbol, str] = {}
    claimed: Dict[str, Symbol] = {}
    for symbol in ordered:
        text = base(symbol)
        if text in claimed:
            stem = f"{text}_{_kind_tag(symbol)}"
            text, suffix = stem, 2
            while text in claimed:
                text = f"{stem}_{suffix}"
                suffix += 1
            logger.debug(f"Renamed {symbol.kind.value} {symbol.name}/{symbol.arity} to {text}")
        claimed[text] = symbol
        table[symbol] = text
    return table


def _unit_names(problem: TptpProblem, style: EmitStyle) -> Dict[str, str]:
    if style != EmitStyle.MANGLED:
        return {unit.name: _unit_name_text(unit.name) for unit in problem.units}

    names: Dict[str, str] = {}
    origin: Dict[str, str] = {}
    for unit in problem.units:
        text = unit.name if (is_lower_word(unit.name) or unit.name.isdigit()) else mangle_name(unit.name)
        if text in origin:
            raise MangleCollisionError(
                f"Unit names '{origin[text]}' and '{unit.name}' both mangle to '{text}'"
            )
        origin[text] = unit.name
        names[unit.name] = text
    return names


def emit_tptp(problem: TptpProblem, style: EmitStyle = EmitStyle.QUOTED) -> str:
    """Serialize problem as a TPTP FOF file, one unit per line"""
    table = symbol_table(problem, style)
    unit_names = _unit_names(problem, style)
    writer = _FormulaWriter(lambda symbol: quote_name(table[symbol]))

    lines = [HEADER]
    for unit in problem.units:
        lines.append(f"fof({unit_names[unit.name]}, {unit.role.value}, {writer.formula(unit.formula)}).\n")
    return "".join(lines)


def emit_unit(unit: TptpUnit, style: EmitStyle = EmitStyle.QUOTED) -> str:
    """Single unit without the file header"""
    return emit_tptp(TptpProblem((unit,)), style)[len(HEADER):]
