"""Reader for the first-order fragment of the Common Logic Interchange Format."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union
import logging

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput

from fowl.core.errors import ArityOverloadError, BeyondFolError, ClifSyntaxError
from fowl.logic.ast import (
    Constant, Equality, Exists, Forall, Formula, Function, Iff, Implies, Not,
    Predicate, Term, Variable, conjunction, disjunction,
)
from fowl.logic.mangle import mangle_variable

logger = logging.getLogger(__name__)

GRAMMAR = r"""
    start: sexpr*

    ?sexpr: list
          | NAME -> name
          | DOUBLE_QUOTED -> quoted
          | SINGLE_QUOTED -> quoted

    list: "(" sexpr* ")"

    DOUBLE_QUOTED: /"(?:[^"\\]|\\.)*"/
    SINGLE_QUOTED: /'(?:[^'\\]|\\.)*'/
    NAME: /[^\s()'"]+/

    LINE_COMMENT.2: /\/\/[^\n]*/
    BLOCK_COMMENT.2: /\/\*(.|\n)*?\*\//

    %import common.WS
    %ignore WS
    %ignore LINE_COMMENT
    %ignore BLOCK_COMMENT
"""

_parser = Lark(GRAMMAR, parser="lalr", propagate_positions=True)

CONNECTIVES = {"and", "or", "not", "if", "iff", "forall", "exists", "="}
BEYOND_FOL = {"cl:module", "cl:imports", "cl:excludes", "cl:outdiscourse", "cl:roleset:"}


@dataclass(frozen=True)
class Atom:
    text: str
    quoted: bool
    line: Optional[int] = None
    column: Optional[int] = None


@dataclass(frozen=True)
class SList:
    items: Tuple["SExpr", ...]
    line: Optional[int] = None
    column: Optional[int] = None


SExpr = Union[Atom, SList]


def _unescape(text: str) -> str:
    body = text[1:-1]
    out = []
    i = 0
    while i < len(body):
        if body[i] == "\\" and i + 1 < len(body):
            out.append(body[i + 1])
            i += 2
        else:
            out.append(body[i])
            i += 1
    return "".join(out)


class SExprBuilder(Transformer):
    def start(self, children):
        return children

    @v_args(meta=True)
    def list(self, meta, children):
        line = getattr(meta, "line", None)
        column = getattr(meta, "column", None)
        return SList(tuple(children), line, column)

    def name(self, children):
        token = children[0]
        return Atom(str(token), False, token.line, token.column)

    def quoted(self, children):
        token = children[0]
        return Atom(_unescape(str(token)), True, token.line, token.column)


def read_sexprs(text: str) -> List[SExpr]:
    """Parse CLIF text into s-expressions without interpreting them"""
    try:
        return SExprBuilder().transform(_parser.parse(text))
    except UnexpectedInput as e:
        line = e.line if getattr(e, "line", -1) > 0 else None
        column = e.column if line is not None else None
        raise ClifSyntaxError("Unbalanced parentheses or stray token in CLIF text", line, column) from e


def _where(expr: SExpr) -> Tuple[Optional[int], Optional[int]]:
    return expr.line, expr.column


def _keyword(expr: SExpr) -> Optional[str]:
    if isinstance(expr, SList) and expr.items:
        head = expr.items[0]
        if isinstance(head, Atom) and not head.quoted:
            return head.text
    return None


class ClifReader:
    """Interpret s-expressions as FOL sentences.

    A name applied in sentence position is a predicate, in term position a
    function, and standalone a constant. Predicate arities are checked
    across every sentence read by one reader.
    """

    def __init__(self):
        self.arities: Dict[str, int] = {}

    def read(self, exprs: List[SExpr]) -> List[Formula]:
        sentences: List[Formula] = []
        for expr in exprs:
            sentences.extend(self.top_level(expr))
        return sentences

    def top_level(self, expr: SExpr) -> List[Formula]:
        keyword = _keyword(expr)
        if keyword == "cl:text":
            items = list(expr.items[1:])
            # optional text name
            if items and isinstance(items[0], Atom):
                items = items[1:]
            found = []
            for item in items:
                found.extend(self.top_level(item))
            return found
        sentence = self.sentence(expr, {})
        return [] if sentence is None else [sentence]

    def sentence(self, expr: SExpr, scope: Dict[str, str]) -> Optional[Formula]:
        if isinstance(expr, Atom):
            self._check_name(expr)
            if not expr.quoted and expr.text in scope:
                raise ClifSyntaxError(f"Variable '{expr.text}' used as a sentence", *_where(expr))
            return self._predicate(expr, ())

        if not expr.items:
            raise ClifSyntaxError("Empty sentence '()'", *_where(expr))

        keyword = _keyword(expr)
        args = expr.items[1:]

        if keyword == "cl:comment":
            if len(args) >= 2:
                return self.sentence(args[1], scope)
            logger.debug(f"Skipped CLIF comment at line {expr.line}")
            return None
        if keyword in BEYOND_FOL:
            raise BeyondFolError(f"'{keyword}' is beyond the first-order fragment", *_where(expr))
        if keyword == "and":
            return conjunction(self._sentences(args, scope))
        if keyword == "or":
            return disjunction(self._sentences(args, scope))
        if keyword == "not":
            self._expect(expr, args, 1)
            return Not(self._required(args[0], scope))
        if keyword == "if":
            self._expect(expr, args, 2)
            return Implies(self._required(args[0], scope), self._required(args[1], scope))
        if keyword == "iff":
            self._expect(expr, args, 2)
            return Iff(self._required(args[0], scope), self._required(args[1], scope))
        if keyword in ("forall", "exists"):
            return self._quantified(expr, keyword, args, scope)
        if keyword == "=":
            self._expect(expr, args, 2)
            return Equality(self.term(args[0], scope), self.term(args[1], scope))

        head = expr.items[0]
        if isinstance(head, SList):
            raise BeyondFolError("Complex expression in predicate position", *_where(expr))
        self._check_name(head)
        if not head.quoted and head.text in scope:
            raise BeyondFolError(f"Quantified name '{head.text}' used as a predicate", *_where(expr))
        return self._predicate(head, tuple(self.term(arg, scope) for arg in args))

    def _sentences(self, exprs, scope) -> List[Formula]:
        return [self._required(item, scope) for item in exprs]

    def _required(self, expr: SExpr, scope: Dict[str, str]) -> Formula:
        sentence = self.sentence(expr, scope)
        if sentence is None:
            raise ClifSyntaxError("Comment used where a sentence is required", *_where(expr))
        return sentence

    @staticmethod
    def _expect(expr: SList, args, count: int) -> None:
        if len(args) != count:
            raise ClifSyntaxError(
                f"'{expr.items[0].text}' takes {count} argument(s), got {len(args)}", *_where(expr)
            )

    def _quantified(self, expr: SList, keyword: str, args, scope: Dict[str, str]) -> Formula:
        if len(args) != 2 or not isinstance(args[0], SList):
            raise ClifSyntaxError(f"Malformed '{keyword}' sentence", *_where(expr))

        inner = dict(scope)
        variables: List[str] = []
        bound_here = set()
        guards: List[Formula] = []
        for binding in args[0].items:
            if isinstance(binding, SList):
                if len(binding.items) != 2 or not all(isinstance(i, Atom) for i in binding.items):
                    raise ClifSyntaxError("Malformed guarded binding", *_where(binding))
                name, guard = binding.items
            else:
                name, guard = binding, None
            self._check_name(name)
            if name.text in bound_here:
                raise ClifSyntaxError(f"Name '{name.text}' bound twice in one quantifier", *_where(binding))
            bound_here.add(name.text)

            variable = self._fresh_variable(name.text, inner, variables)
            inner[name.text] = variable
            variables.append(variable)
            if guard is not None:
                guards.append(self._predicate(guard, (Variable(variable),)))

        if not variables:
            return self._required(args[1], scope)

        body = self._required(args[1], inner)
        if keyword == "forall":
            if guards:
                body = Implies(conjunction(guards), body)
            return Forall(tuple(variables), body)
        if guards:
            body = conjunction(guards + [body])
        return Exists(tuple(variables), body)

    @staticmethod
    def _fresh_variable(name: str, scope: Dict[str, str], current: List[str]) -> str:
        base = mangle_variable(name)
        taken = {v for n, v in scope.items() if n != name} | set(current)
        candidate, suffix = base, 2
        while candidate in taken:
            candidate = f"{base}_{suffix}"
            suffix += 1
        return candidate

    def term(self, expr: SExpr, scope: Dict[str, str]) -> Term:
        if isinstance(expr, Atom):
            self._check_name(expr)
            if not expr.quoted and expr.text in scope:
                return Variable(scope[expr.text])
            return Constant(expr.text)

        if not expr.items:
            raise ClifSyntaxError("Empty term '()'", *_where(expr))
        head = expr.items[0]
        if isinstance(head, SList):
            raise BeyondFolError("Complex expression in function position", *_where(expr))
        self._check_name(head)
        if not head.quoted and (head.text in scope or head.text in CONNECTIVES):
            raise BeyondFolError(f"'{head.text}' cannot be used as a function", *_where(expr))
        args = tuple(self.term(arg, scope) for arg in expr.items[1:])
        if not args:
            return Constant(head.text)
        return Function(head.text, args)

    def _predicate(self, name: Atom, args: Tuple[Term, ...]) -> Predicate:
        known = self.arities.setdefault(name.text, len(args))
        if known != len(args):
            raise ArityOverloadError(name.text, known, len(args))
        return Predicate(name.text, args)

    @staticmethod
    def _check_name(atom: Atom) -> None:
        if not atom.quoted and atom.text.startswith("..."):
            raise BeyondFolError(
                f"Sequence marker '{atom.text}' is beyond the first-order fragment", atom.line, atom.column
            )


def parse_clif(text: str) -> List[Formula]:
    """One formula per top-level CLIF sentence; comments are skipped"""
    return ClifReader().read(read_sexprs(text))
