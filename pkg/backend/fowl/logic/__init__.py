from fowl.logic.ast import (
    Term, Variable, Constant, Function,
    Formula, Predicate, Equality, Not, And, Or, Implies, Iff, Forall, Exists,
    TrueFormula, FalseFormula, Role, TptpUnit, TptpProblem,
    free_variables, symbols, conjunction, disjunction, universal_closure,
)
from fowl.logic.tptp import parse_tptp_formula, parse_tptp_file, emit_tptp, emit_formula
from fowl.logic.clif import parse_clif
