from itertools import product
import random

import pytest

from fowl.core.errors import ArityOverloadError, BeyondFolError, ClifSyntaxError
from fowl.logic.ast import (
    And, Constant, Equality, Exists, Forall, Function, Implies, Not, Predicate, Variable, free_variables,
)
from fowl.logic.clif import parse_clif
from fowl.services.model_finder import Model, evaluate

X, R = Variable("X"), Variable("R")


def test_independent_continuant_example():
    """Test the located-in axiom with quoted multi-word predicates"""
    text = '(forall (x) (if ("independent continuant" x) (exists (r) (and ("spatial region" r) ("located in" x r)))))'
    assert parse_clif(text) == [
        Forall(("X",), Implies(
            Predicate("independent continuant", (X,)),
            Exists(("R",), And((Predicate("spatial region", (R,)), Predicate("located in", (X, R))))),
        ))
    ]


def test_ground_conjunction():
    """Test constants stay constants"""
    assert parse_clif("(and (p a) (q a))") == [
        And((Predicate("p", (Constant("a"),)), Predicate("q", (Constant("a"),))))
    ]


def test_sentences_are_closed():
    """Test bound names become variables and nothing is left free"""
    (formula,) = parse_clif("(forall (x y) (iff (r x y) (r y x)))")
    assert free_variables(formula) == frozenset()
    assert formula.variables == ("X", "Y")


def test_one_formula_per_sentence():
    """Test several top-level sentences, with comments between them"""
    text = """
        // first
        (p a)
        /* second */
        (cl:comment "a note")
        (not (= a b))
    """
    assert parse_clif(text) == [Predicate("p", (Constant("a"),)), Not(Equality(Constant("a"), Constant("b")))]


def test_cl_text_and_comment_wrappers():
    """Test cl:text is unwrapped and a commented sentence is kept"""
    text = '(cl:text doc (cl:comment "why" (p a)) (q b))'
    assert parse_clif(text) == [Predicate("p", (Constant("a"),)), Predicate("q", (Constant("b"),))]


def test_functions_and_guards():
    """Test function terms and guarded quantifier bindings"""
    (formula,) = parse_clif("(forall ((x person)) (exists ((y person)) (= (mother x) y)))")
    assert formula == Forall(("X",), Implies(
        Predicate("person", (X,)),
        Exists(("Y",), And((Predicate("person", (Variable("Y"),)), Equality(Function("mother", (X,)), Variable("Y"))))),
    ))


def test_variable_name_clash():
    """Test names that mangle to the same variable stay apart"""
    (formula,) = parse_clif("(forall (x) (forall (X) (r x X)))")
    assert formula == Forall(("X",), Forall(("X_2",), Predicate("r", (X, Variable("X_2")))))


@pytest.mark.parametrize("text", [
    "(forall (x) (p x ...))",
    "(cl:module m (p a))",
    "((f a) b)",
    "(forall (p) (p a))",
])
def test_beyond_first_order(text):
    """Test sequence markers, modules and higher-order heads are refused"""
    with pytest.raises(BeyondFolError):
        parse_clif(text)


def test_arity_overload():
    """Test one predicate used with two arities"""
    with pytest.raises(ArityOverloadError) as exc:
        parse_clif("(p a) (p a b)")
    assert exc.value.name == "p"


@pytest.mark.parametrize("text", ["(p a", "(p a))", "(not (p a) (q a))", "()"])
def test_malformed(text):
    """Test unbalanced or malformed input"""
    with pytest.raises(ClifSyntaxError):
        parse_clif(text)


def test_error_position():
    """Test errors carry line and column"""
    with pytest.raises(ClifSyntaxError) as exc:
        parse_clif("(p a)\n  (not)")
    assert exc.value.line == 2


# Propositional truth tables against a direct evaluator

NAMES = ["a", "b", "c"]


def random_sentence(rng, depth):
    """CLIF text together with its meaning as a function of the true names"""
    if depth == 0 or rng.random() < 0.25:
        name = rng.choice(NAMES)
        return name, lambda true: name in true
    kind = rng.choice(["not", "and", "or", "if", "iff"])
    if kind == "not":
        text, meaning = random_sentence(rng, depth - 1)
        return f"(not {text})", lambda true: not meaning(true)
    if kind in ("and", "or"):
        parts = [random_sentence(rng, depth - 1) for _ in range(rng.randint(2, 3))]
        combine = all if kind == "and" else any
        text = f"({kind} {' '.join(t for t, _ in parts)})"
        return text, lambda true: combine(m(true) for _, m in parts)
    (left, lm), (right, rm) = random_sentence(rng, depth - 1), random_sentence(rng, depth - 1)
    if kind == "if":
        return f"(if {left} {right})", lambda true: (not lm(true)) or rm(true)
    return f"(iff {left} {right})", lambda true: lm(true) == rm(true)


def test_propositional_truth_tables():
    """Test parsed sentences agree with direct evaluation on every assignment"""
    rng = random.Random(3)
    for _ in range(200):
        text, meaning = random_sentence(rng, rng.randint(1, 4))
        (formula,) = parse_clif(text)
        for values in product([False, True], repeat=len(NAMES)):
            true = {name for name, value in zip(NAMES, values) if value}
            model = Model(1, {}, frozenset((name, ()) for name in true))
            assert evaluate(formula, model) == meaning(true), text
