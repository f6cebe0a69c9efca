import pytest

from fowl.core.errors import UnsupportedConstructError
from fowl.logic.ast import (
    And, Constant, Equality, Exists, FalseFormula, Forall, Function, Implies, Not, Or, Predicate, TrueFormula, Variable,
)
from fowl.services.model_finder import Model, constants_of, evaluate, find_model, is_satisfiable

X, Y = Variable("X"), Variable("Y")
A, B = Constant("a"), Constant("b")


def p(name, *args):
    return Predicate(name, tuple(args))


def test_empty_theory_has_a_one_element_model():
    """Test the smallest model is found first"""
    model = find_model([])
    assert model == Model(1, {}, frozenset())


def test_ground_facts():
    """Test a model makes the facts true and nothing else"""
    model = find_model([p("p", A), Not(p("q", A))])
    assert model.size == 1
    assert model.holds("p", model.constants["a"])
    assert not model.holds("q", model.constants["a"])


def test_false_and_contradiction():
    """Test unsatisfiable theories"""
    assert find_model([FalseFormula()]) is None
    assert find_model([p("p", A), Not(p("p", A))]) is None
    assert is_satisfiable([TrueFormula()])


def test_distinct_constants_need_a_bigger_domain():
    """Test a != b forces two elements"""
    model = find_model([Not(Equality(A, B))])
    assert model.size == 2
    assert model.constants["a"] != model.constants["b"]


def test_size_bound():
    """Test three distinct constants do not fit in two elements"""
    c = Constant("c")
    theory = [Not(Equality(A, B)), Not(Equality(B, c)), Not(Equality(A, c))]
    assert find_model(theory, max_size=2) is None
    assert find_model(theory, max_size=3).size == 3


def test_quantifiers():
    """Test existential witnesses and universal constraints"""
    theory = [
        Forall(("X",), Exists(("Y",), p("r", X, Y))),
        Forall(("X",), Not(p("r", X, X))),
    ]
    model = find_model(theory)
    assert model.size == 2
    assert all(evaluate(formula, model) for formula in theory)


def test_transitivity_entailment():
    """Test a transitive chain has no countermodel"""
    c = Constant("c")
    theory = [
        Forall(("X", "Y", "Z"), Implies(And((p("r", X, Y), p("r", Y, Variable("Z")))), p("r", X, Variable("Z")))),
        p("r", A, B),
        p("r", B, c),
    ]
    assert find_model(theory + [Not(p("r", A, c))]) is None
    assert find_model(theory + [Not(p("r", c, A))]) is not None


def test_evaluate_treats_missing_atoms_as_false():
    """Test evaluation in a given model"""
    model = Model(2, {"a": 0, "b": 1}, frozenset({("p", (0,))}))
    assert evaluate(p("p", A), model)
    assert not evaluate(p("p", B), model)
    assert evaluate(Exists(("X",), Not(p("p", X))), model)
    assert not evaluate(Forall(("X",), p("p", X)), model)
    assert evaluate(Or((p("p", B), Not(Equality(A, B)))), model)


def test_constants_in_first_occurrence_order():
    """Test constants are collected from atoms and equations"""
    assert constants_of([p("r", B, X), Equality(A, B)]) == ["b", "a"]


def test_function_symbols_are_unsupported():
    """Test model search refuses function terms"""
    with pytest.raises(UnsupportedConstructError):
        find_model([p("p", Function("f", (A,)))])
