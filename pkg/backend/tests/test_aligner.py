import random

from fowl.logic.ast import Constant, Forall, Not, Predicate, Symbol, SymbolKind, Variable
from fowl.owl import model as m
from fowl.owl.annotations import signature_with_labels
from fowl.schemas import NamingMode
from fowl.services.aligner import (
    MatchKind, SignatureEntry, alignment_report, build_signature_map, compatible_kinds, levenshtein,
    normalize, readable_names, rewrite_formula, threshold,
)
from tests.conftest import load_fixture

BFO_PROPER_PART = "http://purl.obolibrary.org/obo/BFO_0000175"
EX = "http://example.org/align#"
X = Variable("X")


def entity(kind, local):
    return m.Entity(kind, m.Iri(EX + local))


def binary(name):
    return Symbol(name, SymbolKind.PREDICATE, 2)


def unary(name):
    return Symbol(name, SymbolKind.PREDICATE, 1)


def test_normalize():
    """Test case, quotes and separators are normalized away"""
    assert normalize("proper_part_of") == "proper part of"
    assert normalize("'Proper Part-of'") == "proper part of"
    assert normalize("Located__In") == "located in"
    assert normalize("") == ""


def test_levenshtein():
    """Test textbook edit distances"""
    assert levenshtein("kitten", "sitting") == 3
    assert levenshtein("", "abc") == 3
    assert levenshtein("part", "part") == 0


def test_levenshtein_is_a_metric():
    """Test symmetry and the triangle inequality on random strings"""
    rng = random.Random(1)
    words = ["".join(rng.choice("abc ") for _ in range(rng.randint(0, 6))) for _ in range(30)]
    for _ in range(300):
        a, b, c = rng.choice(words), rng.choice(words), rng.choice(words)
        assert levenshtein(a, b) == levenshtein(b, a)
        assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


def test_threshold():
    """Test the ratio bound and its floor"""
    assert threshold("part", 0.2, 1) == 1
    assert threshold("proper part of", 0.2, 1) == 3
    assert threshold("", 0.2, 1) == 1


def test_compatible_kinds():
    """Test arity decides which entity kinds a symbol may match"""
    assert compatible_kinds(Symbol("a", SymbolKind.CONSTANT, 0)) == (m.EntityKind.NAMED_INDIVIDUAL,)
    assert m.EntityKind.CLASS in compatible_kinds(unary("p"))
    assert m.EntityKind.OBJECT_PROPERTY in compatible_kinds(binary("p"))
    assert compatible_kinds(Symbol("p", SymbolKind.PREDICATE, 3)) == ()
    assert compatible_kinds(Symbol("f", SymbolKind.FUNCTION, 1)) == ()


def test_label_match_on_bfo():
    """Test the quoted label aligns to the BFO property at distance 0"""
    signature = signature_with_labels(load_fixture("bfo_proper_part.ofn"))
    result = build_signature_map([binary("proper part of"), binary("zzz_unmatched")], signature)

    entry = result.entries[binary("proper part of")]
    assert entry.entity.iri.value == BFO_PROPER_PART
    assert entry.match_kind == MatchKind.LABEL
    assert entry.distance == 0
    assert result.entries[binary("zzz_unmatched")].entity is None
    assert list(result.matched) == [binary("proper part of")]


def test_near_miss_within_threshold():
    """Test one edit on a short name is tolerated, more is not"""
    signature = [(entity(m.EntityKind.CLASS, "C1"), ["parts"])]
    result = build_signature_map([unary("part"), unary("partition")], signature)
    assert result.entries[unary("part")] == SignatureEntry(signature[0][0], MatchKind.LABEL, 1)
    assert result.entries[unary("partition")].match_kind == MatchKind.NONE


def test_kind_must_be_compatible():
    """Test a unary predicate never matches a property"""
    signature = [(entity(m.EntityKind.OBJECT_PROPERTY, "partOf"), ["part of"])]
    result = build_signature_map([unary("part of")], signature)
    assert result.entries[unary("part of")].entity is None


def test_local_name_and_exact_iri():
    """Test IRI local names and full IRIs both match"""
    overlaps = entity(m.EntityKind.OBJECT_PROPERTY, "overlaps")
    result = build_signature_map([binary("overlaps"), binary(EX + "overlaps")], [(overlaps, [])])
    assert result.entries[binary("overlaps")] == SignatureEntry(overlaps, MatchKind.IRI_SUFFIX, 0)
    assert result.entries[binary(EX + "overlaps")] == SignatureEntry(overlaps, MatchKind.IRI_SUFFIX, 0)


def test_reserved_symbols_pass_through():
    """Test reserved names are never aligned"""
    signature = [(entity(m.EntityKind.CLASS, "thing"), [])]
    result = build_signature_map([unary("thing")], signature, reserved={"thing"})
    assert result.entries[unary("thing")].entity is None


def test_rewrite_to_iris_and_readable_names():
    """Test rewriting the proper-part axiom under both naming modes"""
    signature = signature_with_labels(load_fixture("bfo_proper_part.ofn"))
    formula = Forall(("X",), Not(Predicate("proper part of", (X, X))))
    result = build_signature_map([binary("proper part of")], signature)

    with_iris = rewrite_formula(formula, result)
    assert with_iris == Forall(("X",), Not(Predicate(BFO_PROPER_PART, (X, X))))
    assert rewrite_formula(formula, result, NamingMode.READABLE) == Forall(
        ("X",), Not(Predicate("proper_part_of", (X, X)))
    )
    # already aligned input is left as it is
    assert rewrite_formula(with_iris, result) == with_iris
    assert rewrite_formula(with_iris, result, NamingMode.READABLE) == rewrite_formula(
        formula, result, NamingMode.READABLE
    )


def test_unmatched_symbols_are_kept():
    """Test unmatched names survive the rewrite unchanged"""
    result = build_signature_map([binary("zzz")], [])
    formula = Predicate("zzz", (Constant("a"), Constant("b")))
    assert rewrite_formula(formula, result, NamingMode.READABLE) == formula


def test_readable_names_are_injective():
    """Test clashing labels get distinct names and avoid reserved ones"""
    signature = [
        (entity(m.EntityKind.CLASS, "A"), ["cell"]),
        (entity(m.EntityKind.CLASS, "B"), ["Cell"]),
        (entity(m.EntityKind.CLASS, "C"), []),
        (entity(m.EntityKind.CLASS, "D"), ["thing"]),
    ]
    names = readable_names(signature, reserved={"thing"})
    assert names[signature[0][0]] == "cell"
    assert names[signature[1][0]] == "cell_2"
    assert names[signature[2][0]] == "c"
    assert names[signature[3][0]] == "thing_2"
    assert len(set(names.values())) == len(names)


def test_alignment_report():
    """Test the two-column report"""
    signature = signature_with_labels(load_fixture("bfo_proper_part.ofn"))
    result = build_signature_map([binary("proper part of"), binary("zzz")], signature)
    report = alignment_report(result)
    lines = report.splitlines()
    assert lines[0].startswith("symbol")
    assert lines[0].endswith("iri")
    assert any(f"proper part of/2  {BFO_PROPER_PART}  [label, distance 0]" in line for line in lines)
    assert any(line.startswith("zzz/2") and line.endswith("(unmatched)") for line in lines)
    assert alignment_report(build_signature_map([], signature)) == "No annotation symbols to align.\n"


# Randomized signatures

WORDS = ["part of", "proper part", "located in", "cell", "cells", "brain", "has input", "tissue"]
KINDS = [m.EntityKind.CLASS, m.EntityKind.OBJECT_PROPERTY, m.EntityKind.NAMED_INDIVIDUAL]


def random_signature(rng):
    signature = []
    for i in range(rng.randint(0, 5)):
        labels = rng.sample(WORDS, rng.randint(0, 2))
        signature.append((entity(rng.choice(KINDS), f"E{i}_{rng.choice(WORDS).replace(' ', '_')}"), labels))
    return signature


def random_symbols(rng):
    found = set()
    for _ in range(rng.randint(1, 4)):
        name = rng.choice(WORDS + ["cel", "brains", "zzz"])
        found.add(rng.choice([unary(name), binary(name), Symbol(name, SymbolKind.CONSTANT, 0)]))
    return found


def test_alignment_ignores_signature_order():
    """Test shuffling the OWL signature never changes the result"""
    rng = random.Random(2)
    for _ in range(1000):
        signature = random_signature(rng)
        symbols = random_symbols(rng)
        shuffled = list(signature)
        rng.shuffle(shuffled)
        first = build_signature_map(symbols, signature)
        second = build_signature_map(symbols, shuffled)
        assert first.entries == second.entries
        assert first.reverse == second.reverse


def test_exact_label_always_wins():
    """Test a compatible entity with an exact label forces distance 0"""
    rng = random.Random(4)
    for _ in range(1000):
        signature = random_signature(rng)
        for symbol, entry in build_signature_map(random_symbols(rng), signature).entries.items():
            kinds = compatible_kinds(symbol)
            exact = any(
                e.kind in kinds and normalize(symbol.name) in {normalize(label) for label in labels}
                for e, labels in signature
            )
            if exact:
                assert entry.entity is not None
                assert entry.distance == 0
