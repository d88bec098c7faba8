import pytest
from hypothesis import given, strategies as st

from ballcert.fpgroups import (BUILTIN, COMMUTATORS, Presentation, UnknownGenerator, Word,
                               WordSyntaxError, check_hom, commutator, conjugate, evaluate,
                               parse_presentations, parse_word, substitute)
from ballcert.permgrp import Perm, compose

words = st.lists(st.tuples(st.sampled_from("pqr"), st.integers(-3, 3)), max_size=12).map(
    lambda s: Word(tuple(s)))


def test_free_reduction():
    w = Word((("a", 2), ("a", -2), ("b", 1), ("c", 0), ("b", 2)))
    assert w.syllables == (("b", 3),)
    assert parse_word("a a^-1") == Word()
    assert str(Word()) == "1"


@pytest.mark.parametrize("text, expected", [
    ("p*r^-1", (("p", 1), ("r", -1))),
    ("prq", (("p", 1), ("r", 1), ("q", 1))),
    ("(pr)^-1 q^2 (pr)", (("r", -1), ("p", -1), ("q", 2), ("p", 1), ("r", 1))),
    ("(prq)^-1", (("q", -1), ("r", -1), ("p", -1))),
    ("r^6", (("r", 6),)),
    ("q^(-2)", (("q", -2),)),
    ("[g,h]", (("g", 1), ("h", 1), ("g", -1), ("h", -1))),
    ("(h g h^-1)^-1", (("h", 1), ("g", -1), ("h", -1))),
])
def test_parse(text, expected):
    assert parse_word(text).syllables == expected


def test_parse_multichar_generators():
    w = parse_word("t1 t2 s1^-1", ["t1", "t2", "s1"])
    assert [g for g, _ in w.syllables] == ["t1", "t2", "s1"]
    assert parse_word("e10 e1", [f"e{i}" for i in range(1, 13)]).syllables == (("e10", 1), ("e1", 1))


@pytest.mark.parametrize("bad", ["(p", "p^", "p)", "[p q]", "p^x", "#"])
def test_parse_errors(bad):
    with pytest.raises(WordSyntaxError):
        parse_word(bad)


def test_unknown_generator_with_declared_gens():
    with pytest.raises(WordSyntaxError):
        parse_word("x", ["p", "q"])


@given(words)
def test_str_round_trip(w):
    assert parse_word(str(w)) == w


@given(words, words)
def test_inverse_and_associativity(u, v):
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert u * u.inverse() == Word()
    assert len(u * v) <= len(u) + len(v)


def test_commutator_conventions():
    x, y = Word.gen("x"), Word.gen("y")
    assert str(commutator(x, y)) == "x*y*x^-1*y^-1"
    assert str(COMMUTATORS["x^-1 y^-1 x y"](x, y)) == "x^-1*y^-1*x*y"
    assert conjugate(x, y) == parse_word("y x y^-1")


def test_builtin_presentations():
    assert BUILTIN["G0"].gens == ("p", "q", "r")
    assert [n for _, n in BUILTIN["G0"].elliptic] == [2, 3, 12]
    assert len(BUILTIN["G4"].gens) == 14
    assert [n for _, n in BUILTIN["G4"].elliptic] == [2] * 12
    for p in BUILTIN.values():
        assert parse_presentations(p.to_text())[p.name] == p


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation("X", ("a", "a"))
    with pytest.raises(ValueError):
        Presentation("X", ("a",), (parse_word("b"),))
    with pytest.raises(ValueError):
        Presentation("X", ("a",), (), ((parse_word("a"), 1),))
    with pytest.raises(WordSyntaxError):
        parse_presentations("gens a\n")
    with pytest.raises(WordSyntaxError):
        parse_presentations("group X\nbogus a\n")


def test_substitute():
    w = substitute(parse_word("a b^-1"), {"a": parse_word("pq"), "b": parse_word("r")})
    assert w == parse_word("p q r^-1")
    with pytest.raises(UnknownGenerator) as info:
        substitute(parse_word("z"), {})
    assert info.value.symbol == "z"


def test_evaluate_and_check_hom():
    images = {"p": 1, "q": 2, "r": 9}  # Z/12, additively
    add = lambda a, b: (a + b) % 12  # noqa: E731
    assert evaluate(parse_word("p q^-1 r"), images, add, lambda a: -a % 12, 0) == 8
    # p, q, r -> 6, 4, 2 in Z/12 respects every relator
    ok = {"p": 6, "q": 4, "r": 2}
    report = check_hom(BUILTIN["G0"], ok, add, lambda a: a == 0, lambda a: -a % 12, 0)
    assert report.ok
    bad = check_hom(BUILTIN["G0"], images, add, lambda a: a == 0, lambda a: -a % 12, 0)
    assert not bad.ok and parse_word("p^2") in bad.failing
    with pytest.raises(UnknownGenerator):
        check_hom(BUILTIN["G0"], {"p": 0}, add, lambda a: a == 0, lambda a: -a % 12, 0)


def test_check_hom_permutations():
    rho = {"g": Perm.parse("(1 2 3)", 4), "h": Perm.parse("(1 4 2)", 4)}
    assert check_hom(BUILTIN["G2"], rho, compose, Perm.is_identity, Perm.inverse, Perm.identity(4)).ok
