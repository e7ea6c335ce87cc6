import pytest

from su3fr import fp
from su3fr.fp import PresentationError, Word


def test_parse_word_terms():
    g = ("x", "y")
    assert fp.parse_word("x y^-1", g) == Word((1, -2))
    assert fp.parse_word("(x y)^2", g) == Word((1, 2, 1, 2))
    assert fp.parse_word("[x, y]", g) == Word((1, 2, -1, -2))
    assert fp.parse_word("x^-2", g) == Word((-1, -1))
    assert fp.parse_word("x^0", g) == Word(())


def test_equation_becomes_relator():
    P = fp.parse_presentation("gens: x y; rel: x y = y x")
    assert P.relators[0] == Word((1, 2, -1, -2))
    assert P.relator_text(0) == "x y = y x"


@pytest.mark.parametrize("text", [
    "rel: x^2",
    "gens: x; gens: y",
    "gens: x; rel: y^2",
    "gens: x; rel: x^",
    "gens: x; rel: (x",
    "gens: x; foo: x",
    "gens: x x",
])
def test_malformed_presentations(text):
    with pytest.raises(PresentationError):
        fp.parse_presentation(text)


def test_word_reduction():
    w = Word((1, 2, -2, -1, 3))
    assert w.reduced() == Word((3,))
    assert Word((-1, 2, 3, 1)).cyclically_reduced() == Word((2, 3))
    assert Word((1, 1, -2)).format(["a", "b"]) == "a^2 b^-1"
    with pytest.raises(ValueError):
        Word((0,))


def test_todd_coxeter_small_groups():
    assert fp.todd_coxeter(fp.parse_presentation("gens: s t; rel: s^2; rel: t^3; rel: (s t)^2")) == 6
    z18z6 = fp.parse_presentation("gens: a b; rel: a^18; rel: b^6; rel: [a, b]")
    assert fp.todd_coxeter(z18z6) == 108
    assert fp.todd_coxeter(fp.parse_presentation("gens: a; rel: a^5; rel: a^3")) == 1


def test_todd_coxeter_cap():
    with pytest.raises(fp.CosetCapExceeded):
        fp.todd_coxeter(fp.parse_presentation("gens: a b; rel: a^18; rel: b^6; rel: [a, b]"), cap=20)


@pytest.mark.parametrize("pres, assign", [
    (fp.fr648_presentation, fp.fr648_assignment),
    (fp.d18_presentation, fp.d18_assignment),
    (fp.fr162_presentation, fp.fr162_assignment),
])
def test_relators_hold_on_matrices(pres, assign):
    assert fp.check_presentation(assign(), pres()) == []


def test_corrupted_relator_is_reported():
    text = fp.FR648_TEXT.replace("rel: c6^6;", "rel: c6^5;")
    P = fp.parse_presentation(text)
    assert fp.check_presentation(fp.fr648_assignment(), P) == [0]


def test_assignment_must_match_generators():
    with pytest.raises(ValueError):
        fp.check_presentation(fp.fr162_assignment(), fp.fr648_presentation())


@pytest.mark.parametrize("lhs, rhs", [
    ("h3 c18 h3^-1", "c18^10 c6^7"),
    ("h1 c6 h1^-1", "c6^5 c18^6"),
    ("h1 c6 h1^-1", "c6^-1 c18^6"),
    ("h3 c6 h3^-1", "c6^-5 c18^-3"),
    ("h1 c18 h1^-1", "c6^3 c18"),
])
def test_conjugation_identities(lhs, rhs):
    P = fp.fr648_presentation()
    assert fp.verify_identity(fp.fr648_assignment(), P.word(lhs), P.word(rhs))


def test_false_identity_is_rejected():
    P = fp.fr648_presentation()
    assert not fp.verify_identity(fp.fr648_assignment(), P.word("h3 c6 h3^-1"), P.word("c6"))


def test_commutator_helper():
    x, y = Word((1,)), Word((2,))
    assert fp.commutator(x, y) == Word((1, 2, -1, -2))
