import pytest
from hypothesis import given, settings, strategies as st

from symunif.formula import (
    BOT, TOP, P, Q, X, And, Atom, Box, Diamond, FormulaSyntaxError, Iff, Imp, Neg, Or,
    atoms, boxminus, boxminus_bounded, boxminus_iter, boxplus, boxplus_bounded,
    boxplus_iter, degree, parameters, parse, to_text, var, variables,
)

Y = var("y")


def test_parse_examples():
    assert parse("~#p -> [] ~ [] #p") == Imp(Neg(P), Box(Neg(Box(P))))
    assert parse("false") == BOT
    assert parse("true") == TOP
    assert parse("[+] false") == boxplus(BOT)
    assert parse("[-] x") == boxminus(X)
    assert parse("[+^2] false") == boxplus_iter(2, BOT)
    assert parse("[-<2] x") == boxminus_bounded(2, X)
    assert parse("<> x") == Diamond(X)
    assert parse("x <-> y") == Iff(X, Y)


def test_precedence():
    assert parse("x | y & #p") == Or(X, And(Y, P))
    assert parse("x -> y -> #p") == Imp(X, Imp(Y, P))
    assert parse("~x & y") == And(Neg(X), Y)
    assert parse("[] x -> y") == Imp(Box(X), Y)
    assert parse("(x | y) & #p") == And(Or(X, Y), P)


@pytest.mark.parametrize("text", ["p", "q", "x &", "(x", "x y", "#", "[+^] x", "x $ y", ""])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse(text)


def test_syntax_error_has_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("x & & y")
    assert info.value.position == 4


def test_reserved_names_need_sigil():
    with pytest.raises(ValueError):
        Atom("var", "p")
    assert str(P) == "#p"


def test_printer_examples():
    assert to_text(BOT) == "false"
    assert to_text(Neg(P)) == "~#p"
    assert to_text(And(X, BOT)) == "x & false"
    assert to_text(Imp(X, Imp(Y, P))) == "x -> y -> #p"
    assert to_text(Imp(Imp(X, Y), P)) == "(x -> y) -> #p"


def test_boxplus_shape():
    z = And(Neg(P), Neg(Q))
    want = Imp(z, Box(Imp(And(P, Neg(Q)), Box(Imp(And(Neg(P), Q), Box(Imp(z, BOT)))))))
    assert boxplus(BOT) == want
    want_minus = Imp(z, Box(Imp(And(Neg(P), Q), Box(Imp(And(P, Neg(Q)), Box(Imp(z, TOP)))))))
    assert boxminus(TOP) == want_minus


def test_iterates_and_bounds():
    assert boxplus_iter(0, X) == X
    assert boxplus_iter(1, BOT) == boxplus(BOT)
    assert boxplus_bounded(0, X) == TOP
    assert boxplus_bounded(1, X) == And(TOP, X)
    assert boxminus_bounded(2, BOT) == And(And(TOP, BOT), boxminus(BOT))
    with pytest.raises(ValueError):
        boxplus_iter(-1, X)


def test_degree_examples():
    assert degree(X) == 0
    assert degree(boxplus(BOT)) == 3
    assert degree(boxplus_iter(2, BOT)) == 6
    assert degree(boxplus_bounded(0, X)) == 0
    assert degree(boxminus(X)) == 3
    assert degree(boxminus_iter(3, BOT)) == 9


def test_atom_sets():
    assert atoms(boxplus(BOT)) == {P.atom, Q.atom}
    assert variables(Imp(X, Box(Y))) == {X.atom, Y.atom}
    assert parameters(X) == frozenset()


def test_derived_connectives_expand():
    assert And(X, Y) == Neg(Or(Neg(X), Neg(Y)))
    assert Imp(X, Y) == Or(Neg(X), Y)
    assert Diamond(X) == Neg(Box(Neg(X)))
    assert (X & Y) == And(X, Y) and (~X) == Neg(X) and (X >> Y) == Imp(X, Y)


# -- properties ---------------------------------------------------------------

_leaves = st.sampled_from([X, Y, P, Q, BOT, TOP, var("z1")])


def _extend(children):
    return st.one_of(
        children.map(Neg), children.map(Box), children.map(Diamond), children.map(boxplus),
        children.map(boxminus),
        st.tuples(children, children).map(lambda t: Or(*t)),
        st.tuples(children, children).map(lambda t: And(*t)),
        st.tuples(children, children).map(lambda t: Imp(*t)),
        st.tuples(children, children).map(lambda t: Iff(*t)),
    )


formulas = st.recursive(_leaves, _extend, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(formulas)
def test_print_parse_round_trip(f):
    assert parse(to_text(f)) == f


@settings(max_examples=200, deadline=None)
@given(formulas, st.integers(0, 4))
def test_degree_identities(f, k):
    d = degree(f)
    assert degree(boxplus(f)) == d + 3
    assert degree(boxminus(f)) == d + 3
    assert degree(boxplus_iter(k, f)) == d + 3 * k
    assert degree(boxminus_iter(k, f)) == d + 3 * k
    bounded = 0 if k == 0 else d + 3 * (k - 1)
    assert degree(boxplus_bounded(k, f)) == bounded
    assert degree(boxminus_bounded(k, f)) == bounded


@settings(max_examples=100, deadline=None)
@given(formulas)
def test_equality_is_structural(f):
    g = parse(to_text(f))
    assert hash(f) == hash(g)
    assert {f: 1}[g] == 1
