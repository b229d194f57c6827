import pytest
from hypothesis import given, settings, strategies as st

from symunif.constructions import lambda_k, mu_k, nullary_formula, sigma_k, tau_k
from symunif.formula import BOT, TOP, P, X, And, Box, Neg, Or, boxplus, parse, var
from symunif.prover import Logic
from symunif.substitution import (
    IDENTITY, Indeterminate, Substitution, apply, compose, equivalent, is_unifier,
    more_general_with_witness, restrict_to,
)

Y = var("y")


def test_apply_examples():
    assert apply(Substitution({X: TOP}), parse("x & #p")) == parse("true & #p")
    assert apply(Substitution({X: BOT}), P) == P
    assert apply(sigma_k(1), X) == And(X, boxplus(BOT))


def test_apply_is_simultaneous():
    swap = Substitution({X: Y, Y: X})
    assert apply(swap, Or(X, Neg(Y))) == Or(Y, Neg(X))


def test_compose_order():
    assert compose(IDENTITY, sigma_k(1)) == sigma_k(1)
    s = compose(Substitution({X: Box(X)}), Substitution({X: BOT}))
    assert s.image(X) == Box(BOT)


def test_parameters_cannot_be_moved():
    with pytest.raises(ValueError):
        Substitution({P.atom: TOP})


def test_identity_entries_dropped():
    assert Substitution({X: X}) == IDENTITY
    assert Substitution({X: BOT, Y: Y}).support == {X.atom}


def test_json_round_trip():
    s = Substitution({X: sigma_k(2).image(X), Y: TOP})
    assert Substitution.loads(s.dumps()) == s
    assert s.to_dict()["map"]["y"] == "true"
    with pytest.raises(ValueError):
        Substitution.from_dict({"x": "true"})


def test_equivalence_examples():
    assert equivalent(Logic.KB, sigma_k(1), sigma_k(1)).value is True
    assert equivalent(Logic.KB, sigma_k(0), tau_k(0)).value is False
    assert equivalent(Logic.KB, Substitution({X: Neg(Neg(X))}), IDENTITY).value is True


@pytest.mark.parametrize("k,l", [(k, l) for l in range(3) for k in range(l + 1)])
def test_composition_equivalences(k, l):
    assert equivalent(Logic.KB, compose(tau_k(l), mu_k(k)), tau_k(k)).value is True
    assert equivalent(Logic.KB, compose(sigma_k(l), lambda_k(k)), sigma_k(k)).value is True


def test_more_general_examples():
    assert more_general_with_witness(Logic.KB, sigma_k(1), sigma_k(1), IDENTITY).value is True
    assert more_general_with_witness(Logic.KB, sigma_k(2), sigma_k(1), lambda_k(1)).value is True
    assert more_general_with_witness(Logic.KB, sigma_k(1), sigma_k(2), lambda_k(2)).value is False


def test_unifier_examples():
    assert is_unifier(Logic.KB, sigma_k(1), nullary_formula()).value is True
    assert is_unifier(Logic.KB, tau_k(2), nullary_formula()).value is True
    assert is_unifier(Logic.KB, IDENTITY, BOT).value is False
    assert is_unifier(Logic.KB, IDENTITY, nullary_formula()).value is False


def test_restrict_to():
    s = Substitution({X: BOT, Y: TOP})
    assert restrict_to(s, X) == Substitution({X: BOT})
    assert restrict_to(IDENTITY, parse("x & y")) == IDENTITY


def test_unknown_is_not_false():
    j = equivalent(Logic.KB, sigma_k(2), lambda_k(2), max_nodes=1)
    assert j.value is None and not j.determinate
    with pytest.raises(Indeterminate):
        bool(j)


_images = st.sampled_from([BOT, TOP, X, Y, P, Box(X), And(X, P), Neg(Y), boxplus(X)])
_subs = st.dictionaries(st.sampled_from([X.atom, Y.atom]), _images, max_size=2).map(Substitution)


@settings(max_examples=100, deadline=None)
@given(_subs, _subs, _subs)
def test_composition_is_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@settings(max_examples=100, deadline=None)
@given(_subs, _subs, _images)
def test_apply_respects_composition(a, b, f):
    assert apply(compose(a, b), f) == apply(b, apply(a, f))
