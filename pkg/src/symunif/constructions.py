"""The substitution families, the nullary formula, and the bridge model.

All families act on the single variable ``x`` and fix every other variable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    BOT, TOP, X, And, Formula, Imp, Neg, P, Q,
    boxminus, boxminus_iter, boxplus, boxplus_iter,
)
from .kripke import (
    PLAIN, REFLEXIVE, DEFAULT_STATE_BUDGET, Frame, Model, PointedModel, State,
    disjoint_union, is_reflexive, is_symmetric, satisfies, symmetric_unravelling,
)
from .substitution import Substitution

PLUS = "plus"
MINUS = "minus"

SUITE_VARIABLE = X.atom


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"k must be a natural number, got {k!r}")


def sigma_image(k: int) -> Formula:
    _check_k(k)
    f = BOT
    for _ in range(k):
        f = And(X, boxplus(f))
    return f


def tau_image(k: int) -> Formula:
    _check_k(k)
    f = TOP
    for _ in range(k):
        f = Neg(And(Neg(X), boxminus(Neg(f))))
    return f


def sigma_k(k: int) -> Substitution:
    return Substitution({SUITE_VARIABLE: sigma_image(k)})


def tau_k(k: int) -> Substitution:
    return Substitution({SUITE_VARIABLE: tau_image(k)})


def lambda_k(k: int) -> Substitution:
    _check_k(k)
    return Substitution({SUITE_VARIABLE: And(X, boxplus_iter(k, BOT))})


def mu_k(k: int) -> Substitution:
    _check_k(k)
    return Substitution({SUITE_VARIABLE: Neg(And(Neg(X), boxminus_iter(k, BOT)))})


FAMILIES = {"sigma": sigma_k, "tau": tau_k, "lambda": lambda_k, "mu": mu_k}


def nullary_formula() -> Formula:
    """``(x -> [+] x) & (~x -> [-] ~x)``."""
    return And(Imp(X, boxplus(X)), Imp(Neg(X), boxminus(Neg(X))))


# -- witness paths and the bridge model --------------------------------------

_ZERO = And(Neg(P), Neg(Q))   # p^0 & q^0
_PQ0 = And(P, Neg(Q))         # p^1 & q^0
_P0Q = And(Neg(P), Q)         # p^0 & q^1


@dataclass(frozen=True)
class WitnessPath:
    """``v0, t1, u1, v1, ..., tk, uk, vk`` in a host model."""

    states: tuple
    polarity: str

    @property
    def k(self) -> int:
        return (len(self.states) - 1) // 3

    @property
    def end(self) -> State:
        return self.states[-1]


def _labels(polarity: str) -> tuple[Formula, Formula]:
    if polarity == PLUS:
        return _PQ0, _P0Q
    if polarity == MINUS:
        return _P0Q, _PQ0
    raise ValueError(f"polarity must be {PLUS!r} or {MINUS!r}")


def _ordered(m: Model, states) -> list:
    pos = {s: i for i, s in enumerate(m.frame.order)}
    return sorted(states, key=pos.__getitem__)


def extract_witness_path(m: Model, s: State, k: int, polarity: str) -> WitnessPath:
    """Follow the label pattern refuting ``[+^k] false`` (or ``[-^k] false``) from ``s``.

    Successors are tried in model order; the first one that keeps the rest of
    the pattern refutable is taken.
    """
    _check_k(k)
    first, second = _labels(polarity)
    iterate = boxplus_iter if polarity == PLUS else boxminus_iter
    if not is_symmetric(m):
        raise ValueError("witness paths are extracted from symmetric models")
    if not satisfies(m, s, _ZERO):
        raise ValueError("root must satisfy ~#p & ~#q")
    if satisfies(m, s, iterate(k, BOT)):
        raise ValueError(f"root satisfies the {polarity} box of depth {k}; no witness path")
    path = [s]
    v = s
    for i in range(k):
        rest = iterate(k - i - 1, BOT)
        step = None
        for t in _ordered(m, m.frame.successors(v)):
            if not satisfies(m, t, first):
                continue
            for u in _ordered(m, m.frame.successors(t)):
                if not satisfies(m, u, second):
                    continue
                for w in _ordered(m, m.frame.successors(u)):
                    if satisfies(m, w, _ZERO) and not satisfies(m, w, rest):
                        step = (t, u, w)
                        break
                if step:
                    break
            if step:
                break
        if step is None:
            raise AssertionError("pattern search failed although the root refutes the box")
        path.extend(step)
        v = step[2]
    return WitnessPath(tuple(path), polarity)


@dataclass(frozen=True)
class Bridge:
    model: Model
    root: State
    root_prime: State
    t: State
    u: State
    plus_path: WitnessPath
    minus_path: WitnessPath


def bridge_model(mp: PointedModel, mp_prime: PointedModel, k: int, mode: str = PLAIN,
                 depth: int | None = None, state_budget: int = DEFAULT_STATE_BUDGET) -> Bridge:
    """Join the unravellings of two pointed models through fresh states ``t`` and ``u``.

    ``mp`` must refute ``[+^k] false`` at its point and ``mp_prime`` must refute
    ``[-^k] false``; both points satisfy ``~#p & ~#q``.  The end of the plus
    path is linked to ``t`` (which carries ``#p``), the end of the minus path
    to ``u`` (which carries ``#q``), and ``t``, ``u`` see each other and
    themselves.
    """
    _check_k(k)
    if depth is None:
        depth = 6 * k + 2
    if depth < 3 * k:
        raise ValueError("unravelling depth must reach the path ends")
    for pm in (mp, mp_prime):
        if not is_symmetric(pm.model):
            raise ValueError("bridge inputs must be symmetric")
        if mode == REFLEXIVE and not is_reflexive(pm.model):
            raise ValueError("reflexive bridge needs reflexive inputs")
    plus = extract_witness_path(mp.model, mp.point, k, PLUS)
    minus = extract_witness_path(mp_prime.model, mp_prime.point, k, MINUS)
    left = symmetric_unravelling(mp.model, mp.point, depth, mode, state_budget)
    right = symmetric_unravelling(mp_prime.model, mp_prime.point, depth, mode, state_budget)
    union, (inj_l, inj_r) = disjoint_union([left.model, right.model])
    if len(union) + 2 > state_budget:
        raise ValueError(f"bridge exceeds the state budget of {state_budget}")
    t, u = ("t",), ("u",)
    end_l = inj_l[plus.states]
    end_r = inj_r[minus.states]
    rel = set(union.relation)
    rel |= {(end_l, t), (t, end_l), (t, t), (t, u), (u, t), (u, u), (u, end_r), (end_r, u)}
    val = {a: set(ext) for a, ext in union.valuation.items()}
    val.setdefault(P.atom, set()).add(t)
    val.setdefault(Q.atom, set()).add(u)
    model = Model(Frame(list(union.frame.order) + [t, u], rel), val)
    return Bridge(model, inj_l[left.point], inj_r[right.point], t, u, plus, minus)


__all__ = [
    "sigma_k", "tau_k", "lambda_k", "mu_k", "sigma_image", "tau_image", "FAMILIES",
    "nullary_formula", "WitnessPath", "extract_witness_path", "Bridge", "bridge_model",
    "PLUS", "MINUS", "SUITE_VARIABLE",
]
