"""Registry of lemma checks and the suite runner.

Each registry entry is keyed by a stable lemma label and expands into one
check per parameter instance.  A check passes
only when every prover verdict is exactly the predicted one; an ``Unknown``
verdict makes the check indeterminate, never passing.

Universally quantified statements are checked on finite instance families;
such checks are tagged ``instance evidence, not proof``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable

from .constructions import (
    MINUS, PLUS, bridge_model, extract_witness_path, lambda_k, mu_k,
    nullary_formula, sigma_image, sigma_k, tau_image, tau_k,
)
from .formula import (
    BOT, TOP, X, And, Formula, Iff, Imp, Neg, Or, P, Q, Box, Diamond, var,
    boxminus, boxminus_bounded, boxminus_iter, boxplus, boxplus_bounded, boxplus_iter,
    degree, to_text,
)
from .kripke import (
    PLAIN, REFLEXIVE, Frame, Model, PointedModel, chain_model, is_reflexive,
    is_symmetric, model_to_dict, satisfies,
)
from .prover import DEFAULT_MAX_NODES, Invalid, Logic, Unknown, Valid, decide
from .substitution import (
    IDENTITY, Substitution, apply, compose, equivalent, is_unifier,
    more_general_with_witness, restrict_to,
)

PASS, FAIL, INDETERMINATE = "pass", "fail", "indeterminate"

EXACT = "exact"
INSTANCES = "instance evidence, not proof"
CORE = "prover-reducible core, instance evidence"
CONSTRUCTIVE = "constructive content only, instance evidence"
OUT_OF_SCOPE = "out of scope: meta-theorem"


@dataclass
class LemmaCheck:
    id: str
    params: dict
    status: str
    evidence: list = field(default_factory=list)
    scope: str = INSTANCES

    def to_dict(self) -> dict:
        return {"id": self.id, "params": self.params, "status": self.status,
                "scope": self.scope, "evidence": self.evidence}


@dataclass
class LemmaReport:
    config: dict
    checks: list[LemmaCheck]

    @property
    def passed(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, INDETERMINATE: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_dict(self) -> dict:
        return {"config": self.config, "summary": self.counts(),
                "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


@dataclass(frozen=True)
class Entry:
    id: str
    summary: str
    scope: str
    grid: Callable[[int, int], list] | None = None
    run: Callable | None = None


class _Ctx:
    """Per-check evidence collector."""

    def __init__(self, logic: Logic, max_nodes: int, rng: random.Random):
        self.logic = logic
        self.max_nodes = max_nodes
        self.rng = rng
        self.evidence: list[dict] = []
        self.outcomes: list[bool | None] = []

    def record(self, ok: bool | None, **info):
        info["ok"] = ok
        self.evidence.append(info)
        self.outcomes.append(ok)

    def expect(self, name: str, f: Formula, valid: bool):
        v = decide(self.logic, f, max_nodes=self.max_nodes)
        info = {"goal": name, "formula": to_text(f), "degree": degree(f),
                "expected": "valid" if valid else "invalid", "verdict": v.status,
                "expansions": v.stats.get("expansions")}
        if isinstance(v, Invalid):
            info["countermodel"] = model_to_dict(v.counter.model, v.counter.point)
        ok = None if isinstance(v, Unknown) else (isinstance(v, Valid) == valid)
        self.record(ok, **info)
        return None if isinstance(v, Unknown) else isinstance(v, Valid)

    def judge(self, name: str, judgement, expected: bool):
        ok = None if judgement.value is None else judgement.value == expected
        verdicts = [{"part": part, "verdict": v.status, "expansions": v.stats.get("expansions")}
                    for part, v in judgement.evidence]
        self.record(ok, goal=name, expected=expected, value=judgement.value, verdicts=verdicts)
        return judgement.value

    def fact(self, name: str, value: bool, expected: bool = True, **info):
        self.record(value == expected, goal=name, expected=expected, value=value, **info)

    def status(self) -> str:
        if any(o is False for o in self.outcomes):
            return FAIL
        if any(o is None for o in self.outcomes):
            return INDETERMINATE
        return PASS


# -- parameter grids ----------------------------------------------------------

def _ks(km, lm):
    return [{"k": k} for k in range(km + 1)]


def _kl(pred):
    def grid(km, lm):
        return [{"k": k, "l": l} for k in range(km + 1) for l in range(lm + 1) if pred(k, l)]
    return grid


def _families(km, lm):
    return [{"k": k, "family": fam} for fam in ("sigma", "tau") for k in range(km + 1)]


def _phi_pool(km: int) -> dict[str, Formula]:
    pool = {"false": BOT, "true": TOP, "x": X, "#p": P}
    for j in range(km + 1):
        pool[f"sigma_{j}(x)"] = sigma_image(j)
        pool[f"tau_{j}(x)"] = tau_image(j)
    return pool


def _pool_grid(km, lm):
    return [{"phi": name} for name in _phi_pool(km)]


def _basic_pool_grid(km, lm):
    return [{"k": k, "phi": name} for k in range(km + 1) for name in ("false", "true", "x", "#p")]


# -- checks ------------------------------------------------------------------

def _random_formula(rng: random.Random, depth: int, size: int) -> Formula:
    leaves = [X, var("y"), P, Q, BOT, TOP]
    if size <= 1 or rng.random() < 0.2:
        return rng.choice(leaves)
    r = rng.random()
    if r < 0.2:
        return Neg(_random_formula(rng, depth, size - 1))
    if r < 0.45 and depth > 0:
        return Box(_random_formula(rng, depth - 1, size - 1))
    if r < 0.55 and depth > 0:
        return boxplus(_random_formula(rng, depth - 1, size - 1))
    op = rng.choice([Or, And, Imp])
    return op(_random_formula(rng, depth, size // 2), _random_formula(rng, depth, size // 2))


def check_degree(c: _Ctx, k: int):
    pool = [BOT, TOP, X, P, sigma_image(min(k, 2))]
    pool += [_random_formula(c.rng, 3, 10) for _ in range(10)]
    for f in pool:
        d = degree(f)
        c.fact("deg [+] f = deg f + 3", degree(boxplus(f)) == d + 3, formula=to_text(f))
        c.fact("deg [-] f = deg f + 3", degree(boxminus(f)) == d + 3, formula=to_text(f))
        c.fact("deg [+^k] f = deg f + 3k", degree(boxplus_iter(k, f)) == d + 3 * k, formula=to_text(f))
        c.fact("deg [-^k] f = deg f + 3k", degree(boxminus_iter(k, f)) == d + 3 * k, formula=to_text(f))
        want = 0 if k == 0 else d + 3 * (k - 1)
        c.fact("deg [+<k] f", degree(boxplus_bounded(k, f)) == want, formula=to_text(f))
        c.fact("deg [-<k] f", degree(boxminus_bounded(k, f)) == want, formula=to_text(f))


def check_easy_a(c: _Ctx, k: int):
    c.expect("[+^k] true", boxplus_iter(k, TOP), True)
    c.expect("[-^k] true", boxminus_iter(k, TOP), True)
    c.expect("[+<k] true", boxplus_bounded(k, TOP), True)
    c.expect("[-<k] true", boxminus_bounded(k, TOP), True)


def _chain_replay(c: _Ctx, size: int, plus: Formula, minus: Formula):
    m = chain_model(size)
    c.fact("chain frame symmetric", is_symmetric(m))
    c.fact("chain frame reflexive", is_reflexive(m))
    c.fact("chain refutes plus goal at 0", satisfies(m, 0, plus), expected=False, chain=size)
    c.fact("chain refutes minus goal at 3k", satisfies(m, 3 * size, minus), expected=False, chain=size)


def check_easy_b(c: _Ctx, k: int):
    c.expect("[+^k] false", boxplus_iter(k, BOT), False)
    c.expect("[-^k] false", boxminus_iter(k, BOT), False)
    _chain_replay(c, k, boxplus_iter(k, BOT), boxminus_iter(k, BOT))


def check_box_less_than(c: _Ctx, k: int, phi: str):
    f = _phi_pool(0)[phi]
    c.expect("[+<k+1] f <-> f & [+][+<k] f",
             Iff(boxplus_bounded(k + 1, f), And(f, boxplus(boxplus_bounded(k, f)))), True)
    c.expect("[-<k+1] f <-> f & [-][-<k] f",
             Iff(boxminus_bounded(k + 1, f), And(f, boxminus(boxminus_bounded(k, f)))), True)


def check_k_l_boxes(c: _Ctx, k: int, l: int):
    plus = Imp(boxplus_iter(k, BOT), boxplus_iter(l, BOT))
    minus = Imp(boxminus_iter(k, BOT), boxminus_iter(l, BOT))
    c.expect("[+^k] false -> [+^l] false", plus, False)
    c.expect("[-^k] false -> [-^l] false", minus, False)
    _chain_replay(c, l, plus, minus)


def check_tense(c: _Ctx, phi: str):
    f = _phi_pool(2)[phi]
    a = decide(c.logic, Imp(f, boxplus(f)), max_nodes=c.max_nodes)
    b = decide(c.logic, Imp(Neg(f), boxminus(Neg(f))), max_nodes=c.max_nodes)
    if isinstance(a, Unknown) or isinstance(b, Unknown):
        ok = None
    else:
        ok = isinstance(a, Valid) == isinstance(b, Valid)
    c.record(ok, goal="(f -> [+] f) valid iff (~f -> [-] ~f) valid",
             forward=a.status, backward=b.status)


def _substitution_pool(c: _Ctx) -> dict[str, Substitution]:
    pool = {"id": IDENTITY, "x->~~x": Substitution({X: Neg(Neg(X))}),
            "x->x&x": Substitution({X: And(X, X)})}
    for j in range(3):
        pool[f"sigma_{j}"] = sigma_k(j)
        pool[f"tau_{j}"] = tau_k(j)
        pool[f"lambda_{j}"] = lambda_k(j)
    for i in range(3):
        pool[f"random_{i}"] = Substitution({X: _random_formula(c.rng, 1, 6)})
    return pool


def check_simeq(c: _Ctx):
    pool = _substitution_pool(c)
    names = list(pool)
    eq = {}
    for a in names:
        for b in names:
            eq[a, b] = equivalent(c.logic, pool[a], pool[b], max_nodes=c.max_nodes).value
    if any(v is None for v in eq.values()):
        c.record(None, goal="equivalence matrix", note="prover returned Unknown")
        return
    c.fact("reflexive", all(eq[a, a] for a in names))
    c.fact("symmetric", all(eq[a, b] == eq[b, a] for a in names for b in names))
    c.fact("transitive", all(not (eq[a, b] and eq[b, d]) or eq[a, d]
                             for a in names for b in names for d in names))
    c.fact("x->~~x equivalent to identity", eq["x->~~x", "id"])
    c.fact("x->x&x equivalent to identity", eq["x->x&x", "id"])
    for name in names:
        c.judge(f"{name} more general than itself (identity witness)",
                more_general_with_witness(c.logic, pool[name], pool[name], IDENTITY,
                                          max_nodes=c.max_nodes), True)
    # sigma_2 <= sigma_1 via lambda_1 and sigma_1 <= sigma_0 via lambda_0 compose
    c.judge("sigma_2 <= sigma_1 via lambda_1",
            more_general_with_witness(c.logic, sigma_k(2), sigma_k(1), lambda_k(1), max_nodes=c.max_nodes), True)
    c.judge("sigma_1 <= sigma_0 via lambda_0",
            more_general_with_witness(c.logic, sigma_k(1), sigma_k(0), lambda_k(0), max_nodes=c.max_nodes), True)
    c.judge("sigma_2 <= sigma_0 via lambda_1 then lambda_0",
            more_general_with_witness(c.logic, sigma_k(2), sigma_k(0), compose(lambda_k(1), lambda_k(0)),
                                      max_nodes=c.max_nodes), True)
    c.judge("tau_2 <= tau_0 via mu_1 then mu_0",
            more_general_with_witness(c.logic, tau_k(2), tau_k(0), compose(mu_k(1), mu_k(0)),
                                      max_nodes=c.max_nodes), True)


def check_normal_unifiers(c: _Ctx, k: int, family: str):
    phi = nullary_formula()
    y = var("y")
    core = sigma_k(k) if family == "sigma" else tau_k(k)
    extra = Substitution({y: Box(BOT)})
    s = compose(core, extra)
    c.judge("s unifies phi", is_unifier(c.logic, s, phi, max_nodes=c.max_nodes), True)
    r = restrict_to(s, phi)
    c.fact("restriction fixes variables outside phi", r.image(y) == y)
    c.judge("restriction unifies phi", is_unifier(c.logic, r, phi, max_nodes=c.max_nodes), True)
    c.judge("restriction more general than s (witness y -> []false)",
            more_general_with_witness(c.logic, r, s, extra, max_nodes=c.max_nodes), True)


def _sx(k):
    return sigma_image(k)


def _ntx(k):
    return Neg(tau_image(k))


def check_to_be_used_later(c: _Ctx, k: int):
    c.expect("[+<k] x & [+^k] false -> sigma_k(x)",
             Imp(And(boxplus_bounded(k, X), boxplus_iter(k, BOT)), _sx(k)), True)
    c.expect("[-<k] ~x & [-^k] false -> ~tau_k(x)",
             Imp(And(boxminus_bounded(k, Neg(X)), boxminus_iter(k, BOT)), _ntx(k)), True)


def check_imply_x(c: _Ctx, k: int):
    c.expect("sigma_k(x) -> x", Imp(_sx(k), X), True)
    c.expect("~tau_k(x) -> ~x", Imp(_ntx(k), Neg(X)), True)


def check_imply_box_x(c: _Ctx, k: int):
    c.expect("sigma_k(x) -> [+] sigma_k(x)", Imp(_sx(k), boxplus(_sx(k))), True)
    c.expect("~tau_k(x) -> [-] ~tau_k(x)", Imp(_ntx(k), boxminus(_ntx(k))), True)


def check_box_bot(c: _Ctx, k: int, l: int):
    c.expect("sigma_k(x) -> [+^l] false", Imp(_sx(k), boxplus_iter(l, BOT)), True)
    c.expect("~tau_k(x) -> [-^l] false", Imp(_ntx(k), boxminus_iter(l, BOT)), True)


def check_box_bot_greater(c: _Ctx, k: int, l: int):
    c.expect("sigma_k(x) -> [+^l] false", Imp(_sx(k), boxplus_iter(l, BOT)), False)
    c.expect("~tau_k(x) -> [-^l] false", Imp(_ntx(k), boxminus_iter(l, BOT)), False)
    top_x = Substitution({X: TOP})
    bot_x = Substitution({X: BOT})
    c.expect("[+^k] false -> sigma_k(true)", Imp(boxplus_iter(k, BOT), apply(top_x, _sx(k))), True)
    c.expect("[-^k] false -> ~tau_k(false)", Imp(boxminus_iter(k, BOT), apply(bot_x, _ntx(k))), True)


def check_not_the_case(c: _Ctx, k: int, l: int):
    c.expect("[+^k] false | ~tau_l(x)", Or(boxplus_iter(k, BOT), _ntx(l)), False)
    c.expect("[-^k] false | sigma_l(x)", Or(boxminus_iter(k, BOT), _sx(l)), False)


def check_pre1(c: _Ctx, k: int, l: int):
    c.expect("[+^k] false & sigma_l(x) <-> sigma_k(x)", Iff(And(boxplus_iter(k, BOT), _sx(l)), _sx(k)), True)
    c.expect("[-^k] false & ~tau_l(x) <-> ~tau_k(x)", Iff(And(boxminus_iter(k, BOT), _ntx(l)), _ntx(k)), True)


def check_pre2(c: _Ctx, k: int, l: int):
    c.expect("lambda_l(sigma_k(x)) <-> sigma_k(x)", Iff(apply(lambda_k(l), _sx(k)), _sx(k)), True)
    c.expect("mu_l(tau_k(x)) <-> tau_k(x)", Iff(apply(mu_k(l), tau_image(k)), tau_image(k)), True)


def check_pre3(c: _Ctx, k: int, l: int):
    c.expect("lambda_l(sigma_k(x)) <-> sigma_l(x)", Iff(apply(lambda_k(l), _sx(k)), _sx(l)), True)
    c.expect("mu_l(tau_k(x)) <-> tau_l(x)", Iff(apply(mu_k(l), tau_image(k)), tau_image(l)), True)


def check_composition(c: _Ctx, k: int, l: int):
    c.judge("sigma_l . lambda_k ~ sigma_k",
            equivalent(c.logic, compose(sigma_k(l), lambda_k(k)), sigma_k(k), max_nodes=c.max_nodes), True)
    c.judge("tau_l . mu_k ~ tau_k",
            equivalent(c.logic, compose(tau_k(l), mu_k(k)), tau_k(k), max_nodes=c.max_nodes), True)


def check_0kq(c: _Ctx, k: int, l: int):
    c.judge("sigma_l <= sigma_k via lambda_k",
            more_general_with_witness(c.logic, sigma_k(l), sigma_k(k), lambda_k(k), max_nodes=c.max_nodes), True)
    c.judge("tau_l <= tau_k via mu_k",
            more_general_with_witness(c.logic, tau_k(l), tau_k(k), mu_k(k), max_nodes=c.max_nodes), True)


def check_0kr(c: _Ctx, k: int, l: int):
    # core: (sigma_l(x) -> [+^k] false) fails for l > k
    c.expect("sigma_l(x) -> [+^k] false", Imp(_sx(l), boxplus_iter(k, BOT)), False)
    c.expect("~tau_l(x) -> [-^k] false", Imp(_ntx(l), boxminus_iter(k, BOT)), False)
    c.expect("sigma_k(x) -> [+^k] false", Imp(_sx(k), boxplus_iter(k, BOT)), True)
    c.expect("~tau_k(x) -> [-^k] false", Imp(_ntx(k), boxminus_iter(k, BOT)), True)
    c.judge("lambda_l is no witness for sigma_k <= sigma_l",
            more_general_with_witness(c.logic, sigma_k(k), sigma_k(l), lambda_k(l), max_nodes=c.max_nodes), False)
    c.judge("mu_l is no witness for tau_k <= tau_l",
            more_general_with_witness(c.logic, tau_k(k), tau_k(l), mu_k(l), max_nodes=c.max_nodes), False)


def check_0kqr(c: _Ctx, k: int, l: int):
    c.expect("sigma_k(x) -> [+^k] false", Imp(_sx(k), boxplus_iter(k, BOT)), True)
    c.expect("~tau_k(x) -> [-^k] false", Imp(_ntx(k), boxminus_iter(k, BOT)), True)
    c.expect("[+^k] false | ~tau_l(x)", Or(boxplus_iter(k, BOT), _ntx(l)), False)
    c.expect("[-^k] false | sigma_l(x)", Or(boxminus_iter(k, BOT), _sx(l)), False)


def check_every_unifier(c: _Ctx, k: int, j: int, family: str):
    u = sigma_k(j) if family == "sigma" else tau_k(j)
    c.judge("unifies phi", is_unifier(c.logic, u, nullary_formula(), max_nodes=c.max_nodes), True)
    ux = u.image(X)
    c.expect("u(x) -> [+<k] u(x)", Imp(ux, boxplus_bounded(k, ux)), True)
    c.expect("~u(x) -> [-<k] ~u(x)", Imp(Neg(ux), boxminus_bounded(k, Neg(ux))), True)


def check_0k(c: _Ctx, k: int, family: str):
    u = sigma_k(k) if family == "sigma" else tau_k(k)
    c.judge(f"{family}_k unifies phi", is_unifier(c.logic, u, nullary_formula(), max_nodes=c.max_nodes), True)


def check_4k(c: _Ctx, k: int, l: int, family: str):
    u = sigma_k(l) if family == "sigma" else tau_k(l)
    ux = u.image(X)
    c.judge("u unifies phi", is_unifier(c.logic, u, nullary_formula(), max_nodes=c.max_nodes), True)
    # item 1: sigma_k against u; item 2: tau_k against u
    plus_pred = family == "sigma" and l <= k
    minus_pred = family == "tau" and l <= k
    a = c.judge("(a) sigma_k . u ~ u",
                equivalent(c.logic, compose(sigma_k(k), u), u, max_nodes=c.max_nodes), plus_pred)
    b = c.judge("(b) sigma_k <= u with witness u",
                more_general_with_witness(c.logic, sigma_k(k), u, u, max_nodes=c.max_nodes), plus_pred)
    cc = c.expect("(c) u(x) -> [+^k] false", Imp(ux, boxplus_iter(k, BOT)), plus_pred)
    if None not in (a, b, cc):
        c.fact("(a) iff (c)", a == cc)
    d = c.judge("(d) tau_k . u ~ u",
                equivalent(c.logic, compose(tau_k(k), u), u, max_nodes=c.max_nodes), minus_pred)
    e = c.judge("(e) tau_k <= u with witness u",
                more_general_with_witness(c.logic, tau_k(k), u, u, max_nodes=c.max_nodes), minus_pred)
    f = c.expect("(f) ~u(x) -> [-^k] false", Imp(Neg(ux), boxminus_iter(k, BOT)), minus_pred)
    if None not in (d, e, f):
        c.fact("(d) iff (f)", d == f)


def planted_model(rng: random.Random, k: int, polarity: str, extra: int = 1,
                  reflexive: bool = False) -> PointedModel:
    """Random symmetric model with a labelled witness path of length ``k`` from state 0."""
    first, second = ((True, False), (False, True)) if polarity == PLUS else ((False, True), (True, False))
    path = list(range(3 * k + 1))
    n = len(path) + extra
    labels = {}
    for i in path:
        labels[i] = (False, False) if i % 3 == 0 else (first if i % 3 == 1 else second)
    for s in range(len(path), n):
        labels[s] = (rng.random() < 0.4, rng.random() < 0.4)
    rel = set()
    for i in path[:-1]:
        rel |= {(i, i + 1), (i + 1, i)}
    for a in range(n):
        for b in range(a, n):
            if rng.random() < 0.15:
                rel |= {(a, b), (b, a)}
    if reflexive:
        rel |= {(s, s) for s in range(n)}
    val = {P.atom: [s for s in range(n) if labels[s][0]],
           Q.atom: [s for s in range(n) if labels[s][1]],
           X.atom: [s for s in range(n) if rng.random() < 0.5],
           var("y").atom: [s for s in range(n) if rng.random() < 0.5]}
    return PointedModel(Model(Frame(range(n), rel), val), 0)


def random_bounded_formula(rng: random.Random, max_degree: int, size: int = 8) -> Formula:
    leaves = [X, var("y"), P, Q, BOT]
    if size <= 1 or rng.random() < 0.15:
        return rng.choice(leaves)
    r = rng.random()
    if r < 0.2:
        return Neg(random_bounded_formula(rng, max_degree, size - 1))
    if r < 0.45 and max_degree > 0:
        return Box(random_bounded_formula(rng, max_degree - 1, size - 1))
    if r < 0.55 and max_degree > 0:
        return Diamond(random_bounded_formula(rng, max_degree - 1, size - 1))
    if r < 0.65 and max_degree >= 3:
        return boxplus(random_bounded_formula(rng, max_degree - 3, size - 1))
    op = rng.choice([Or, And, Imp])
    return op(random_bounded_formula(rng, max_degree, size // 2),
              random_bounded_formula(rng, max_degree, size // 2))


def bridge_locality_trial(rng: random.Random, k: int, mode: str, n_formulas: int = 6) -> list[tuple]:
    """One random bridge; returns (formula, side, bridge value, original value) rows."""
    reflexive = mode == REFLEXIVE
    left = planted_model(rng, k, PLUS, reflexive=reflexive)
    right = planted_model(rng, k, MINUS, reflexive=reflexive)
    br = bridge_model(left, right, k, mode)
    rows = []
    for _ in range(n_formulas):
        f = random_bounded_formula(rng, 3 * k)
        rows.append((f, "root", satisfies(br.model, br.root, f), satisfies(left.model, left.point, f)))
        rows.append((f, "root'", satisfies(br.model, br.root_prime, f), satisfies(right.model, right.point, f)))
    return rows


def check_6k(c: _Ctx, k: int):
    m = chain_model(k)
    plus = extract_witness_path(m, 0, k, PLUS)
    c.fact("plus witness path on the chain", list(plus.states) == list(range(3 * k + 1)),
           path=list(plus.states))
    minus = extract_witness_path(m, 3 * k, k, MINUS)
    c.fact("minus witness path on the chain", list(minus.states) == list(range(3 * k, -1, -1)),
           path=list(minus.states))
    mode = REFLEXIVE if c.logic is Logic.KTB else PLAIN
    for trial in range(5):
        rows = bridge_locality_trial(c.rng, k, mode)
        bad = [(to_text(f), side) for f, side, got, want in rows if got != want]
        c.fact(f"bridge locality trial {trial}", not bad, mode=mode, mismatches=bad)
    br = bridge_model(PointedModel(m, 0), PointedModel(chain_model(k), 3 * k), k, mode)
    c.fact("bridge is symmetric", is_symmetric(br.model))
    if mode == REFLEXIVE:
        c.fact("bridge is reflexive", is_reflexive(br.model))


REGISTRY: dict[str, Entry] = {}


def _register(*entries: Entry):
    for e in entries:
        REGISTRY[e.id] = e


_register(
    Entry("lemma:degree", "degree arithmetic of the guarded boxes and their iterates", EXACT,
          _ks, lambda c, p: check_degree(c, p["k"])),
    Entry("easy:lemma:a", "[+^k] true, [-^k] true, [+<k] true, [-<k] true are valid", INSTANCES,
          _ks, lambda c, p: check_easy_a(c, p["k"])),
    Entry("easy:lemma:b", "[+^k] false and [-^k] false are refuted, chain models replayed", INSTANCES,
          _ks, lambda c, p: check_easy_b(c, p["k"])),
    Entry("lemma:about:box:less:than", "unfolding of the bounded boxes", INSTANCES,
          _basic_pool_grid, lambda c, p: check_box_less_than(c, p["k"], p["phi"])),
    Entry("lemma:about:k:l:and:boxes", "[+^k] false -> [+^l] false refuted for k > l, chain replayed", INSTANCES,
          _kl(lambda k, l: k > l), lambda c, p: check_k_l_boxes(c, p["k"], p["l"])),
    Entry("proposition:tense:modalities", "(f -> [+] f) and (~f -> [-] ~f) are valid together", INSTANCES,
          _pool_grid, lambda c, p: check_tense(c, p["phi"])),
    Entry("lemma:simeq:ref:sym:tra", "equivalence of substitutions is an equivalence; witnesses compose",
          INSTANCES, lambda km, lm: [{}], lambda c, p: check_simeq(c)),
    Entry("normal:unifiers:are:enough", "restricting a unifier to the formula's variables", INSTANCES,
          _families, lambda c, p: check_normal_unifiers(c, p["k"], p["family"])),
    Entry("lemma:to:be:used:later", "bounded box of x and [+^k] false imply sigma_k(x)", INSTANCES,
          _ks, lambda c, p: check_to_be_used_later(c, p["k"])),
    Entry("lemma:sigma:tau:imply:x", "sigma_k(x) -> x and ~tau_k(x) -> ~x", INSTANCES,
          _ks, lambda c, p: check_imply_x(c, p["k"])),
    Entry("lemma:sigma:tau:imply:box:x", "sigma_k(x) -> [+] sigma_k(x) and its dual", INSTANCES,
          _ks, lambda c, p: check_imply_box_x(c, p["k"])),
    Entry("lemma:sigma:tau:imply:box:bot:bot", "sigma_k(x) -> [+^l] false for k <= l", INSTANCES,
          _kl(lambda k, l: k <= l), lambda c, p: check_box_bot(c, p["k"], p["l"])),
    Entry("lemma:sigma:tau:imply:box:bot:bot:k:greater:than:l",
          "sigma_k(x) -> [+^l] false refuted for k > l; x := true replay", INSTANCES,
          _kl(lambda k, l: k > l), lambda c, p: check_box_bot_greater(c, p["k"], p["l"])),
    Entry("lemma:sigma:tau:imply:not:the:case:this:time", "[+^k] false | ~tau_l(x) refuted and dual",
          INSTANCES, _kl(lambda k, l: True), lambda c, p: check_not_the_case(c, p["k"], p["l"])),
    Entry("lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:1", "[+^k] false & sigma_l(x) <-> sigma_k(x), k <= l",
          INSTANCES, _kl(lambda k, l: k <= l), lambda c, p: check_pre1(c, p["k"], p["l"])),
    Entry("lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:2", "lambda_l(sigma_k(x)) <-> sigma_k(x), k <= l",
          INSTANCES, _kl(lambda k, l: k <= l), lambda c, p: check_pre2(c, p["k"], p["l"])),
    Entry("lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:3", "lambda_l(sigma_k(x)) <-> sigma_l(x), k >= l",
          INSTANCES, _kl(lambda k, l: k >= l), lambda c, p: check_pre3(c, p["k"], p["l"])),
    Entry("lemma:sigma:lambda:k:l:and:also:tau:mu:k:l", "sigma_l . lambda_k ~ sigma_k for k <= l",
          INSTANCES, _kl(lambda k, l: k <= l), lambda c, p: check_composition(c, p["k"], p["l"])),
    Entry("lemma:0:K:q", "sigma_l more general than sigma_k for k <= l (witness lambda_k)", INSTANCES,
          _kl(lambda k, l: k <= l), lambda c, p: check_0kq(c, p["k"], p["l"])),
    Entry("lemma:0:K:r", "sigma_k not more general than sigma_l for k < l", CORE,
          _kl(lambda k, l: k < l), lambda c, p: check_0kr(c, p["k"], p["l"])),
    Entry("lemma:0:K:qr", "sigma_k and tau_l are incomparable", CORE,
          _kl(lambda k, l: True), lambda c, p: check_0kqr(c, p["k"], p["l"])),
    Entry("lemma:every:unifier:of:varphi:has:this:property:1",
          "unifiers of phi satisfy u(x) -> [+<k] u(x)", INSTANCES,
          lambda km, lm: [{"k": k, "j": j, "family": fam} for fam in ("sigma", "tau")
                          for j in range(lm + 1) for k in range(km + 1)],
          lambda c, p: check_every_unifier(c, p["k"], p["j"], p["family"])),
    Entry("lemma:0:K", "sigma_k and tau_k unify phi", INSTANCES,
          _families, lambda c, p: check_0k(c, p["k"], p["family"])),
    Entry("lemma:4:K", "for unifiers u: sigma_k . u ~ u iff sigma_k <= u iff u(x) -> [+^k] false", INSTANCES,
          lambda km, lm: [{"k": k, "l": l, "family": fam} for fam in ("sigma", "tau")
                          for k in range(km + 1) for l in range(lm + 1)],
          lambda c, p: check_4k(c, p["k"], p["l"], p["family"])),
    Entry("lemma:6:K", "witness paths and the bridge model (locality of root satisfaction)", CONSTRUCTIVE,
          lambda km, lm: [{"k": k} for k in range(min(km, 1) + 1)], lambda c, p: check_6k(c, p["k"])),
    Entry("lemma:7:K", "phi has no minimal complete set of unifiers", OUT_OF_SCOPE),
    Entry("lemma:6:K:contradiction", "every unifier of phi lies below some sigma_k or tau_k (the bridge "
          "contradiction over all unifiers)", OUT_OF_SCOPE),
)


def verify_lemma(id: str, params: dict | None = None, logic: Logic | str = Logic.KB,
                 seed: int = 0, max_nodes: int = DEFAULT_MAX_NODES) -> LemmaCheck:
    if id not in REGISTRY:
        raise KeyError(f"unknown lemma id {id!r}")
    entry = REGISTRY[id]
    if entry.run is None:
        raise ValueError(f"{id} is not executable ({entry.scope})")
    if isinstance(logic, str):
        logic = Logic.parse(logic)
    params = dict(params or {})
    rng = random.Random(f"{seed}:{logic.value}:{id}:{sorted(params.items())}")
    ctx = _Ctx(logic, max_nodes, rng)
    entry.run(ctx, params)
    return LemmaCheck(id, params, ctx.status(), ctx.evidence, entry.scope)


def run_suite(logic: Logic | str = Logic.KB, k_max: int = 2, l_max: int = 2, seed: int = 0,
              max_nodes: int = DEFAULT_MAX_NODES, ids: list[str] | None = None,
              progress: Callable[[LemmaCheck], None] | None = None) -> LemmaReport:
    if k_max < 0 or l_max < 0:
        raise ValueError("bounds must be natural numbers")
    if isinstance(logic, str):
        logic = Logic.parse(logic)
    checks = []
    for entry in REGISTRY.values():
        if entry.run is None or (ids is not None and entry.id not in ids):
            continue
        for params in entry.grid(k_max, l_max):
            check = verify_lemma(entry.id, params, logic, seed, max_nodes)
            checks.append(check)
            if progress is not None:
                progress(check)
    config = {"logic": logic.value, "k_max": k_max, "l_max": l_max, "seed": seed, "max_nodes": max_nodes}
    return LemmaReport(config, checks)


__all__ = [
    "REGISTRY", "Entry", "LemmaCheck", "LemmaReport", "run_suite", "verify_lemma",
    "PASS", "FAIL", "INDETERMINATE", "planted_model", "random_bounded_formula",
    "bridge_locality_trial",
]
