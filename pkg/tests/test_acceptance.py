"""Acceptance criteria, one printed PASS/FAIL line each.

The lines are repeated in the "acceptance criteria" section of the pytest
terminal summary.
"""

import random
import time

import pytest

from acceptance_log import record
from symunif.cli import main
from symunif.constructions import lambda_k, mu_k, nullary_formula, sigma_image, sigma_k, tau_image, tau_k
from symunif.formula import (
    BOT, TOP, Imp, Neg, Or, atoms, boxminus, boxminus_bounded, boxminus_iter, boxplus,
    boxplus_bounded, boxplus_iter, degree, parse,
)
from symunif.harness import bridge_locality_trial, run_suite
from symunif.kripke import PLAIN, REFLEXIVE, chain_model, is_reflexive, is_symmetric, satisfies
from symunif.prover import Invalid, Logic, Valid, brute_force_countermodel, decide
from symunif.substitution import compose, equivalent, is_unifier

from test_prover import random_formula

LOGICS = list(Logic)
K2 = range(3)


def test_criterion_1_degree_arithmetic():
    rng = random.Random(2024)
    pool = [random_formula(rng, 12, 3) for _ in range(100)]
    started = time.perf_counter()
    bad = 0
    for f in pool:
        d = degree(f)
        bad += degree(boxplus(f)) != d + 3
        bad += degree(boxminus(f)) != d + 3
        for k in range(6):
            bad += degree(boxplus_iter(k, f)) != d + 3 * k
            bad += degree(boxminus_iter(k, f)) != d + 3 * k
            want = 0 if k == 0 else d + 3 * (k - 1)
            bad += degree(boxplus_bounded(k, f)) != want
            bad += degree(boxminus_bounded(k, f)) != want
    elapsed = time.perf_counter() - started
    ok = bad == 0 and elapsed < 1.0
    record("1", ok, f"degree identities, k<=5 x 100 formulas: {bad} mismatches, {elapsed:.3f}s (limit 1s)")
    assert ok


def test_criterion_2_chain_countermodels():
    started = time.perf_counter()
    bad = []
    for k in range(4):
        m = chain_model(k)
        if not (is_symmetric(m) and is_reflexive(m)):
            bad.append(f"frame k={k}")
        if satisfies(m, 0, boxplus_iter(k, BOT)):
            bad.append(f"[+^{k}] at 0")
        if satisfies(m, 3 * k, boxminus_iter(k, BOT)):
            bad.append(f"[-^{k}] at 3k")
    for l in K2:
        for k in range(l + 1, l + 4):
            if satisfies(chain_model(l), 0, Imp(boxplus_iter(k, BOT), boxplus_iter(l, BOT))):
                bad.append(f"implication k={k} l={l}")
    elapsed = time.perf_counter() - started
    ok = not bad and elapsed < 1.0
    record("2", ok, f"chain countermodels: {len(bad)} mismatches {bad}, {elapsed:.3f}s (limit 1s)")
    assert ok


POSITIVE_LEMMAS = [
    "lemma:to:be:used:later", "lemma:sigma:tau:imply:x", "lemma:sigma:tau:imply:box:x",
    "lemma:sigma:tau:imply:box:bot:bot", "lemma:sigma:tau:imply:box:bot:bot:k:greater:than:l",
    "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:1",
    "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:2",
    "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:3",
    "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l",
]


def test_criterion_3_prover_positives():
    started = time.perf_counter()
    goals = []
    for lg in LOGICS:
        for k in range(4):
            goals += [(lg, boxplus_iter(k, TOP)), (lg, boxminus_iter(k, TOP)),
                      (lg, boxplus_bounded(k, TOP)), (lg, boxminus_bounded(k, TOP))]
        goals.append((lg, parse("~#p -> [] ~ [] #p")))
    verdicts = [decide(lg, f) for lg, f in goals]
    wrong = sum(not isinstance(v, Valid) for v in verdicts)
    t_axiom = {lg: decide(lg, parse("[] #p -> #p")) for lg in LOGICS}
    t_ok = isinstance(t_axiom[Logic.KTB], Valid) and all(
        isinstance(t_axiom[lg], Invalid) for lg in (Logic.KB, Logic.KDB))
    # sigma/tau lemma instances, positives only (the k > l entry contributes its x := true replay)
    lemma_checks = []
    for lg in LOGICS:
        report = run_suite(lg, 2, 2, 0, ids=POSITIVE_LEMMAS)
        lemma_checks += report.checks
    lemma_bad = [c for c in lemma_checks if c.status != "pass"]
    positives = [e for c in lemma_checks for e in c.evidence if e.get("expected") == "valid"]
    elapsed = time.perf_counter() - started
    ok = wrong == 0 and t_ok and not lemma_bad and elapsed < 600
    record("3", ok, f"prover positives: {len(goals) + len(positives)} valid goals, {wrong} wrong/unknown, "
                    f"T axiom KTB-only={t_ok}, {len(lemma_bad)} lemma checks not passing, "
                    f"{elapsed:.2f}s (limit 600s)")
    assert ok


def _negative_goals():
    goals = []
    for k in K2:
        goals += [boxplus_iter(k, BOT), boxminus_iter(k, BOT)]
        for l in K2:
            if k > l:
                goals += [Imp(boxplus_iter(k, BOT), boxplus_iter(l, BOT)),
                          Imp(boxminus_iter(k, BOT), boxminus_iter(l, BOT)),
                          Imp(sigma_image(k), boxplus_iter(l, BOT)),
                          Imp(Neg(tau_image(k)), boxminus_iter(l, BOT))]
            goals += [Or(boxplus_iter(k, BOT), Neg(tau_image(l))),
                      Or(boxminus_iter(k, BOT), sigma_image(l))]
    return goals


def test_criterion_4_certified_negatives():
    bad = []
    n = 0
    for lg in LOGICS:
        for f in _negative_goals():
            n += 1
            v = decide(lg, f)
            if not isinstance(v, Invalid):
                bad.append((lg.value, v.status))
                continue
            cm = v.counter
            # independent re-check of frame class and refutation
            if not lg.admits(cm.model) or satisfies(cm.model, cm.point, f):
                bad.append((lg.value, "uncertified"))
    ok = not bad
    record("4", ok, f"certified negatives: {n} goals over kb/kdb/ktb, {len(bad)} failures")
    assert ok


def _lemma_4k_grid(logic):
    rows = []
    for k in K2:
        for l in K2:
            a = equivalent(logic, compose(sigma_k(k), sigma_k(l)), sigma_k(l)).value
            c = decide(logic, Imp(sigma_image(l), boxplus_iter(k, BOT)))
            d = equivalent(logic, compose(tau_k(k), tau_k(l)), tau_k(l)).value
            f = decide(logic, Imp(Neg(tau_image(l)), boxminus_iter(k, BOT)))
            rows.append((k, l, a, isinstance(c, Valid), d, isinstance(f, Valid)))
    return rows


def _unification_layer():
    bad = []
    for lg in LOGICS:
        for k in K2:
            for fam, s in (("sigma", sigma_k(k)), ("tau", tau_k(k))):
                if is_unifier(lg, s, nullary_formula()).value is not True:
                    bad.append(f"{lg.value} {fam}_{k} not a unifier")
        for l in K2:
            for k in range(l + 1):
                if equivalent(lg, compose(sigma_k(l), lambda_k(k)), sigma_k(k)).value is not True:
                    bad.append(f"{lg.value} sigma_{l}.lambda_{k}")
                if equivalent(lg, compose(tau_k(l), mu_k(k)), tau_k(k)).value is not True:
                    bad.append(f"{lg.value} tau_{l}.mu_{k}")
    return bad


def test_criterion_5_unification_layer_consistent_part():
    """Unifiers, compositions, and agreement of (a) with (c) on the grid."""
    bad = _unification_layer()
    grids = {lg: _lemma_4k_grid(lg) for lg in LOGICS}
    for lg, rows in grids.items():
        for k, l, a, c, d, f in rows:
            if a != c or d != f:
                bad.append(f"{lg.value} (a)!=(c) or (d)!=(f) at k={k} l={l}")
            if c != (l <= k) or f != (l <= k):
                bad.append(f"{lg.value} pattern l<=k violated at k={k} l={l}")
    assert not bad, bad


@pytest.mark.xfail(strict=True, reason="the stated pattern 'true iff k <= l' contradicts the "
                   "k > l refutation lemma; the computed grid is 'true iff l <= k' (see README)")
def test_criterion_5_unification_layer():
    bad = _unification_layer()
    mismatches = []
    for lg in LOGICS:
        for k, l, a, c, d, f in _lemma_4k_grid(lg):
            if a != c:
                bad.append(f"{lg.value} (a)!=(c) at k={k} l={l}")
            if c != (k <= l):
                mismatches.append((lg.value, k, l, c))
    ok = not bad and not mismatches
    record("5", ok, f"unifiers and compositions: {len(bad)} failures; (a)<=>(c) grid vs stated pattern "
                    f"'true iff k<=l': {len(mismatches)} of 27 cells differ "
                    f"(computed grid is 'true iff l<=k', e.g. k=0,l=1 gives false)")
    assert ok


def _suite_formulas():
    seen = {}
    for lg in LOGICS:
        for check in run_suite(lg, 2, 2, 0).checks:
            for e in check.evidence:
                if "formula" in e and "verdict" in e:
                    seen.setdefault(e["formula"], parse(e["formula"]))
    return list(seen.values())


def test_criterion_6_oracle_cross_validation():
    formulas = [f for f in _suite_formulas() if len(atoms(f)) <= 3 and degree(f) <= 3]
    bad = []
    for lg in LOGICS:
        for f in formulas:
            v = decide(lg, f)
            cm = brute_force_countermodel(lg, f, max_states=3)
            if cm is not None and not isinstance(v, Invalid):
                bad.append(("oracle refutes, prover says", lg.value, v.status))
            if isinstance(v, Invalid):
                m = v.counter
                if not lg.admits(m.model) or satisfies(m.model, m.point, f):
                    bad.append(("countermodel fails model check", lg.value))
    ok = not bad and len(formulas) > 0
    record("6", ok, f"oracle cross-validation: {len(formulas)} suite formulas x 3 logics, "
                    f"{len(bad)} disagreements")
    assert ok


def test_criterion_7_bridge_locality():
    rng = random.Random(77)
    bad = 0
    rows = 0
    for mode in (PLAIN, REFLEXIVE):
        for trial in range(50):
            for f, side, got, want in bridge_locality_trial(rng, trial % 2, mode):
                rows += 1
                bad += got != want
    ok = bad == 0
    record("7", ok, f"bridge locality: 50 plain + 50 reflexive bridges, k<=1, {rows} root evaluations, "
                    f"{bad} disagreements")
    assert ok


def test_criterion_8_lemma_runs(capsys):
    started = time.perf_counter()
    results = {}
    for lg in ("kb", "kdb", "ktb"):
        code = main(["lemmas", "run", "--logic", lg, "--k-max", "2", "--l-max", "2", "--quiet"])
        summary = capsys.readouterr().out.strip().splitlines()[-1]
        results[lg] = (code, summary)
    elapsed = time.perf_counter() - started
    ok = all(code == 0 and " 0 fail, 0 indeterminate" in s for code, s in results.values()) and elapsed < 1800
    detail = "; ".join(f"{lg} exit {code} ({s.lstrip('# ')})" for lg, (code, s) in results.items())
    with capsys.disabled():
        record("8", ok, f"lemmas run k,l<=2: {detail}; {elapsed:.1f}s (limit 1800s)")
    assert ok
