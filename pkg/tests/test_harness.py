import pytest

from symunif.harness import (
    CORE, FAIL, INDETERMINATE, OUT_OF_SCOPE, PASS, REGISTRY, run_suite, verify_lemma,
)
from symunif.report import rows, write_report

LABELS = [
    "easy:lemma:a", "easy:lemma:b", "lemma:about:box:less:than", "lemma:about:k:l:and:boxes",
    "proposition:tense:modalities", "lemma:simeq:ref:sym:tra", "normal:unifiers:are:enough",
    "lemma:to:be:used:later", "lemma:sigma:tau:imply:x", "lemma:sigma:tau:imply:box:x",
    "lemma:sigma:tau:imply:box:bot:bot", "lemma:sigma:tau:imply:box:bot:bot:k:greater:than:l",
    "lemma:sigma:tau:imply:not:the:case:this:time",
    "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:1",
    "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:2",
    "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l:pre:3",
    "lemma:sigma:lambda:k:l:and:also:tau:mu:k:l", "lemma:0:K:q", "lemma:0:K:r", "lemma:0:K:qr",
    "lemma:every:unifier:of:varphi:has:this:property:1", "lemma:0:K", "lemma:4:K", "lemma:6:K",
    "lemma:7:K",
]


def test_registry_covers_every_label():
    assert set(LABELS) <= set(REGISTRY)
    assert REGISTRY["lemma:7:K"].scope == OUT_OF_SCOPE
    assert REGISTRY["lemma:0:K:qr"].scope == CORE


@pytest.mark.parametrize("lemma,params", [
    ("easy:lemma:b", {"k": 1}),
    ("lemma:0:K", {"k": 2, "family": "tau"}),
    ("lemma:about:k:l:and:boxes", {"k": 2, "l": 1}),
])
def test_verify_examples(lemma, params):
    assert verify_lemma(lemma, params).status == PASS


def test_verify_errors():
    with pytest.raises(KeyError):
        verify_lemma("no:such:lemma", {})
    with pytest.raises(ValueError):
        verify_lemma("lemma:7:K", {})


def test_unknown_never_passes():
    check = verify_lemma("easy:lemma:b", {"k": 2}, max_nodes=1)
    assert check.status == INDETERMINATE
    report = run_suite("kb", 1, 1, max_nodes=1, ids=["easy:lemma:b"])
    assert not report.passed


def test_wrong_prediction_fails():
    # k=0, l=0 is outside the grid of the k > l lemma, where the prediction is false
    check = verify_lemma("lemma:sigma:tau:imply:box:bot:bot:k:greater:than:l", {"k": 0, "l": 0})
    assert check.status == FAIL


def test_suite_degenerate_bounds():
    report = run_suite("kb", 0, 0, 0)
    assert report.passed
    assert any(c.id == "lemma:0:K" for c in report.checks)


def test_suite_ktb_small():
    report = run_suite("ktb", 1, 1, 0)
    assert report.passed
    for c in report.checks:
        for e in c.evidence:
            if "countermodel" in e:
                cm = e["countermodel"]
                loops = {(s, s) for s in cm["states"]}
                assert loops <= {tuple(p) for p in cm["rel"]}


def test_report_is_deterministic(tmp_path):
    a = run_suite("kb", 1, 1, seed=4)
    b = run_suite("kb", 1, 1, seed=4)
    assert a.to_json() == b.to_json()
    assert a.config == {"logic": "kb", "k_max": 1, "l_max": 1, "seed": 4, "max_nodes": 10**6}
    paths = write_report(a, tmp_path)
    assert [p.name for p in paths] == ["checks.tsv", "report.json", "status_kb.png", "effort_kb.png"]
    lines = (tmp_path / "checks.tsv").read_text().splitlines()
    assert lines[0].split("\t")[:3] == ["id", "params", "status"]
    assert len(lines) == len(rows(a)) + 1
    assert all(p.stat().st_size > 0 for p in paths)


def test_instance_checks_are_labelled():
    report = run_suite("kb", 1, 1, 0)
    scopes = {c.scope for c in report.checks}
    assert "instance evidence, not proof" in scopes
