"""Command line interface: ``symunif decide|subst|gen|lemmas``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constructions import FAMILIES, bridge_model, nullary_formula
from .formula import FormulaSyntaxError, parse, to_text
from .kripke import PLAIN, REFLEXIVE, PointedModel, chain_model, model_from_dict, model_to_dict
from .prover import DEFAULT_MAX_NODES, Invalid, Logic, decide
from .substitution import Substitution, apply, compose, equivalent, is_unifier

LOGICS = [lg.value for lg in Logic]


class UsageError(Exception):
    pass


def _read_json_arg(text: str):
    """Inline JSON, or ``@path`` to read it from a file."""
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad JSON: {exc}") from None


def _subst(text: str) -> Substitution:
    try:
        return Substitution.from_dict(_read_json_arg(text))
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _formula(text: str):
    try:
        return parse(text)
    except FormulaSyntaxError as exc:
        raise UsageError(f"formula syntax: {exc}") from None


def _verdict_dict(v) -> dict:
    d = {"status": v.status, "expansions": v.stats.get("expansions")}
    if isinstance(v, Invalid):
        d["countermodel"] = model_to_dict(v.counter.model, v.counter.point)
    if v.status == "unknown":
        d["reason"] = v.reason
    return d


def _judgement_dict(j) -> dict:
    return {"value": j.value,
            "evidence": [dict(part=part, **_verdict_dict(v)) for part, v in j.evidence]}


def _print_judgement(j, as_json: bool) -> None:
    if as_json:
        print(json.dumps(_judgement_dict(j), indent=2))
    else:
        print("unknown" if j.value is None else str(j.value).lower())


# -- decide ------------------------------------------------------------------

def cmd_decide(args) -> int:
    f = _formula(args.formula)
    v = decide(args.logic, f, max_nodes=args.max_nodes, timeout=args.timeout)
    if args.json:
        print(json.dumps(_verdict_dict(v), indent=2))
    else:
        print(v.status)
        if isinstance(v, Invalid):
            print(json.dumps(model_to_dict(v.counter.model, v.counter.point)))
    return 0


# -- subst -------------------------------------------------------------------

def cmd_subst(args) -> int:
    opts = {"max_nodes": args.max_nodes}
    if args.action == "apply":
        print(to_text(apply(_subst(args.subst), _formula(args.formula))))
    elif args.action == "compose":
        print(compose(_subst(args.first), _subst(args.second)).dumps())
    elif args.action == "equiv":
        _print_judgement(equivalent(args.logic, _subst(args.left), _subst(args.right), **opts), args.json)
    elif args.action == "unifier":
        _print_judgement(is_unifier(args.logic, _subst(args.subst), _formula(args.formula), **opts), args.json)
    return 0


# -- gen ---------------------------------------------------------------------

def _load_pointed(path: str) -> PointedModel:
    data = _read_json_arg("@" + path)
    try:
        m, point = model_from_dict(data)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if point is None:
        raise UsageError(f"{path}: model JSON needs a \"point\"")
    return PointedModel(m, point)


def cmd_gen(args) -> int:
    if args.what in FAMILIES:
        print(FAMILIES[args.what](args.k).dumps())
    elif args.what == "phi":
        print(to_text(nullary_formula()))
    elif args.what == "chain":
        print(json.dumps(model_to_dict(chain_model(args.k), 0)))
    elif args.what == "bridge":
        mode = REFLEXIVE if args.reflexive else PLAIN
        try:
            br = bridge_model(_load_pointed(args.left), _load_pointed(args.right), args.k, mode, args.depth)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        m, ren = br.model.relabelled()
        print(json.dumps({"model": model_to_dict(m), "root": ren[br.root], "root_prime": ren[br.root_prime],
                          "t": ren[br.t], "u": ren[br.u]}))
    return 0


# -- lemmas ------------------------------------------------------------------

def cmd_lemmas(args) -> int:
    from .harness import REGISTRY, run_suite

    if args.action == "list":
        for entry in REGISTRY.values():
            print(f"{entry.id}\t{entry.scope}")
        return 0
    if args.action == "show":
        entry = REGISTRY.get(args.id)
        if entry is None:
            raise UsageError(f"unknown lemma id {args.id!r}; see 'lemmas list'")
        print(f"id:      {entry.id}")
        print(f"claim:   {entry.summary}")
        print(f"scope:   {entry.scope}")
        if entry.grid is not None:
            grid = entry.grid(args.k_max, args.l_max)
            print(f"instances at k<={args.k_max}, l<={args.l_max}: {len(grid)}")
            for params in grid:
                print("  " + (json.dumps(params) if params else "{}"))
        return 0

    def progress(check):
        params = ",".join(f"{k}={v}" for k, v in check.params.items()) or "-"
        print(f"{check.id}\t{params}\t{check.status}", flush=True)

    report = run_suite(args.logic, args.k_max, args.l_max, args.seed, max_nodes=args.max_nodes,
                       progress=None if args.quiet else progress)
    counts = report.counts()
    print(f"# {report.config['logic']}: {counts['pass']} pass, {counts['fail']} fail, "
          f"{counts['indeterminate']} indeterminate")
    if args.json:
        Path(args.json).write_text(report.to_json())
    if args.report_dir:
        from .report import write_report

        for path in write_report(report, args.report_dir):
            print(f"# wrote {path}")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symunif", description="Unification with parameters in KB, KDB and KTB.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="decide validity of a formula")
    d.add_argument("--logic", choices=LOGICS, default="kb")
    d.add_argument("--formula", required=True)
    d.add_argument("--json", action="store_true")
    d.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    d.add_argument("--timeout", type=float, default=None, help="seconds")
    d.set_defaults(func=cmd_decide)

    s = sub.add_parser("subst", help="substitution operations")
    ssub = s.add_subparsers(dest="action", required=True)
    sa = ssub.add_parser("apply")
    sa.add_argument("--subst", required=True, help='JSON {"map": {...}} or @file')
    sa.add_argument("--formula", required=True)
    sc = ssub.add_parser("compose", help="first, then second")
    sc.add_argument("--first", required=True)
    sc.add_argument("--second", required=True)
    se = ssub.add_parser("equiv")
    se.add_argument("--left", required=True)
    se.add_argument("--right", required=True)
    su = ssub.add_parser("unifier")
    su.add_argument("--subst", required=True)
    su.add_argument("--formula", required=True)
    for q in (sa, sc, se, su):
        q.add_argument("--logic", choices=LOGICS, default="kb")
        q.add_argument("--json", action="store_true")
        q.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    s.set_defaults(func=cmd_subst)

    g = sub.add_parser("gen", help="generate constructions")
    gsub = g.add_subparsers(dest="what", required=True)
    for name in FAMILIES:
        gf = gsub.add_parser(name)
        gf.add_argument("--k", type=int, required=True)
    gsub.add_parser("phi")
    gc = gsub.add_parser("chain")
    gc.add_argument("--k", type=int, required=True)
    gb = gsub.add_parser("bridge")
    gb.add_argument("--left", required=True, help="pointed model JSON file")
    gb.add_argument("--right", required=True, help="pointed model JSON file")
    gb.add_argument("--k", type=int, required=True)
    gb.add_argument("--reflexive", action="store_true")
    gb.add_argument("--depth", type=int, default=None, help="unravelling depth (default 6k+2)")
    g.set_defaults(func=cmd_gen)

    lm = sub.add_parser("lemmas", help="run the lemma checks")
    lsub = lm.add_subparsers(dest="action", required=True)
    lr = lsub.add_parser("run")
    lr.add_argument("--logic", choices=LOGICS, default="kb")
    lr.add_argument("--k-max", type=int, default=2)
    lr.add_argument("--l-max", type=int, default=2)
    lr.add_argument("--seed", type=int, default=0)
    lr.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    lr.add_argument("--json", metavar="PATH", help="write the JSON report here")
    lr.add_argument("--report-dir", metavar="DIR", help="write checks.tsv, report.json and figures here")
    lr.add_argument("--quiet", action="store_true", help="print only the summary line")
    ls = lsub.add_parser("show")
    ls.add_argument("id")
    ls.add_argument("--k-max", type=int, default=2)
    ls.add_argument("--l-max", type=int, default=2)
    lsub.add_parser("list")
    lm.set_defaults(func=cmd_lemmas)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("k", "k_max", "l_max", "depth"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            parser.error(f"--{name.replace('_', '-')} must be a natural number")
    try:
        return args.func(args)
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
