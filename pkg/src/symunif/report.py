"""Tabular and graphical renderings of a lemma report.

``write_report`` puts a tab-separated check table next to two PNG figures:
check outcomes per lemma, and prover effort (tableau expansions) per lemma.
Everything written is a function of the report, so reruns give identical
tables; the figures are regenerated from the same numbers.
"""

from __future__ import annotations

import csv
from collections import OrderedDict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .harness import FAIL, INDETERMINATE, PASS, LemmaReport  # noqa: E402

TSV_COLUMNS = ("id", "params", "status", "scope", "goals", "prover_calls", "expansions")

_COLOURS = {PASS: "#4c9a2a", FAIL: "#c0392b", INDETERMINATE: "#e0a100"}


def _params_text(params: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in params.items()) or "-"


def _expansions(evidence: list) -> tuple[int, int]:
    calls = total = 0
    for item in evidence:
        if item.get("expansions") is not None:
            calls += 1
            total += item["expansions"]
        for v in item.get("verdicts", ()):
            if v.get("expansions") is not None:
                calls += 1
                total += v["expansions"]
    return calls, total


def rows(report: LemmaReport) -> list[dict]:
    out = []
    for c in report.checks:
        calls, total = _expansions(c.evidence)
        out.append({"id": c.id, "params": _params_text(c.params), "status": c.status,
                    "scope": c.scope, "goals": len(c.evidence),
                    "prover_calls": calls, "expansions": total})
    return out


def write_tsv(report: LemmaReport, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=TSV_COLUMNS, delimiter="\t", lineterminator="\n")
        w.writeheader()
        w.writerows(rows(report))


def _by_lemma(report: LemmaReport):
    table = OrderedDict()
    for r in rows(report):
        slot = table.setdefault(r["id"], {PASS: 0, FAIL: 0, INDETERMINATE: 0, "expansions": 0})
        slot[r["status"]] += 1
        slot["expansions"] += r["expansions"]
    return table


def plot_status(report: LemmaReport, path: Path) -> None:
    table = _by_lemma(report)
    ids = list(table)
    fig, ax = plt.subplots(figsize=(8, 0.32 * len(ids) + 1.5))
    left = [0] * len(ids)
    for status in (PASS, FAIL, INDETERMINATE):
        widths = [table[i][status] for i in ids]
        ax.barh(ids, widths, left=left, color=_COLOURS[status], label=status)
        left = [a + b for a, b in zip(left, widths)]
    ax.invert_yaxis()
    ax.set_xlabel("checks")
    cfg = report.config
    ax.set_title(f"{cfg['logic'].upper()}  k<={cfg['k_max']}  l<={cfg['l_max']}  seed={cfg['seed']}")
    ax.tick_params(axis="y", labelsize=7)
    ax.legend(loc="upper left", bbox_to_anchor=(1.01, 1.0), fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_effort(report: LemmaReport, path: Path) -> None:
    table = _by_lemma(report)
    ids = [i for i in table if table[i]["expansions"] > 0]
    fig, ax = plt.subplots(figsize=(8, 0.32 * max(len(ids), 1) + 1.5))
    if ids:
        ax.barh(ids, [table[i]["expansions"] for i in ids], color="#34617a")
        ax.set_xscale("log")
        ax.invert_yaxis()
    ax.set_xlabel("tableau expansions (sum over goals)")
    ax.set_title(f"prover effort, {report.config['logic'].upper()}")
    ax.tick_params(axis="y", labelsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(report: LemmaReport, directory: str | Path) -> list[Path]:
    """Write checks.tsv, report.json and the figures; returns the paths written."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    logic = report.config["logic"]
    paths = [d / "checks.tsv", d / "report.json", d / f"status_{logic}.png", d / f"effort_{logic}.png"]
    write_tsv(report, paths[0])
    paths[1].write_text(report.to_json())
    plot_status(report, paths[2])
    plot_effort(report, paths[3])
    return paths


__all__ = ["TSV_COLUMNS", "rows", "write_tsv", "plot_status", "plot_effort", "write_report"]
