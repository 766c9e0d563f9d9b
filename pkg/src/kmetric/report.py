"""Tab-separated tables and matplotlib figures for profiles and audits."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .audit import AuditReport  # noqa: E402

FIGSIZE = (6.0, 3.8)


def _style(ax) -> None:
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.grid(axis="y", alpha=0.3)


def write_profile_report(
    dims: Sequence[int], lower: Sequence[int], n: int, out_dir: str | Path, stem: str = "profile"
) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tsv = out / f"{stem}.tsv"
    with tsv.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["r", "dim_r", "lower_bound"])
        for r, (d, lb) in enumerate(zip(dims, lower), start=1):
            w.writerow([r, d, lb])

    rs = list(range(1, len(dims) + 1))
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(rs, dims, "o-", color="C0", label="dim_r (exact)")
    ax.plot(rs, lower, "s--", color="C1", label="best lower bound")
    ax.axhline(n, color="0.5", lw=0.8, ls=":", label=f"n = {n}")
    ax.set_xlabel("r")
    ax.set_ylabel("size of an r-metric basis")
    ax.set_xticks(rs)
    ax.legend(frameon=False, fontsize=8)
    _style(ax)
    fig.tight_layout()
    png = out / f"{stem}.png"
    fig.savefig(png, dpi=120)
    plt.close(fig)
    return [tsv, png]


def write_audit_report(report: AuditReport, out_dir: str | Path, stem: str = "audit") -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tsv = out / f"{stem}.tsv"
    with tsv.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["claim_id", "applicable", "lhs", "relation", "rhs", "pass", "note"])
        for c in report.checks:
            w.writerow([
                c.claim_id, int(c.applicable),
                "" if c.lhs is None else c.lhs, c.relation,
                "" if c.rhs is None else c.rhs, int(c.passed), c.note,
            ])

    # slack of each applicable inequality, signed so that >= 0 means the claim holds
    rows = [c for c in report.checks if c.applicable and c.relation in ("<=", ">=")]
    slack = [(c.rhs - c.lhs) if c.relation == "<=" else (c.lhs - c.rhs) for c in rows]
    fig, ax = plt.subplots(figsize=(FIGSIZE[0], max(2.0, 0.32 * len(rows) + 1)))
    colours = ["C2" if s >= 0 else "C3" for s in slack]
    ax.barh(range(len(rows)), slack, color=colours)
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels([c.claim_id for c in rows], fontsize=7)
    ax.invert_yaxis()
    ax.axvline(0, color="k", lw=0.8)
    ax.set_xlabel("slack (0 = bound attained)")
    ax.set_title(f"k_max = {report.k_max}, {len(report.failures())} failed", fontsize=9)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.tight_layout()
    png = out / f"{stem}.png"
    fig.savefig(png, dpi=120)
    plt.close(fig)
    return [tsv, png]
