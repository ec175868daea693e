"""Figures and tables for the ``report`` subcommand.

Each figure is written next to a CSV holding the exact values it plots,
plus a ``report.json`` document listing everything produced.
"""

from __future__ import annotations

import csv
import itertools
from collections import Counter
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .. import __version__  # noqa: E402
from ..nccc import classify, reduce  # noqa: E402
from ..totalize import totalize_with_state  # noqa: E402
from . import documents as docs  # noqa: E402

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def totalization_grid(group, state, radius: int) -> list[tuple[int, int, bool]]:
    p = totalize_with_state(group, state)
    return [(a, b, p.cone.contains((a, b))) for a in range(-radius, radius + 1) for b in range(-radius, radius + 1)]


def _plot_grid(rows, radius: int, path: Path):
    fig, ax = plt.subplots(figsize=(5, 5))
    inside = [(a, b) for a, b, m in rows if m]
    outside = [(a, b) for a, b, m in rows if not m]
    ax.scatter(*zip(*outside), s=10, c="lightgray", label="not in P")
    ax.scatter(*zip(*inside), s=10, c="tab:blue", label="in P")
    ax.set_xlim(-radius - 1, radius + 1)
    ax.set_ylim(-radius - 1, radius + 1)
    ax.set_aspect("equal")
    ax.axhline(0, color="k", lw=0.5)
    ax.axvline(0, color="k", lw=0.5)
    ax.set_title("Totalized positive cone on the integer grid")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def census_table(desc, s_gens, box: int) -> list[dict]:
    rows = []
    for y in itertools.product(range(box + 1), repeat=desc.width):
        cl = classify(desc, s_gens, y)
        res = cl.result if cl.result is not None else reduce(desc, s_gens, y)
        rows.append(
            {
                "y": " ".join(map(str, y)),
                "verdict": cl.verdict.value,
                "trace": " ".join(f"{c}:{p}" for c, p in res.case_trace),
                "reduced_cells": res.reduced.length,
            }
        )
    return rows


def _plot_census(rows, path: Path):
    counts = Counter(r["verdict"] for r in rows)
    traces = Counter(r["trace"] or "(none)" for r in rows)
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    left.bar(list(counts), list(counts.values()), color="tab:green")
    left.set_title("Verdicts over the rank box")
    left.tick_params(axis="x", labelrotation=20, labelsize=7)
    names = sorted(traces, key=traces.get, reverse=True)
    right.barh(names, [traces[n] for n in names], color="tab:orange")
    right.set_title("Case traces")
    right.tick_params(axis="y", labelsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def build_report(
    out_dir: Path,
    group: Optional[str] = None,
    state: Optional[str] = None,
    descriptor: Optional[str] = None,
    s_gens: Optional[Sequence[Sequence[int]]] = None,
    radius: int = 10,
    box: int = 2,
) -> list[Path]:
    """Render the totalization grid and the rank census; returns written paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    g = docs.load(group or CORPUS / "ex44_group.json", "group")
    tau = docs.load(state or CORPUS / "ex44_state.json", "state")
    if descriptor is None:
        descriptor = CORPUS / "sec6_descriptor.json"
        if s_gens is None:
            s_gens = [tuple(int(v) for v in gen) for gen in docs.load(CORPUS / "sec6_s.json", "subgroup").generators]
    desc = docs.load(descriptor, "nccc-descriptor")
    written = []
    summary = {"kind": "report", "version": docs.VERSION, "tool_version": __version__, "artifacts": []}

    if g.dim == 2:
        rows = totalization_grid(g, tau, radius)
        csv_path = out_dir / "totalization_grid.csv"
        with csv_path.open("w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["a", "b", "in_P"])
            wr.writerows((a, b, int(m)) for a, b, m in rows)
        png = out_dir / "totalization_grid.png"
        _plot_grid(rows, radius, png)
        written += [csv_path, png]
        summary["artifacts"].append({"name": "totalization_grid", "points": len(rows), "members": sum(m for *_, m in rows)})
    else:
        summary["artifacts"].append({"name": "totalization_grid", "skipped": f"group dimension {g.dim} is not 2"})

    rows = census_table(desc, s_gens, box)
    csv_path = out_dir / "nccc_census.csv"
    with csv_path.open("w", newline="") as fh:
        wr = csv.DictWriter(fh, fieldnames=list(rows[0]))
        wr.writeheader()
        wr.writerows(rows)
    png = out_dir / "nccc_census.png"
    _plot_census(rows, png)
    written += [csv_path, png]
    summary["artifacts"].append({"name": "nccc_census", "classes": len(rows), "verdicts": dict(Counter(r["verdict"] for r in rows))})

    js = out_dir / "report.json"
    js.write_text(docs.dump(summary))
    written.append(js)
    return written
