"""CSV tables and matplotlib figures for the command line report directory."""
from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def get_plot(width=6, height=None):
    """New figure and axes; height defaults to width times the golden ratio."""
    golden_ratio = (math.sqrt(5) - 1.0) / 2.0
    if not height:
        height = width * golden_ratio
    fig, ax = plt.subplots(figsize=(width, height), facecolor="w")
    ax.tick_params(labelsize=width * 1.6)
    return fig, ax


def save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(header)
        for row in rows:
            w.writerow([str(v) for v in row])
    return path


# -- per command ---------------------------------------------------------------------------------

def dim_report(out_dir, kind, n, c, dim, vertices):
    return [write_csv(Path(out_dir) / "dim.csv", ["kind", "n", "c", "vertices", "dim"],
                      [[kind, n, " ".join(map(str, c)), vertices, dim]])]


def enumerate_report(out_dir, vertices):
    rows = [[v.cardinality, " ".join(map(str, v.walk))] for v in vertices]
    return [write_csv(Path(out_dir) / "vertices.csv", ["cardinality", "walk"], rows)]


def sweep_report(out_dir, report):
    out_dir = Path(out_dir)
    rows = []
    for r in report.records:
        status = {True: "agree", False: "disagree", None: "unknown"}[r.agrees]
        rows.append([r.tag, r.params_text(), r.predicate.answer.value, r.valid, r.facet, status])
    stem = f"sweep_{report.sweep_id}_n{report.n}_c{'-'.join(map(str, report.c))}"
    files = [write_csv(out_dir / f"{stem}.csv",
                       ["class", "params", "predicate", "valid", "facet", "status"], rows)]
    s = report.summary()
    fig, ax = get_plot()
    labels = ["agree", "disagree", "unknown"]
    counts = [s["agree"], s["disagree"], s["unknown"]]
    ax.bar(labels, counts, color=["tab:green", "tab:red", "tab:gray"])
    ax.set_ylabel("instances")
    ax.set_title(f"{report.sweep_id}, n={report.n}, c={s['c']}")
    files.append(save(fig, out_dir / f"{stem}.png"))
    return files


def separate_report(out_dir, results):
    rows = []
    for name, res in results.items():
        for v in res.violated:
            rows.append([name, v.inequality.tag, v.inequality.describe(), v.amount])
    return [write_csv(Path(out_dir) / "separation.csv", ["separator", "class", "inequality", "violation"], rows)]


def solve_report(out_dir, log):
    out_dir = Path(out_dir)
    rows = []
    for k, it in enumerate(log.iterations):
        cuts = " ".join(f"{t}:{m}" for t, m in sorted(it.cuts.items()))
        rows.append([k, it.node, it.depth, "" if it.lp_value is None else it.lp_value, it.cuts_added, cuts, it.status])
    files = [write_csv(out_dir / "solve_iterations.csv",
                       ["iteration", "node", "depth", "lp_value", "cuts_added", "cuts_by_class", "status"], rows)]
    pts = [(k, float(it.lp_value)) for k, it in enumerate(log.iterations) if it.lp_value is not None]
    fig, ax = get_plot()
    if pts:
        xs, ys = zip(*pts)
        ax.plot(xs, ys, marker="o", lw=1)
    if log.value is not None:
        ax.axhline(float(log.value), color="tab:red", ls="--", lw=1, label="optimum")
        ax.legend()
    ax.set_xlabel("iteration")
    ax.set_ylabel("LP value")
    files.append(save(fig, out_dir / "solve_lp_values.png"))
    return files
