"""Text rendering of pipeline reports, plus CSV tables and charts for a report directory."""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .maclane import bracket


def _set(items, prefix: str) -> str:
    return "{" + ", ".join(f"{prefix}{x}" for x in items) + "}"


def _cycle_line(c: dict) -> str:
    return f"c{c['id']} = {_set(c['edges'], 'e')} <-> {_set(c['vertices'], 'v')}"


def _graph_lines(section: dict) -> list[str]:
    checks = section["checks"]
    lines = [f"vertices: {section['vertices']}, edges: {section['edges']}, cyclomatic: {section['cyclomatic']}"]
    if not checks["nonseparable"]:
        lines.append(
            "warning: graph is separable or has low degree "
            f"(bridges {checks['bridges']}, articulation points {checks['articulation_points']}, "
            f"min degree {checks['min_degree']})"
        )
    return lines


def _cycles_lines(section: dict) -> list[str]:
    lines = [f"Cycles ({section['source']}): {section['count']}"]
    lines += [_cycle_line(c) for c in section["cycles"]]
    lines.append(f"P_e = {bracket(section['edge_load'])}")
    lines.append(f"f_quadratic = {section['f_quadratic']}")
    lines.append(f"f_cubic = {section['f_cubic']}")
    return lines


def _basis_lines(section: dict) -> list[str]:
    lines = [f"method: {section['method']}"]
    if section.get("excluded"):
        lines.append("pre-excluded: " + " ".join(f"c{x}" for x in section["excluded"]))
    if "initial_F" in section:
        lines.append(f"F(C_τ) = {section['initial_F']}")
    lines += section.get("trace_lines", [])
    if section.get("zero_pool"):
        lines.append("first pool with F = 0: " + " ".join(f"c{x}" for x in section["zero_pool"]))
    if "zero_F_trials" in section:
        lines.append(f"trials with F = 0: {section['zero_F_trials']}, distinct bases: {section['distinct_bases']}")
    lines.append("basis: " + " ".join(f"c{x}" for x in section["cycles"]))
    lines.append(f"P_e = {bracket(section['edge_load'])}")
    lines.append(f"F = {section['F']}, sum of lengths = {section['sum_of_lengths']}")
    if not section["complete"]:
        lines.append("warning: descent stopped before reaching a full basis")
    return lines


def _rim_line(rim: dict) -> str:
    if rim["simple"]:
        return f"rim = {_set(rim['edges'], 'e')} <-> {_set(rim['vertices'], 'v')}"
    return f"rim = {_set(rim['edges'], 'e')} (not a simple cycle)"


def _plane_lines(section: dict) -> list[str]:
    lines = []
    for s in section["steps"]:
        lines.append(f"remove c{s['cycle']} with e{s['edge']} -> F = {s['F']}")
    checks = section["checks"]
    lines.append(f"N_u = {section['N_u']}, F = {section['F']}")
    lines.append("kept cycles: " + " ".join(f"c{x}" for x in section["cycles"]))
    lines.append(_rim_line(section["rim"]))
    cut = checks["articulation_points"]
    lines.append(
        f"connected: {'yes' if checks['connected'] else 'no'}; "
        f"articulation points: {' '.join(f'v{v}' for v in cut) if cut else 'none'}; "
        f"rotation closed: {'yes' if checks['rotation_closed'] else 'no'}"
    )
    return lines


def _stage3_lines(section: dict) -> list[str]:
    if "error" in section:
        return [f"chord insertion skipped: {section['error']}"]
    lines = ["chords kept: " + " ".join(f"e{e}" for e in section["kept"])]
    lines.append("chords dropped: " + (" ".join(f"e{e}" for e in section["dropped"]) or "none"))
    if section["attached"]:
        lines.append("attached inside cycles: " + " ".join(f"e{e}" for e in section["attached"]))
    lines += [_cycle_line(c) for c in section["added_cycles"]]
    lines.append(f"edges drawn: {section['edges']}, F = {section['F']}")
    return lines


def _rotation_lines(section: dict) -> list[str]:
    if not section["closed"]:
        return [f"rotation system not closed: {section['error']}"]
    lines = []
    for v, nbrs in section["rotation"].items():
        lines.append(f"σ(v{v}): " + " ".join(f"v{u}" for u in nbrs))
    lines.append(f"faces traced: {len(section['faces'])}")
    return lines


def _hamilton_lines(section: dict) -> list[str]:
    lines = [f"status: {section['status']}"]
    for s in section["trace"]:
        lines.append(f"remove c{s['cycle']} (H degree {s['H_degree']}) with e{s['edge']}")
    for c in section["adopted"]:
        lines.append("adopted rim cycle " + _cycle_line(c))
    if section["cycle"]:
        lines.append("cycle: " + " ".join(f"v{v}" for v in section["cycle"]))
    lines += section.get("load_lines", [])
    if section["evidence"]:
        lines.append("evidence: " + json.dumps(section["evidence"]))
    if section.get("distinct"):
        lines.append(f"distinct cycles found: {len(section['distinct'])}")
    return lines


_RENDER = [
    ("graph", _graph_lines),
    ("isometric", _cycles_lines),
    ("basis", _basis_lines),
    ("plane", _plane_lines),
    ("stage3", _stage3_lines),
    ("rotation", _rotation_lines),
    ("hamilton", _hamilton_lines),
]


def render_text(report: dict) -> str:
    blocks = []
    for key, fn in _RENDER:
        if key in report:
            blocks.append("\n".join(fn(report[key])))
    return "\n\n".join(blocks) + "\n"


def _trace_rows(report: dict) -> list[tuple]:
    rows = []
    basis = report.get("basis", {})
    if "initial_F" in basis:
        rows.append(("basis", 0, "", "", basis["initial_F"]))
        for t, s in enumerate(basis["trace"], 1):
            rows.append(("basis", t, s["cycle"], "", s["F"]))
    plane = report.get("plane")
    if plane:
        rows.append(("plane", 0, "", "", basis.get("F", "")))
        for t, s in enumerate(plane["steps"], 1):
            rows.append(("plane", t, s["cycle"], s["edge"], s["F"]))
    return rows


def write_report_dir(report: dict, out: str | Path) -> list[Path]:
    """CSV tables of the F trace and edge loads, each with a matching chart."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    rows = _trace_rows(report)
    path = out / "trace.csv"
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["stage", "step", "cycle", "edge", "F"])
        w.writerows(rows)
    written.append(path)

    loads = {}
    for key in ("isometric", "basis", "plane"):
        if key in report:
            loads[key] = report[key]["edge_load"]
    if loads:
        path = out / "loads.csv"
        names = list(loads)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["edge"] + names)
            for i in range(len(next(iter(loads.values())))):
                w.writerow([i + 1] + [loads[k][i] for k in names])
        written.append(path)

        fig, ax = plt.subplots(figsize=(8, 3))
        width = 0.8 / len(names)
        for j, k in enumerate(names):
            xs = [i + 1 + (j - (len(names) - 1) / 2) * width for i in range(len(loads[k]))]
            ax.bar(xs, loads[k], width=width, label=k)
        ax.set_xlabel("edge")
        ax.set_ylabel("load")
        ax.legend()
        fig.tight_layout()
        path = out / "loads.png"
        fig.savefig(path, dpi=100)
        plt.close(fig)
        written.append(path)

    if rows:
        fig, ax = plt.subplots(figsize=(6, 3))
        for stage in ("basis", "plane"):
            pts = [(r[1], r[4]) for r in rows if r[0] == stage and r[4] != ""]
            if pts:
                ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=stage)
        ax.set_xlabel("removal")
        ax.set_ylabel("f_cubic")
        ax.legend()
        fig.tight_layout()
        path = out / "trace.png"
        fig.savefig(path, dpi=100)
        plt.close(fig)
        written.append(path)
    return written
