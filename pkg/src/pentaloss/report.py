"""
Regeneration of the overhead and effective-loss tables, plot-ready curves
and the comparison with tree codes.

Display follows the published table style: three decimals down to 1e-3,
two significant figures in scientific notation below. CSV and JSON carry
full double precision.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .analytics import exact_pre_failure_table, find_threshold, iterate_levels, overhead_for_target, pre_failure
from .strategy import NonPreannouncedRecursion

# values as printed in the publication, used only for side-by-side comparison
PUBLISHED_TABLE1 = {"0.2": (22188, 125), "0.3": (2.3e5, 625), "0.4": (7.6e6, 3125)}
PUBLISHED_TABLE2 = {
    5: (0.317, 0.163, 0.058),
    25: (0.187, 0.033, 0.002),
    125: (0.048, 3.6e-4, 5.6e-8),
    625: (0.001, 4.5e-10, 1.8e-21),
    3125: (1.5e-8, 9.1e-28, 5.5e-62),
}
PUBLISHED_TABLE3 = {
    5: (0.110, 0.052, 0.014),
    25: (0.062, 0.015, 0.001),
    125: (0.021, 0.001, 8.0e-6),
    625: (0.002, 1.1e-5, 3.8e-10),
    3125: (4.1e-5, 7.7e-10, 8.9e-19),
}
TREE_QV = {"0.2": 22188, "0.3": 2.3e5, "0.4": 7.6e6}

TABLE2_P = ("0.4", "0.3", "0.2")
TABLE3_P = ("0.15", "0.1", "0.05")


def display(x) -> str:
    x = float(x)
    if x == 0:
        return "0"
    if abs(x) >= 1e-3:
        return f"{x:.3f}"
    return f"{x:.1e}"


@dataclass
class TableArtifact:
    identifier: str
    row_header: str
    columns: list[str]
    rows: list[tuple[str, list]]
    provenance: dict
    notes: list[str] = field(default_factory=list)

    def cell(self, row_label: str, column: str):
        for label, cells in self.rows:
            if label == row_label:
                return cells[self.columns.index(column)]
        raise KeyError(row_label)

    def to_text(self) -> str:
        width = 12
        lines = [f"{self.identifier}  ({self.provenance.get('method', '')})"]
        lines.append(f"{self.row_header:>{width}} | " + " | ".join(f"{c:>{width}}" for c in self.columns))
        lines.append("-" * len(lines[-1]))
        for label, cells in self.rows:
            shown = [display(v) if isinstance(v, float) and v < 1 else f"{v:g}" if isinstance(v, float) else str(v) for v in cells]
            lines.append(f"{label:>{width}} | " + " | ".join(f"{s:>{width}}" for s in shown))
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([self.row_header] + self.columns)
        for label, cells in self.rows:
            w.writerow([label] + [repr(v) if isinstance(v, float) else v for v in cells])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "identifier": self.identifier,
            "row_header": self.row_header,
            "columns": self.columns,
            "rows": [{"label": label, "cells": cells} for label, cells in self.rows],
            "provenance": self.provenance,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def table1(epsilon: float = 1e-7) -> TableArtifact:
    """Qubits needed for effective preannounced loss <= epsilon, beside the cited tree-code counts."""
    cols = ["p=0.2", "p=0.3", "p=0.4"]
    ours = [overhead_for_target(pre_failure, float(p), epsilon) for p in ("0.2", "0.3", "0.4")]
    strict = [overhead_for_target(pre_failure, float(p), 1e-8) for p in ("0.2", "0.3", "0.4")]
    rows = [
        ("Q^V (trees)", [float(TREE_QV[p]) for p in ("0.2", "0.3", "0.4")]),
        ("Q", [o.qubits for o in ours]),
    ]
    notes = [
        "Q^V values are cited constants for the tree-code scheme, not computed here",
        "effective loss at the listed Q: " + ", ".join(f"{display(o.effective)}" for o in ours),
        f"with a strict 1e-8 target the counts become {[o.qubits for o in strict]}; "
        "the effective loss at Q=125, p=0.2 is 5.6e-08, above 1e-8",
    ]
    return TableArtifact("table1", "", cols, rows, {"method": "analytic", "epsilon": epsilon}, notes)


def table2_exact() -> dict:
    return exact_pre_failure_table([1, 2, 3, 4, 5], TABLE2_P)


def table2() -> TableArtifact:
    """Effective preannounced loss for Q = 5..3125 from exact rational iteration."""
    exact = table2_exact()
    rows = [(str(5**n), [float(exact[(n, p)]) for p in TABLE2_P]) for n in range(1, 6)]
    notes = []
    for n in range(1, 6):
        for k, p in enumerate(TABLE2_P):
            got, pub = display(exact[(n, p)]), display(PUBLISHED_TABLE2[5**n][k])
            if got != pub:
                notes.append(f"Q={5**n}, p={p}: computed {got}, published {pub}")
    return TableArtifact(
        "table2", "Q", [f"p={p}" for p in TABLE2_P], rows, {"method": "analytic (exact rationals)"}, notes
    )


def table3(recursion: NonPreannouncedRecursion | None = None) -> TableArtifact:
    """Effective non-preannounced loss from the optimal-policy recursion."""
    rec = recursion or NonPreannouncedRecursion()
    rows = []
    notes = [f"level map F(p) = {rec.scalar('Z')} from the optimal adaptive policy (DP)"]
    for n in range(1, 6):
        cells = [float(rec.iterate(Fraction(p), n)) for p in TABLE3_P]
        rows.append((str(5**n), cells))
        for k, p in enumerate(TABLE3_P):
            got, pub = display(cells[k]), display(PUBLISHED_TABLE3[5**n][k])
            if got != pub:
                notes.append(f"Q={5**n}, p={p}: computed {got}, published {pub}")
    return TableArtifact(
        "table3",
        "Q",
        [f"p={p}" for p in TABLE3_P],
        rows,
        {"method": "DP optimal policy", "symmetric_bases": rec.symmetric},
        notes,
    )


def parse_grid(spec: str) -> np.ndarray:
    """``"start:stop:step"`` inclusive of stop."""
    start, stop, step = (float(t) for t in spec.split(":"))
    if step <= 0 or stop < start:
        raise ValueError(f"bad grid {spec!r}")
    n = int(round((stop - start) / step))
    return np.round(start + step * np.arange(n + 1), 12)


def parse_levels(spec: str) -> list[int]:
    if ".." in spec:
        a, b = spec.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(t) for t in spec.split(",")]


def failure_function(mode: str):
    if mode in ("pre", "preannounced"):
        return pre_failure
    if mode in ("nonpre", "nonpreannounced"):
        return NonPreannouncedRecursion().scalar("Z")
    raise ValueError(f"unknown mode {mode!r}")


def curve_rows(mode: str, levels, grid):
    base = failure_function(mode)
    label = "pre" if mode.startswith("pre") else "nonpre"
    out = []
    for n in levels:
        for p in grid:
            out.append((label, n, float(p), float(iterate_levels(base, float(p), n))))
    return out


def curve_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["mode", "level", "p", "P_eff"])
    for mode, n, p, v in rows:
        w.writerow([mode, n, repr(p), repr(v)])
    return buf.getvalue()


def curve_json(rows) -> str:
    return json.dumps([{"mode": m, "level": n, "p": p, "P_eff": v} for m, n, p, v in rows])


@dataclass
class ComparisonReport:
    pentagon_q: dict
    tree_qv: dict
    nonpre_curves: dict
    thresholds: dict

    def to_dict(self) -> dict:
        return {
            "pentagon_Q_preannounced": self.pentagon_q,
            "tree_QV_cited": self.tree_qv,
            "pentagon_nonpreannounced_P_L": self.nonpre_curves,
            "thresholds": self.thresholds,
        }


def comparison(grid=None) -> ComparisonReport:
    rec = NonPreannouncedRecursion()
    f = rec.scalar("Z")
    grid = np.round(np.arange(0.01, 0.301, 0.01), 12) if grid is None else grid
    curves = {str(5**n): [[float(p), float(iterate_levels(f, float(p), n))] for p in grid] for n in range(1, 6)}
    ours = {p: overhead_for_target(pre_failure, float(p), 1e-7).qubits for p in TREE_QV}
    return ComparisonReport(
        ours,
        dict(TREE_QV),
        curves,
        {"preannounced": find_threshold(pre_failure), "nonpreannounced": find_threshold(f)},
    )
