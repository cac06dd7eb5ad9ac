"""Machine-readable reports and their JSON / CSV / SVG renderings."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class Check:
    name: str
    value: float
    tol: float
    passed: bool

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name}: {self.value:.3e} (tol {self.tol:.1e})"


@dataclass
class Report:
    title: str
    measure: Any = None
    order: int | None = None
    scalars: dict[str, Any] = field(default_factory=dict)
    sequences: dict[str, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    verdicts: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, value: float, tol: float) -> Check:
        """Record ``value <= tol`` (non-finite values fail)."""
        value = float(value)
        c = Check(name, value, tol, bool(math.isfinite(value) and value <= tol))
        self.checks.append(c)
        return c

    def add_sequence(self, name: str, index, values) -> None:
        self.sequences[name] = (np.asarray(index, dtype=int), np.asarray(values))

    def seq(self, name: str) -> np.ndarray:
        return self.sequences[name][1]

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        for k, v in other.scalars.items():
            self.scalars[prefix + k] = v
        for k, v in other.sequences.items():
            self.sequences[prefix + k] = v
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.value, c.tol, c.passed))
        for k, v in other.verdicts.items():
            self.verdicts[prefix + k] = v
        return self

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "measure": self.measure,
            "order": self.order,
            "passed": self.passed,
            "scalars": dict(self.scalars),
            "verdicts": dict(self.verdicts),
            "checks": [
                {"name": c.name, "value": c.value, "tol": c.tol, "passed": c.passed} for c in self.checks
            ],
            "sequences": {
                k: {"index": idx.tolist(), "values": list(vals)} for k, (idx, vals) in self.sequences.items()
            },
        }


# --------------------------------------------------------------------------
# JSON: 17 significant digits, scientific notation, sorted keys
# --------------------------------------------------------------------------


def _num(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return f"{x + 0.0:.16e}"  # + 0.0 folds -0.0 into 0.0


def _emit(v, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _num(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        return f'{{"im": {_num(float(v.imag))}, "re": {_num(float(v.real))}}}'
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=False)
    if isinstance(v, np.ndarray):
        v = v.tolist()
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{_emit(str(k), indent, level + 1)}: {_emit(v[k], indent, level + 1)}" for k in sorted(v)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        if all(isinstance(x, (int, float, complex, np.number)) and not isinstance(x, bool) for x in v):
            return "[" + ", ".join(_emit(x, indent, level + 1) for x in v) + "]"
        items = [pad + _emit(x, indent, level + 1) for x in v]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def dumps(obj, indent: int = 2) -> str:
    if isinstance(obj, Report):
        obj = obj.to_dict()
    return _emit(obj, indent, 0) + "\n"


# --------------------------------------------------------------------------
# CSV: one column per sequence (complex sequences split into re/im)
# --------------------------------------------------------------------------


def to_csv(report: Report) -> str:
    columns: dict[str, dict[int, float]] = {}
    indices: set[int] = set()
    for name, (idx, vals) in report.sequences.items():
        vals = np.asarray(vals)
        if np.iscomplexobj(vals):
            columns[name + ".re"] = dict(zip(idx.tolist(), vals.real.tolist()))
            columns[name + ".im"] = dict(zip(idx.tolist(), vals.imag.tolist()))
        else:
            columns[name] = dict(zip(idx.tolist(), vals.astype(float).tolist()))
        indices.update(idx.tolist())
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    names = list(columns)
    wr.writerow(["n"] + names)
    for i in sorted(indices):
        row = [str(i)]
        for nm in names:
            x = columns[nm].get(i)
            row.append("" if x is None else f"{x:.16e}")
        wr.writerow(row)
    return buf.getvalue()


# --------------------------------------------------------------------------
# SVG: plain line plot, fixed 800x500 viewport
# --------------------------------------------------------------------------


def to_svg(name: str, index, values, width: int = 800, height: int = 500) -> str:
    x = np.asarray(index, dtype=float)
    y = np.asarray(values)
    if np.iscomplexobj(y):
        y = np.abs(y)
    y = y.astype(float)
    ok = np.isfinite(y)
    x, y = x[ok], y[ok]
    m = 50
    if x.size == 0:
        x, y = np.array([0.0]), np.array([0.0])
    x0, x1 = x.min(), x.max() if x.max() > x.min() else x.min() + 1
    y0, y1 = y.min(), y.max() if y.max() > y.min() else y.min() + 1
    px = m + (x - x0) / (x1 - x0) * (width - 2 * m)
    py = height - m - (y - y0) / (y1 - y0) * (height - 2 * m)
    pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'  <rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n'
        f'  <text x="{width / 2:.0f}" y="30" text-anchor="middle" font-family="sans-serif" font-size="16">{name}</text>\n'
        f'  <line x1="{m}" y1="{height - m}" x2="{width - m}" y2="{height - m}" stroke="black"/>\n'
        f'  <line x1="{m}" y1="{m}" x2="{m}" y2="{height - m}" stroke="black"/>\n'
        f'  <text x="{m}" y="{height - m + 20}" font-family="sans-serif" font-size="12">{x0:g}</text>\n'
        f'  <text x="{width - m}" y="{height - m + 20}" text-anchor="end" font-family="sans-serif" font-size="12">{x1:g}</text>\n'
        f'  <text x="{m - 5}" y="{height - m}" text-anchor="end" font-family="sans-serif" font-size="12">{y0:.3g}</text>\n'
        f'  <text x="{m - 5}" y="{m + 4}" text-anchor="end" font-family="sans-serif" font-size="12">{y1:.3g}</text>\n'
        f'  <polyline fill="none" stroke="steelblue" stroke-width="2" points="{pts}"/>\n'
        "</svg>\n"
    )
