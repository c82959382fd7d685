"""File emitters: delimited samples (CSV), line plots (SVG), meshes (OBJ).

All writers are deterministic: identical inputs produce byte-identical
files.  Numeric output uses 17 significant digits, enough for a lossless
double round-trip.
"""

from __future__ import annotations

import numpy as np

from .errors import IoFailure
from .surface import TriangleMesh

_FMT = "%.17g"


def _write_text(path, text: str):
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def write_csv(path, header, rows):
    """Header row, then one comma-separated row per sample at full precision."""
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2 or len(header) != rows.shape[1]:
        raise ValueError("header length must match the row width")
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_FMT % value for value in row))
    _write_text(path, "\n".join(lines) + "\n")


def write_svg(path, x, ys, labels=None, width=800, height=600, margin=50):
    """Plot each column of ``ys`` against ``x`` as one polyline, with axes.

    Axes are drawn as ``line`` elements so that the polyline count equals
    the number of plotted functions.
    """
    x = np.asarray(x, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if ys.ndim == 1:
        ys = ys[:, None]
    if ys.shape[0] != x.size:
        raise ValueError("ys must have one row per x sample")
    x_lo, x_hi = float(x.min()), float(x.max())
    y_lo, y_hi = float(ys.min()), float(ys.max())
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0
    inner_w = width - 2 * margin
    inner_h = height - 2 * margin

    def to_px(xv, yv):
        px = margin + (xv - x_lo) / x_span * inner_w
        py = height - margin - (yv - y_lo) / y_span * inner_h
        return px, py

    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height - margin}" stroke="black"/>',
    ]
    for k in range(ys.shape[1]):
        points = " ".join(
            "%.3f,%.3f" % to_px(xv, yv) for xv, yv in zip(x, ys[:, k])
        )
        color = palette[k % len(palette)]
        parts.append(f'<polyline fill="none" stroke="{color}" points="{points}"/>')
        if labels is not None:
            lx, ly = to_px(x[-1], ys[-1, k])
            parts.append(
                f'<text x="{lx:.1f}" y="{ly:.1f}" font-size="12" '
                f'fill="{color}">{labels[k]}</text>'
            )
    parts.append("</svg>")
    _write_text(path, "\n".join(parts) + "\n")


def write_obj(path, mesh: TriangleMesh):
    """Wavefront OBJ: v/vt/vn records plus 1-based f v/vt/vn triples."""
    lines = []
    for p in mesh.positions:
        lines.append("v " + " ".join(_FMT % c for c in p))
    for t in mesh.texcoords:
        lines.append("vt " + " ".join(_FMT % c for c in t))
    for normal in mesh.normals:
        lines.append("vn " + " ".join(_FMT % c for c in normal))
    for a, b, c in mesh.faces + 1:
        lines.append(f"f {a}/{a}/{a} {b}/{b}/{b} {c}/{c}/{c}")
    _write_text(path, "\n".join(lines) + "\n")
