"""CSV and SVG emitters.

CSV: UTF-8, header row, comma separated, floats written with ``repr`` (the
shortest string that round-trips).  SVG: an 800x600 line plot computed only
from the CSV text, so it is reproducible from the CSV alone.
"""
from __future__ import annotations

import csv
import io
import math
import os
from typing import Iterable, List, Sequence
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 800, 600
_MARGIN = (70, 30, 40, 60)  # left, right, top, bottom
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(float(v))
    if hasattr(v, "item") and not isinstance(v, (str, bytes)):
        return fmt(v.item())
    return str(v)


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


def write_text(path: str, text: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def _num(s: str):
    try:
        v = float(s)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def svg_from_csv(text: str, title: str = "") -> str:
    """Line plot of every numeric column against the first numeric column."""
    rows = list(csv.reader(io.StringIO(text)))
    header, body = (rows[0], rows[1:]) if rows else ([], [])
    numeric = [j for j in range(len(header))
               if body and all(_num(r[j]) is not None or r[j] == "" for r in body)
               and any(_num(r[j]) is not None for r in body)]
    L, R, T, B = _MARGIN
    pw, ph = WIDTH - L - R, HEIGHT - T - B
    out: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-family="sans-serif" '
        f'font-size="16">{escape(title)}</text>',
        f'<rect x="{L}" y="{T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    if len(numeric) >= 2:
        xj, ys = numeric[0], numeric[1:]
        xs = [_num(r[xj]) for r in body]
        pts = [(_num(r[j]), xs[i]) for j in ys for i, r in enumerate(body)]
        yv = [p for p, xv in pts if p is not None and xv is not None]
        xv_ = [v for v in xs if v is not None]
        if yv and xv_:
            x0, x1 = min(xv_), max(xv_)
            y0, y1 = min(yv), max(yv)
            x1 = x1 if x1 > x0 else x0 + 1.0
            y1 = y1 if y1 > y0 else y0 + 1.0
            sx = lambda v: L + (v - x0) / (x1 - x0) * pw
            sy = lambda v: T + ph - (v - y0) / (y1 - y0) * ph
            for k in range(5):
                fx = x0 + (x1 - x0) * k / 4
                fy = y0 + (y1 - y0) * k / 4
                out.append(f'<text x="{sx(fx):.2f}" y="{T + ph + 18}" text-anchor="middle" '
                           f'font-family="sans-serif" font-size="11">{fx:.4g}</text>')
                out.append(f'<text x="{L - 6}" y="{sy(fy) + 4:.2f}" text-anchor="end" '
                           f'font-family="sans-serif" font-size="11">{fy:.4g}</text>')
            out.append(f'<text x="{L + pw / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle" '
                       f'font-family="sans-serif" font-size="13">{escape(header[xj])}</text>')
            for c, j in enumerate(ys):
                color = _COLORS[c % len(_COLORS)]
                seg = [(xs[i], _num(r[j])) for i, r in enumerate(body)]
                path = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in seg if a is not None and b is not None)
                if path:
                    out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{path}"/>')
                out.append(f'<text x="{L + pw - 8}" y="{T + 16 + 15 * c}" text-anchor="end" fill="{color}" '
                           f'font-family="sans-serif" font-size="12">{escape(header[j])}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
