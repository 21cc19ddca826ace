"""CSV, JSON and SVG writers. Every file is written to a temporary sibling
and renamed into place."""
from __future__ import annotations

import csv
import io
import json
import math
import sys

from .zerodata import atomic_write_text


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def write_csv(path, header, rows):
    text = csv_text(header, rows)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        atomic_write_text(path, text)


def _default(o):
    if isinstance(o, complex):
        return {"re": o.real, "im": o.imag}
    if hasattr(o, "item"):
        return o.item()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_default) + "\n"


def write_json(path, obj):
    text = json_text(obj)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        atomic_write_text(path, text)


def _ticks(lo, hi, n=6):
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    out, k = [], 0
    while start + k * step <= hi + 1e-12:
        out.append(round(start + k * step, 10))
        k += 1
    return out


def svg_lines(series, title="", xlabel="t", ylabel="", width=720, height=420) -> str:
    """Simple line plot.

    Args:
        series: list of (label, xs, ys, style) with style "solid", "thin" or "dashed".
    """
    ml, mr, mt, mb = 60, 20, 30, 45
    xs_all = [v for _, xs, _, _ in series for v in xs]
    ys_all = [v for _, _, ys, _ in series for v in ys if math.isfinite(v)]
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = 0.0, max(ys_all) * 1.05 if ys_all else 1.0
    sx = lambda v: ml + (v - x0) / ((x1 - x0) or 1) * (width - ml - mr)
    sy = lambda v: height - mb - (v - y0) / ((y1 - y0) or 1) * (height - mt - mb)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           '<rect width="100%" height="100%" fill="white"/>',
           f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" font-size="13">{title}</text>']
    ax = f"M{ml},{mt} L{ml},{height - mb} L{width - mr},{height - mb}"
    out.append(f'<path d="{ax}" stroke="black" fill="none"/>')
    for v in _ticks(x0, x1):
        X = sx(v)
        out.append(f'<line x1="{X:.2f}" y1="{height - mb}" x2="{X:.2f}" y2="{height - mb + 5}" stroke="black"/>')
        out.append(f'<text x="{X:.2f}" y="{height - mb + 18}" text-anchor="middle" font-size="11">{v:g}</text>')
    for v in _ticks(y0, y1, 5):
        Y = sy(v)
        out.append(f'<line x1="{ml - 5}" y1="{Y:.2f}" x2="{ml}" y2="{Y:.2f}" stroke="black"/>')
        out.append(f'<text x="{ml - 8}" y="{Y + 4:.2f}" text-anchor="end" font-size="11">{v:g}</text>')
    out.append(f'<text x="{width / 2:.1f}" y="{height - 8}" text-anchor="middle" font-size="12">{xlabel}</text>')
    out.append(f'<text x="14" y="{height / 2:.1f}" font-size="12" transform="rotate(-90 14 {height / 2:.1f})" '
               f'text-anchor="middle">{ylabel}</text>')
    styles = {"solid": 'stroke-width="1.8"', "thin": 'stroke-width="0.8"',
              "dashed": 'stroke-width="0.8" stroke-dasharray="5,3"'}
    for k, (label, xs, ys, style) in enumerate(series):
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(xs, ys) if math.isfinite(b))
        out.append(f'<polyline fill="none" stroke="black" {styles.get(style, "")} points="{pts}"/>')
        ly = mt + 14 * k + 6
        out.append(f'<text x="{width - mr - 4}" y="{ly}" text-anchor="end" font-size="11">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, series, **kw):
    atomic_write_text(path, svg_lines(series, **kw))
