"""Minimal deterministic SVG emitter: polyline plots and grayscale rasters.

No plotting dependency; the output is plain markup with fixed float
formatting, so identical data produces byte-identical files.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["line_plot", "heatmap"]

_W, _H = 720, 480
_ML, _MR, _MT, _MB = 72, 24, 40, 56
_COLORS = ("#1f6fb4", "#c23b22", "#2a8f4e", "#6b5b95")
_DASHES = ("", "8 4", "2 3", "6 3 2 3")


def _fmt(v: float) -> str:
    s = f"{v:.6g}"
    return "0" if s == "-0" else s


def _px(v: float) -> str:
    return f"{v:.2f}"


def _tick_values(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * mag
        if step >= raw:
            break
    first = math.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + 1e-9 * step:
        out.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return out


def _pad_range(lo: float, hi: float) -> tuple[float, float]:
    if hi > lo:
        return lo, hi
    pad = max(1.0, abs(lo)) * 0.5
    return lo - pad, hi + pad


def _header(title: str) -> list[str]:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_W / 2:.0f}" y="24" font-family="sans-serif" font-size="15" '
            f'text-anchor="middle">{title}</text>'
        )
    return parts


def _axes(parts: list[str], xlo, xhi, ylo, yhi, xlabel: str, ylabel: str) -> None:
    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def sx(v):
        return _ML + (v - xlo) / (xhi - xlo) * pw

    def sy(v):
        return _H - _MB - (v - ylo) / (yhi - ylo) * ph

    parts.append(
        f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" '
        f'stroke="#000000" stroke-width="1"/>'
    )
    for v in _tick_values(xlo, xhi):
        x = sx(v)
        parts.append(f'<line x1="{_px(x)}" y1="{_H - _MB}" x2="{_px(x)}" '
                     f'y2="{_H - _MB + 5}" stroke="#000000"/>')
        parts.append(f'<text x="{_px(x)}" y="{_H - _MB + 20}" font-family="sans-serif" '
                     f'font-size="12" text-anchor="middle">{_fmt(v)}</text>')
    for v in _tick_values(ylo, yhi):
        y = sy(v)
        parts.append(f'<line x1="{_ML - 5}" y1="{_px(y)}" x2="{_ML}" '
                     f'y2="{_px(y)}" stroke="#000000"/>')
        parts.append(f'<text x="{_ML - 8}" y="{_px(y + 4)}" font-family="sans-serif" '
                     f'font-size="12" text-anchor="end">{_fmt(v)}</text>')
    parts.append(f'<text x="{_ML + pw / 2:.0f}" y="{_H - 12}" font-family="sans-serif" '
                 f'font-size="13" text-anchor="middle">{xlabel}</text>')
    parts.append(f'<text x="16" y="{_MT + ph / 2:.0f}" font-family="sans-serif" '
                 f'font-size="13" text-anchor="middle" '
                 f'transform="rotate(-90 16 {_MT + ph / 2:.0f})">{ylabel}</text>')


def line_plot(path, x, series, xlabel: str, ylabel: str, title: str = "") -> None:
    """Write a polyline plot; ``series`` is a list of ``(label, y_array)``."""
    x = np.asarray(x, dtype=np.float64)
    if x.size == 0 or not series:
        raise ValueError("empty series")
    ys = [np.asarray(y, dtype=np.float64) for _, y in series]
    for y in ys:
        if y.shape != x.shape:
            raise ValueError("series length differs from the x grid")
    xlo, xhi = _pad_range(float(x.min()), float(x.max()))
    ylo = min(float(y.min()) for y in ys)
    yhi = max(float(y.max()) for y in ys)
    ylo, yhi = _pad_range(ylo, yhi)
    span = yhi - ylo
    ylo -= 0.05 * span
    yhi += 0.05 * span

    pw, ph = _W - _ML - _MR, _H - _MT - _MB
    parts = _header(title)
    _axes(parts, xlo, xhi, ylo, yhi, xlabel, ylabel)
    for i, (label, _) in enumerate(series):
        y = ys[i]
        pts = " ".join(
            f"{_px(_ML + (xv - xlo) / (xhi - xlo) * pw)},"
            f"{_px(_H - _MB - (yv - ylo) / (yhi - ylo) * ph)}"
            for xv, yv in zip(x, y)
        )
        color = _COLORS[i % len(_COLORS)]
        dash = _DASHES[i % len(_DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="1.5"{dash_attr}/>')
        if label:
            yleg = _MT + 16 + 16 * i
            parts.append(f'<line x1="{_ML + pw - 150}" y1="{yleg - 4}" '
                         f'x2="{_ML + pw - 120}" y2="{yleg - 4}" stroke="{color}" '
                         f'stroke-width="1.5"{dash_attr}/>')
            parts.append(f'<text x="{_ML + pw - 114}" y="{yleg}" '
                         f'font-family="sans-serif" font-size="12">{label}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


def heatmap(path, x, rows, Z, xlabel: str, ylabel: str, title: str = "") -> None:
    """Write a grayscale raster: ``Z[i, j]`` is the value at row ``rows[i]``,
    column ``x[j]``.  Bright cells mark large values on a black background."""
    x = np.asarray(x, dtype=np.float64)
    rows = np.asarray(rows, dtype=np.float64)
    Z = np.asarray(Z, dtype=np.float64)
    if Z.size == 0 or Z.shape != (rows.size, x.size):
        raise ValueError("Z must be a nonempty (len(rows), len(x)) array")
    vmax = float(Z.max())
    if vmax <= 0.0:
        raise ValueError("raster needs at least one positive value")
    levels = np.clip(np.rint(255.0 * Z / vmax), 0, 255).astype(np.int64)

    pw, ph = _W - _ML - _MR, _H - _MT - _MB
    cw = pw / x.size
    ch = ph / rows.size
    parts = _header(title)
    parts.append(f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="#000000"/>')
    # one rect per run of equal nonzero level within a row; rows are laid out
    # top-to-bottom from the last entry so larger row values sit higher
    for i in range(rows.size):
        y = _MT + (rows.size - 1 - i) * ch
        row = levels[i]
        j = 0
        while j < row.size:
            lvl = row[j]
            k = j + 1
            while k < row.size and row[k] == lvl:
                k += 1
            if lvl > 0:
                g = int(lvl)
                parts.append(
                    f'<rect x="{_px(_ML + j * cw)}" y="{_px(y)}" '
                    f'width="{_px((k - j) * cw + 0.5)}" height="{_px(ch + 0.5)}" '
                    f'fill="#{g:02x}{g:02x}{g:02x}"/>'
                )
            j = k
    xlo, xhi = float(x.min()), float(x.max())
    ylo, yhi = float(rows.min()), float(rows.max())
    if xhi == xlo:
        xhi = xlo + 1.0
    if yhi == ylo:
        yhi = ylo + 1.0
    _axes(parts, xlo, xhi, ylo, yhi, xlabel, ylabel)
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
