"""Deterministic SVG output for panel primitives.

Coordinates are formatted with exactly 6 decimal places, attributes are
emitted in a fixed order, and no randomness is consumed, so the bytes are
stable across runs and platforms.
"""

from __future__ import annotations

from .style import StyleConfig


def _fmt(v: float) -> str:
    return f"{float(v):.6f}"


def _stroke_attrs(prim: dict, style: StyleConfig) -> str:
    if prim.get("stroke", True):
        dash = ' stroke-dasharray="6.000000 4.000000"' if prim.get("dashed") else ""
        return (f' stroke="{style.color("stroke")}"'
                f' stroke-width="{_fmt(style.stroke_width)}"{dash}')
    return ' stroke="none"'


def _fill_attr(prim: dict, style: StyleConfig) -> str:
    fill = prim.get("fill")
    if fill is None:
        return ' fill="none"'
    return f' fill="{style.color(fill)}"'


def primitives_to_svg(primitives: list[dict], style: StyleConfig) -> str:
    """Primitives use unit coordinates ([0,1] x [0,1], y pointing up)."""
    w, h = style.canvas

    def sx(x: float) -> float:
        return x * w

    def sy(y: float) -> float:
        return (1.0 - y) * h  # flip: SVG y points down

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect x="0.000000" y="0.000000" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'fill="{style.background}" stroke="none"/>',
    ]
    for prim in primitives:
        kind = prim["shape"]
        fill = _fill_attr(prim, style)
        stroke = _stroke_attrs(prim, style)
        if kind == "rect":
            x, y = sx(prim["x"]), sy(prim["y"] + prim["h"])
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(prim["w"] * w)}" '
                f'height="{_fmt(prim["h"] * h)}"{fill}{stroke}/>')
        elif kind == "circle":
            parts.append(
                f'<circle cx="{_fmt(sx(prim["cx"]))}" cy="{_fmt(sy(prim["cy"]))}" '
                f'r="{_fmt(prim["r"] * w)}"{fill}{stroke}/>')
        elif kind == "polygon":
            pts = " ".join(f"{_fmt(sx(px))},{_fmt(sy(py))}" for px, py in prim["points"])
            parts.append(f'<polygon points="{pts}"{fill}{stroke}/>')
        elif kind == "line":
            parts.append(
                f'<line x1="{_fmt(sx(prim["x1"]))}" y1="{_fmt(sy(prim["y1"]))}" '
                f'x2="{_fmt(sx(prim["x2"]))}" y2="{_fmt(sy(prim["y2"]))}"'
                f'{stroke}/>')
        else:
            raise ValueError(f"unknown primitive {kind!r}")
    parts.append("</svg>")
    return "\n".join(parts)
