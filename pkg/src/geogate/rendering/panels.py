"""Panel assembly: primitives -> SVG (contract format) and PNG (service format)."""

from __future__ import annotations

import io
from dataclasses import dataclass

from PIL import Image, ImageDraw

from .style import StyleConfig
from .svg import primitives_to_svg


@dataclass(frozen=True)
class Panel:
    role: str           # "stimulus" | "candidate"
    svg: str
    format_tag: str = "svg"

    def __post_init__(self):
        if not self.svg:
            raise ValueError("empty panel")


def render_panel(primitives: list[dict], style: StyleConfig,
                 role: str = "stimulus") -> Panel:
    """Deterministic vector panel. Raises on empty fragments or bad color refs."""
    if not primitives:
        raise ValueError("refusing to render an empty fragment")
    return Panel(role=role, svg=primitives_to_svg(primitives, style))


def render_panel_png(primitives: list[dict], style: StyleConfig) -> bytes:
    """Raster export of the same primitives (8-bit RGBA). Fixed software
    rasterizer; not part of the cross-platform byte-determinism contract."""
    if not primitives:
        raise ValueError("refusing to render an empty fragment")
    w, h = style.canvas
    img = Image.new("RGBA", (w, h), style.background)
    draw = ImageDraw.Draw(img)
    sw = max(1, int(round(style.stroke_width)))

    def sx(x: float) -> float:
        return x * w

    def sy(y: float) -> float:
        return (1.0 - y) * h

    for prim in primitives:
        kind = prim["shape"]
        fill = prim.get("fill")
        fill_color = style.color(fill) if fill is not None else None
        outline = style.color("stroke") if prim.get("stroke", True) else None
        if kind == "rect":
            box = [sx(prim["x"]), sy(prim["y"] + prim["h"]),
                   sx(prim["x"] + prim["w"]), sy(prim["y"])]
            draw.rectangle(box, fill=fill_color, outline=outline, width=sw)
        elif kind == "circle":
            r = prim["r"] * w
            cx, cy = sx(prim["cx"]), sy(prim["cy"])
            draw.ellipse([cx - r, cy - r, cx + r, cy + r],
                         fill=fill_color, outline=outline, width=sw)
        elif kind == "polygon":
            pts = [(sx(px), sy(py)) for px, py in prim["points"]]
            draw.polygon(pts, fill=fill_color, outline=outline)
        elif kind == "line":
            draw.line([sx(prim["x1"]), sy(prim["y1"]), sx(prim["x2"]), sy(prim["y2"])],
                      fill=style.color("stroke"), width=sw)
        else:
            raise ValueError(f"unknown primitive {kind!r}")
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()
