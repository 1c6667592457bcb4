"""Render style: palettes, canvas settings, contrast arithmetic.

Palette colors are deliberately muted mid-dark tones: every entry keeps a
WCAG-style contrast ratio of at least 3:1 against the white background, so the
legibility validator can hold across any color assignment.
"""

from __future__ import annotations

from dataclasses import dataclass

PALETTES: dict[str, tuple[str, ...]] = {
    "Pastel1": ("#b03a3a", "#3a6ab0", "#2f8a4d", "#8a5aa0", "#a06a1f",
                "#2a8a8a", "#7a5a3a", "#226688", "#446622", "#5a5a5a"),
    "Pastel2": ("#9c4270", "#2f7a9c", "#6a8a2a", "#4a4aa0", "#a04a2a",
                "#996633", "#336655", "#884499", "#126b52", "#6b2f2f"),
}

STROKE_COLOR = "#222222"
SHADOW_COLOR = "#6e6e6e"
MIN_CANVAS = 64


def _srgb_to_linear(c: float) -> float:
    return c / 12.92 if c <= 0.04045 else ((c + 0.055) / 1.055) ** 2.4


def relative_luminance(color: str) -> float:
    r = _srgb_to_linear(int(color[1:3], 16) / 255.0)
    g = _srgb_to_linear(int(color[3:5], 16) / 255.0)
    b = _srgb_to_linear(int(color[5:7], 16) / 255.0)
    return 0.2126 * r + 0.7152 * g + 0.0722 * b


def contrast_ratio(color_a: str, color_b: str) -> float:
    la, lb = relative_luminance(color_a), relative_luminance(color_b)
    hi, lo = max(la, lb), min(la, lb)
    return (hi + 0.05) / (lo + 0.05)


@dataclass(frozen=True)
class StyleConfig:
    canvas: tuple[int, int] = (256, 256)
    palette: str = "Pastel1"
    stroke_width: float = 2.0
    background: str = "#ffffff"

    def __post_init__(self):
        if self.canvas[0] < MIN_CANVAS or self.canvas[1] < MIN_CANVAS:
            raise ValueError(f"canvas must be at least {MIN_CANVAS}x{MIN_CANVAS}")
        if self.palette not in PALETTES:
            raise ValueError(f"unknown palette {self.palette!r}")

    def color(self, fill) -> str:
        """Resolve a fragment fill spec to a hex color."""
        if isinstance(fill, int):
            colors = PALETTES[self.palette]
            if not 0 <= fill < len(colors):
                raise ValueError(f"color index {fill} outside palette {self.palette!r}")
            return colors[fill]
        if fill == "shadow":
            return SHADOW_COLOR
        if fill == "stroke":
            return STROKE_COLOR
        if fill == "background":
            return self.background
        raise ValueError(f"unknown fill spec {fill!r}")


def style_from_manifest(renderer_config: dict, palette: str) -> StyleConfig:
    canvas = tuple(renderer_config.get("canvas", (256, 256)))
    return StyleConfig(
        canvas=canvas,  # type: ignore[arg-type]
        palette=palette,
        stroke_width=float(renderer_config.get("stroke_width", 2)),
        background=renderer_config.get("background", "#ffffff"),
    )
