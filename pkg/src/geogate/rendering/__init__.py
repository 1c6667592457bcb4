from .style import PALETTES, StyleConfig, contrast_ratio, style_from_manifest
from .panels import Panel, render_panel, render_panel_png
from .svg import primitives_to_svg

__all__ = [
    "PALETTES",
    "StyleConfig",
    "contrast_ratio",
    "style_from_manifest",
    "Panel",
    "render_panel",
    "render_panel_png",
    "primitives_to_svg",
]
