"""Rendering contract: deterministic SVG bytes, style resolution, PNG export."""

import io

import pytest
from PIL import Image

from geogate.rendering import Panel, render_panel, render_panel_png
from geogate.rendering.style import (PALETTES, StyleConfig, contrast_ratio,
                                     style_from_manifest)
from geogate.rendering.svg import primitives_to_svg

STYLE = StyleConfig()

FRAG = [
    {"shape": "rect", "x": 0.1, "y": 0.2, "w": 0.3, "h": 0.4, "fill": 0,
     "stroke": True},
    {"shape": "circle", "cx": 0.7, "cy": 0.6, "r": 0.1, "fill": "shadow",
     "stroke": False},
    {"shape": "polygon", "points": [[0.1, 0.1], [0.9, 0.1], [0.5, 0.9]],
     "fill": None, "stroke": True},
    {"shape": "line", "x1": 0.0, "y1": 0.5, "x2": 1.0, "y2": 0.5,
     "dashed": True},
]


def test_svg_bytes_are_stable():
    a = primitives_to_svg(FRAG, STYLE)
    b = primitives_to_svg(list(FRAG), STYLE)
    assert a == b
    assert a.encode() == b.encode()


def test_svg_coordinates_fixed_precision():
    svg = primitives_to_svg(FRAG, STYLE)
    assert 'x="25.600000"' in svg            # 0.1 * 256
    assert svg.splitlines()[1].startswith("<rect")   # background comes first
    assert 'fill="#ffffff"' in svg.splitlines()[1]


def test_svg_y_axis_points_up():
    svg = primitives_to_svg(
        [{"shape": "circle", "cx": 0.5, "cy": 0.9, "r": 0.05, "fill": 0}], STYLE)
    assert 'cy="25.600000"' in svg           # near the canvas top


def test_svg_rejects_unknown_primitive():
    with pytest.raises(ValueError, match="unknown primitive"):
        primitives_to_svg([{"shape": "star"}], STYLE)


def test_render_panel_rejects_empty():
    with pytest.raises(ValueError, match="empty"):
        render_panel([], STYLE)
    with pytest.raises(ValueError):
        Panel(role="stimulus", svg="")


def test_panel_roles_recorded():
    panel = render_panel(FRAG, STYLE, role="candidate")
    assert panel.role == "candidate"
    assert panel.format_tag == "svg"


def test_png_export_matches_canvas():
    png = render_panel_png(FRAG, STYLE)
    img = Image.open(io.BytesIO(png))
    assert img.size == STYLE.canvas
    assert img.mode == "RGBA"


def test_png_paints_the_fill_color():
    frag = [{"shape": "rect", "x": 0.0, "y": 0.0, "w": 1.0, "h": 1.0,
             "fill": 0, "stroke": False}]
    png = render_panel_png(frag, STYLE)
    img = Image.open(io.BytesIO(png))
    r, g, b, _ = img.getpixel((128, 128))
    assert f"#{r:02x}{g:02x}{b:02x}" == PALETTES["Pastel1"][0]


def test_all_palette_colors_clear_contrast_floor():
    for palette in PALETTES.values():
        for color in palette:
            assert contrast_ratio(color, "#ffffff") >= 3.0


def test_style_resolution_errors():
    with pytest.raises(ValueError, match="outside palette"):
        STYLE.color(99)
    with pytest.raises(ValueError, match="unknown fill"):
        STYLE.color("sparkle")
    with pytest.raises(ValueError, match="canvas"):
        StyleConfig(canvas=(32, 32))
    with pytest.raises(ValueError, match="palette"):
        StyleConfig(palette="Vivid")


def test_style_from_manifest_config():
    style = style_from_manifest(
        {"canvas": [128, 128], "stroke_width": 1, "background": "#fafafa"},
        "Pastel2")
    assert style.canvas == (128, 128)
    assert style.background == "#fafafa"
    assert style.color(0) == PALETTES["Pastel2"][0]
