"""Regenerate the shipped manifest files in canonical JSON form."""

import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "geogate" / "manifests"

COMMON_RENDERER = {"canvas": [256, 256], "stroke_width": 2, "background": "#ffffff"}

MANIFESTS = {
    "agent_sight": {
        "name": "Agent Sight",
        "family_type": "agent_sight",
        "version": "1.0",
        "ability": "SO",
        "invariant": "view_match",
        "params": {
            "BOX_COUNT": {"type": "int", "min": 1, "max": 5},
            "CYLINDER_COUNT": {"type": "int", "min": 2, "max": 4},
            "COLOR_MAP": {"type": "enum", "values": ["Pastel1", "Pastel2"]},
        },
        "prompt_template": (
            "Imagine you are the $TARGET in the scene above. Which of the "
            "numbered strips shows what you would see, left to right?"
        ),
        "answer": {"num_variants": 4, "variants": ["1", "2", "3", "4"], "correct": "$CORRECT"},
        "validators": [
            {"name": "non_intersection", "margin": 0.05},
            {"name": "candidate_separation"},
            {"name": "uniqueness"},
            {"name": "contrast", "margin": 3.0},
        ],
        "renderer": COMMON_RENDERER,
        "difficulty_features": ["BOX_COUNT", "CYLINDER_COUNT"],
    },
    "sun_direction": {
        "name": "Sun Direction",
        "family_type": "sun_direction",
        "version": "1.0",
        "ability": "SP",
        "invariant": "shadow_direction",
        "params": {
            "FOOTPRINT_COUNT": {"type": "int", "min": 1, "max": 3},
            "AZIMUTH_KIND": {"type": "enum", "values": ["cardinal", "diagonal"]},
            "AZIMUTH_INDEX": {"type": "int", "min": 0, "max": 3},
            "SHADOW_LENGTH": {"type": "real", "min": 0.5, "max": 2.0},
            "COLOR_MAP": {"type": "enum", "values": ["Pastel1", "Pastel2"]},
        },
        "prompt_template": (
            "The gray region is the shadow cast by the colored shapes. "
            "From which compass direction is the sun shining?"
        ),
        "answer": {
            "num_variants": 6,
            "variants": ["1", "2", "3", "4", "5", "6"],
            "correct": "$CORRECT",
        },
        "validators": [
            {"name": "non_intersection", "margin": 0.05},
            {"name": "shadow_margin", "margin": 0.04},
            {"name": "uniqueness"},
            {"name": "contrast", "margin": 3.0},
        ],
        "renderer": COMMON_RENDERER,
        "difficulty_features": ["FOOTPRINT_COUNT", "AZIMUTH_KIND", "SHADOW_LENGTH"],
        "monotone_features": [
            {"knob": "FOOTPRINT_COUNT", "sign": 1},
            {"knob": "AZIMUTH_KIND", "sign": 1},
            {"knob": "SHADOW_LENGTH", "sign": -1},
        ],
    },
    "polyomino": {
        "name": "Polyomino",
        "family_type": "polyomino",
        "version": "1.0",
        "ability": "MOR",
        "invariant": "rotation_congruence",
        "params": {
            "PIECE_SIZE": {"type": "int", "min": 4, "max": 8},
            "ROTATION_STEPS": {"type": "enum", "values": [1, 2, 3]},
            "MIRROR_DISTRACTORS": {"type": "enum", "values": ["absent", "present"]},
            "COLOR_MAP": {"type": "enum", "values": ["Pastel1", "Pastel2"]},
        },
        "prompt_template": (
            "Which numbered shape is the shape above after a rotation "
            "(reflections do not count)?"
        ),
        "answer": {
            "num_variants": 6,
            "variants": ["1", "2", "3", "4", "5", "6"],
            "correct": "$CORRECT",
        },
        "validators": [
            {"name": "symmetry_screen"},
            {"name": "candidate_separation"},
            {"name": "uniqueness"},
            {"name": "contrast", "margin": 3.0},
        ],
        "renderer": COMMON_RENDERER,
        "difficulty_features": ["PIECE_SIZE", "MIRROR_DISTRACTORS"],
    },
    "unfolded": {
        "name": "Unfolded",
        "family_type": "unfolded",
        "version": "1.0",
        "ability": "SV",
        "invariant": "multi_transform",
        "params": {
            "NET_INDEX": {"type": "int", "min": 0, "max": 10},
            "FOLDABLE_DISTRACTORS": {"type": "int", "min": 0, "max": 3},
            "COLOR_MAP": {"type": "enum", "values": ["Pastel1", "Pastel2"]},
        },
        "prompt_template": (
            "The two panels show opposite corners of the same painted cube, "
            "covering all six faces. Which flat pattern folds into exactly "
            "this cube?"
        ),
        "answer": {"num_variants": 4, "variants": ["1", "2", "3", "4"], "correct": "$CORRECT"},
        "validators": [
            {"name": "candidate_separation"},
            {"name": "uniqueness"},
            {"name": "contrast", "margin": 3.0},
        ],
        "renderer": COMMON_RENDERER,
        "difficulty_features": ["FOLDABLE_DISTRACTORS"],
    },
    "pyramid": {
        "name": "Pyramid",
        "family_type": "pyramid",
        "version": "1.0",
        "ability": "SV",
        "invariant": "projection_match",
        "params": {
            "GRID_SIZE": {"type": "int", "min": 3, "max": 5},
            "FILL_FRACTION": {"type": "real", "min": 0.3, "max": 0.7},
            "PERTURB_CELLS": {"type": "int", "min": 2, "max": 4},
            "COLOR_MAP": {"type": "enum", "values": ["Pastel1", "Pastel2"]},
        },
        "prompt_template": (
            "Which numbered set of three views (front, side, top) matches "
            "the block solid above?"
        ),
        "answer": {"num_variants": 4, "variants": ["1", "2", "3", "4"], "correct": "$CORRECT"},
        "validators": [
            {"name": "projection_margin", "margin": 2},
            {"name": "candidate_separation"},
            {"name": "uniqueness"},
            {"name": "contrast", "margin": 3.0},
        ],
        "renderer": COMMON_RENDERER,
        "difficulty_features": ["GRID_SIZE", "FILL_FRACTION", "PERTURB_CELLS"],
        "monotone_features": [
            {"knob": "GRID_SIZE", "sign": 1},
            {"knob": "FILL_FRACTION", "sign": 1},
            {"knob": "PERTURB_CELLS", "sign": -1},
        ],
    },
    "revolution": {
        "name": "Revolution",
        "family_type": "revolution",
        "version": "1.0",
        "ability": "MOR",
        "invariant": "multi_transform",
        "params": {
            "VERTEX_COUNT": {"type": "int", "min": 4, "max": 10},
            "CONCAVITY": {"type": "int", "min": 0, "max": 3},
            "COLOR_MAP": {"type": "enum", "values": ["Pastel1", "Pastel2"]},
        },
        "prompt_template": (
            "The half-profile above is spun one full turn around the dashed "
            "axis. Which numbered silhouette results?"
        ),
        "answer": {
            "num_variants": 6,
            "variants": ["1", "2", "3", "4", "5", "6"],
            "correct": "$CORRECT",
        },
        "validators": [
            {"name": "profile_margin", "margin": 0.04},
            {"name": "candidate_separation"},
            {"name": "uniqueness"},
            {"name": "contrast", "margin": 3.0},
        ],
        "renderer": COMMON_RENDERER,
        "difficulty_features": ["VERTEX_COUNT", "CONCAVITY"],
    },
    "full_views": {
        "name": "Full Views",
        "family_type": "full_views",
        "version": "1.0",
        "ability": "SV",
        "invariant": "projection_match",
        "params": {
            "GRID_SIZE": {"type": "int", "min": 3, "max": 5},
            "FILL_FRACTION": {"type": "real", "min": 0.3, "max": 0.6},
            "PERTURB_CELLS": {"type": "int", "min": 2, "max": 4},
            "COLOR_MAP": {"type": "enum", "values": ["Pastel1", "Pastel2"]},
        },
        "prompt_template": (
            "Which numbered set of four side views, taken while walking "
            "around the solid above, matches it?"
        ),
        "answer": {"num_variants": 4, "variants": ["1", "2", "3", "4"], "correct": "$CORRECT"},
        "validators": [
            {"name": "projection_margin", "margin": 2},
            {"name": "candidate_separation"},
            {"name": "uniqueness"},
            {"name": "contrast", "margin": 3.0},
        ],
        "renderer": COMMON_RENDERER,
        "difficulty_features": ["GRID_SIZE", "FILL_FRACTION", "PERTURB_CELLS"],
        "monotone_features": [
            {"knob": "GRID_SIZE", "sign": 1},
            {"knob": "FILL_FRACTION", "sign": 1},
            {"knob": "PERTURB_CELLS", "sign": -1},
        ],
    },
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Task manifest",
    "type": "object",
    "additionalProperties": False,
    "required": [
        "name", "family_type", "version", "ability", "invariant", "params",
        "prompt_template", "answer", "validators", "renderer",
        "difficulty_features",
    ],
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "family_type": {
            "enum": ["agent_sight", "sun_direction", "polyomino", "unfolded",
                      "pyramid", "revolution", "full_views"],
        },
        "version": {"type": "string", "pattern": r"^\d+\.\d+(\.\d+)?$"},
        "ability": {"enum": ["SP", "SO", "MOR", "SV"]},
        "invariant": {
            "enum": ["view_match", "reference_frame", "rotation_congruence",
                      "topology", "multi_transform", "shadow_direction",
                      "projection_match"],
        },
        "params": {
            "type": "object",
            "minProperties": 1,
            "additionalProperties": {
                "type": "object",
                "additionalProperties": False,
                "required": ["type"],
                "properties": {
                    "type": {"enum": ["int", "real", "enum"]},
                    "min": {"type": "number"},
                    "max": {"type": "number"},
                    "values": {"type": "array", "minItems": 1},
                    "weights": {
                        "type": "array",
                        "items": {"type": "number", "minimum": 0},
                    },
                },
            },
        },
        "prompt_template": {"type": "string"},
        "answer": {
            "type": "object",
            "additionalProperties": False,
            "required": ["num_variants", "variants", "correct"],
            "properties": {
                "num_variants": {"type": "integer", "minimum": 2},
                "variants": {"type": "array", "items": {"type": "string"}},
                "correct": {"type": "string"},
            },
        },
        "validators": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["name"],
                "properties": {
                    "name": {"type": "string"},
                    "margin": {"type": "number"},
                },
            },
        },
        "renderer": {
            "type": "object",
            "additionalProperties": False,
            "required": ["canvas"],
            "properties": {
                "canvas": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 64},
                    "minItems": 2,
                    "maxItems": 2,
                },
                "stroke_width": {"type": "number"},
                "background": {"type": "string"},
            },
        },
        "difficulty_features": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "string"},
        },
        "monotone_features": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["knob", "sign"],
                "properties": {
                    "knob": {"type": "string"},
                    "sign": {"enum": [1, -1]},
                },
            },
        },
    },
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for family, doc in MANIFESTS.items():
        path = OUT / f"{family}.manifest.json"
        path.write_text(
            json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n")
        print("wrote", path)
    schema_path = OUT / "manifest.schema.json"
    schema_path.write_text(json.dumps(SCHEMA, indent=2, sort_keys=True) + "\n")
    print("wrote", schema_path)


if __name__ == "__main__":
    main()
