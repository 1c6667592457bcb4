"""Access to the manifests shipped inside the package."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .manifest import Manifest, parse_manifest

FAMILY_TYPES = ("agent_sight", "sun_direction", "polyomino", "unfolded",
                "pyramid", "revolution", "full_views")


def manifest_dir() -> Path:
    return Path(str(resources.files("geogate") / "manifests"))


def load_shipped_manifest(family_type: str) -> Manifest:
    path = manifest_dir() / f"{family_type}.manifest.json"
    return parse_manifest(path.read_text())


def load_all_shipped() -> dict[str, Manifest]:
    return {f: load_shipped_manifest(f) for f in FAMILY_TYPES}


def load_schema() -> dict:
    return json.loads((manifest_dir() / "manifest.schema.json").read_text())
