"""Shared machinery for the seven task families.

A family supplies: a scene generator, a distractor synthesizer, an independent
truth predicate over candidates, extra geometric checks, and panel fragments.
The truth predicate is the certification path: it re-derives the answer from
the scene alone and never consults generator bookkeeping or renderer output.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Optional

from ..canonical import content_hash
from ..manifest import Manifest, ParamSample
from ..rendering.style import PALETTES, StyleConfig, contrast_ratio
from ..rng import Stream

NEAR_MISS_KINDS = (
    "correct",
    "fake_viewpoint",
    "mirror",
    "near_rotation",
    "off_by_one_transform",
    "misaligned_parallel",
    "inconsistent_projection",
)


@dataclass(frozen=True)
class Candidate:
    content: dict                 # JSON-able, self-contained for predicate + render
    near_miss_kind: str           # "correct" for the true answer

    def __post_init__(self):
        if self.near_miss_kind not in NEAR_MISS_KINDS:
            raise ValueError(f"unknown near-miss kind {self.near_miss_kind!r}")


@dataclass
class CandidateSet:
    candidates: list[Candidate]
    correct_index: int

    def __post_init__(self):
        flags = [i for i, c in enumerate(self.candidates)
                 if c.near_miss_kind == "correct"]
        if flags != [self.correct_index]:
            raise ValueError("exactly one candidate must be marked correct")


@dataclass
class ValidationReport:
    failed: list[tuple[str, str]] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return not self.failed


class Family(ABC):
    name: str
    allowed_distractor_kinds: tuple[str, ...]
    candidate_style: str = "panel"     # "panel" | "text"

    @abstractmethod
    def generate_scene(self, params: ParamSample, stream: Stream) -> Any: ...

    @abstractmethod
    def make_candidates(self, scene: Any, params: ParamSample,
                        stream: Stream) -> CandidateSet: ...

    @abstractmethod
    def candidate_true(self, scene: Any, content: dict) -> bool:
        """Independent re-evaluation: does this candidate satisfy the invariant?"""

    @abstractmethod
    def family_checks(self, scene: Any, cset: CandidateSet,
                      manifest: Manifest) -> list[tuple[str, str]]: ...

    @abstractmethod
    def superficial_stats(self, content: dict) -> tuple:
        """Appearance statistics that must not separate correct from distractors."""

    @abstractmethod
    def stimulus_fragments(self, scene: Any) -> list[list[dict]]:
        """One or more stimulus panels as primitive lists."""

    def candidate_fragment(self, content: dict) -> Optional[list[dict]]:
        """Panel primitives for a candidate; None for text-only candidates."""
        return None

    def candidate_text(self, content: dict) -> Optional[str]:
        return None

    def prompt_values(self, scene: Any) -> dict[str, str]:
        return {}

    def used_color_indices(self, scene: Any, cset: CandidateSet) -> set[int]:
        idx: set[int] = set()
        for frag in self.stimulus_fragments(scene):
            idx.update(p["fill"] for p in frag if isinstance(p.get("fill"), int))
        for cand in cset.candidates:
            frag = self.candidate_fragment(cand.content)
            if frag:
                idx.update(p["fill"] for p in frag if isinstance(p.get("fill"), int))
        return idx


def validate_scene(family: Family, scene: Any, cset: CandidateSet,
                   manifest: Manifest, palette: str) -> ValidationReport:
    """Run family margins + the cross-family invariant audits."""
    report = ValidationReport()
    report.failed.extend(family.family_checks(scene, cset, manifest))

    for cand in cset.candidates:
        if cand.near_miss_kind != "correct" and \
                cand.near_miss_kind not in family.allowed_distractor_kinds:
            report.failed.append(
                ("distractor_kind",
                 f"{cand.near_miss_kind} not allowed for {family.name}"))

    if len(cset.candidates) != manifest.num_variants:
        report.failed.append(
            ("candidate_count",
             f"{len(cset.candidates)} != {manifest.num_variants}"))

    # uniqueness audit: sweep the independent predicate over every candidate
    truths = [family.candidate_true(scene, c.content) for c in cset.candidates]
    if sum(truths) != 1:
        report.failed.append(("uniqueness",
                              f"{sum(truths)} candidates satisfy the invariant"))
    elif not truths[cset.correct_index]:
        report.failed.append(("uniqueness", "flagged candidate fails the invariant"))

    # candidate separation: no two candidates may collapse to identical content
    hashes = [content_hash(c.content) for c in cset.candidates]
    if len(set(hashes)) != len(hashes):
        report.failed.append(("candidate_separation", "duplicate candidates"))

    # superficial-statistics parity: appearance alone must not give the answer away
    stats = {family.superficial_stats(c.content) for c in cset.candidates}
    if len(stats) != 1:
        report.failed.append(("superficial_parity",
                              "distractors differ in superficial statistics"))

    # legibility: every palette color used must clear the contrast floor
    floor = manifest.margin("contrast", 3.0)
    background = manifest.renderer.get("background", "#ffffff")
    colors = PALETTES[palette]
    for idx in family.used_color_indices(scene, cset):
        if contrast_ratio(colors[idx], background) < floor:
            report.failed.append(("contrast",
                                  f"color {colors[idx]} below {floor}:1 on background"))
    return report


def default_style(manifest: Manifest, palette: str) -> StyleConfig:
    from ..rendering.style import style_from_manifest

    return style_from_manifest(manifest.renderer, palette)
