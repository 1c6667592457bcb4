"""Challenge synthesis: sample knobs, build a scene, certify it, render panels.

Synthesis is a rejection loop: every attempt re-derives the answer through the
family's independent predicate and the cross-family audits; only accepted
scenes become instances. Instance ids hash the certified content, so identical
seeds reproduce identical ids on any platform.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .canonical import canonical_dumps, content_hash
from .families import FAMILIES, CandidateSet, Family, validate_scene
from .manifest import DifficultyPredictor, Manifest, render_prompt, sample_params
from .rendering import render_panel, render_panel_png
from .rendering.style import style_from_manifest
from .resources import FAMILY_TYPES, load_shipped_manifest
from .rng import Stream

DEFAULT_BUDGET = 1000
# easy : medium : hard mix targeted by batch generation
BIN_NAMES = ("easy", "medium", "hard")
BIN_WEIGHTS = (10, 6, 5)


class SynthesisError(RuntimeError):
    pass


@dataclass
class Instance:
    instance_id: str
    family: str
    ability: str
    seed: int
    params: dict[str, Any]
    prompt: str
    candidate_labels: list[str]
    correct_label: str
    candidates: list[dict]            # presentation order: {content, near_miss_kind}
    fragments: dict[str, Any]         # stimulus + candidate primitive lists
    candidate_texts: list[Optional[str]]
    style: dict[str, Any]
    difficulty: Optional[dict] = None  # {"d": float, "bin": str}
    panels: dict[str, list[str]] = field(default_factory=dict)  # SVG strings

    def public_view(self) -> dict:
        """What a solver may see: no answer, no kinds, no knob values."""
        return {
            "instance_id": self.instance_id,
            "family": self.family,
            "prompt": self.prompt,
            "candidate_labels": list(self.candidate_labels),
            "candidate_texts": list(self.candidate_texts),
        }

    def to_dict(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "family": self.family,
            "ability": self.ability,
            "seed": self.seed,
            "params": self.params,
            "prompt": self.prompt,
            "candidate_labels": self.candidate_labels,
            "correct_label": self.correct_label,
            "candidates": self.candidates,
            "fragments": self.fragments,
            "candidate_texts": self.candidate_texts,
            "style": self.style,
            "difficulty": self.difficulty,
        }

    @staticmethod
    def from_dict(doc: dict) -> "Instance":
        return Instance(
            instance_id=doc["instance_id"], family=doc["family"],
            ability=doc["ability"], seed=doc["seed"], params=doc["params"],
            prompt=doc["prompt"], candidate_labels=doc["candidate_labels"],
            correct_label=doc["correct_label"], candidates=doc["candidates"],
            fragments=doc["fragments"], candidate_texts=doc["candidate_texts"],
            style=doc["style"], difficulty=doc.get("difficulty"))


def _attempt_seed(seed: int, attempt: int) -> int:
    return Stream.from_seed(seed).split("attempt").split(attempt).next_u64() >> 1


def synthesize(family_type: str, seed: int, *,
               manifest: Optional[Manifest] = None,
               bin: Optional[str] = None,
               model: Optional[DifficultyPredictor] = None,
               budget: int = DEFAULT_BUDGET,
               render: bool = True) -> Instance:
    """Generate one certified instance for a family, deterministically."""
    if family_type not in FAMILIES:
        raise SynthesisError(f"unknown family {family_type!r}")
    manifest = manifest or load_shipped_manifest(family_type)
    family = FAMILIES[family_type]

    for attempt in range(budget):
        sub_seed = _attempt_seed(seed, attempt)
        params = sample_params(manifest, sub_seed, bin=bin, model=model)
        stream = Stream.from_seed(sub_seed).split("scene").split(family_type)
        scene = family.generate_scene(params, stream.split("generate"))
        cset = family.make_candidates(scene, params, stream.split("candidates"))
        report = validate_scene(family, scene, cset, manifest,
                                params.values["COLOR_MAP"])
        if report.accepted:
            return _build_instance(manifest, family, params.values, scene, cset,
                                   seed, stream, model, render)
    raise SynthesisError(
        f"validation budget exhausted for family {family_type!r} (seed {seed})")


def _build_instance(manifest: Manifest, family: Family, values: dict,
                    scene: Any, cset: CandidateSet, seed: int, stream: Stream,
                    model: Optional[DifficultyPredictor], render: bool) -> Instance:
    order = list(range(len(cset.candidates)))
    stream.split("order").shuffle(order)
    candidates = [{"content": cset.candidates[i].content,
                   "near_miss_kind": cset.candidates[i].near_miss_kind}
                  for i in order]
    labels = list(manifest.variant_labels)
    correct_label = labels[order.index(cset.correct_index)]
    prompt = render_prompt(manifest, family.prompt_values(scene))

    stim_frags = family.stimulus_fragments(scene)
    cand_frags = [family.candidate_fragment(c["content"]) for c in candidates]
    cand_texts = [family.candidate_text(c["content"]) for c in candidates]

    core = {
        "family": manifest.id.family_type,
        "params": values,
        "prompt": prompt,
        "candidates": candidates,
        "correct_label": correct_label,
    }
    instance_id = content_hash(core)

    difficulty = None
    if model is not None and model.supports_family(manifest.id.family_type):
        d = model.predict_from_params(manifest.id.family_type, values)
        difficulty = {"d": d, "bin": model.bin_of(d)}

    style = {"palette": values["COLOR_MAP"], **manifest.renderer}
    inst = Instance(
        instance_id=instance_id, family=manifest.id.family_type,
        ability=manifest.ability, seed=seed, params=values, prompt=prompt,
        candidate_labels=labels, correct_label=correct_label,
        candidates=candidates,
        fragments={"stimulus": stim_frags, "candidates": cand_frags},
        candidate_texts=cand_texts, style=style, difficulty=difficulty)
    if render:
        inst.panels = render_instance_panels(inst)
    return inst


def instance_style(inst: Instance):
    return style_from_manifest(
        {k: v for k, v in inst.style.items() if k != "palette"},
        inst.style["palette"])


def render_instance_panels(inst: Instance) -> dict[str, list[str]]:
    style = instance_style(inst)
    stimulus = [render_panel(frag, style, role="stimulus").svg
                for frag in inst.fragments["stimulus"]]
    candidates = [render_panel(frag, style, role="candidate").svg
                  if frag else "" for frag in inst.fragments["candidates"]]
    return {"stimulus": stimulus, "candidates": candidates}


def render_instance_png(inst: Instance, role: str, index: int) -> bytes:
    frags = inst.fragments[role]
    frag = frags[index]
    if not frag:
        raise ValueError("text-only candidate has no panel")
    return render_panel_png(frag, instance_style(inst))


def apportion(total: int, weights: tuple[int, ...]) -> list[int]:
    """Largest-remainder split of `total` into len(weights) integer parts."""
    denom = sum(weights)
    quotas = [total * w / denom for w in weights]
    parts = [int(q) for q in quotas]
    leftover = total - sum(parts)
    order = sorted(range(len(weights)), key=lambda i: (parts[i] - quotas[i], i))
    for i in order[:leftover]:
        parts[i] += 1
    return parts


def bin_plan(counts: dict[str, int]) -> dict[str, dict[str, int]]:
    """Per-family easy/medium/hard quotas whose column sums follow the target
    mix exactly (largest remainder down the easy and medium columns)."""
    families = sorted(counts)
    total = sum(counts.values())
    col_totals = apportion(total, BIN_WEIGHTS)
    plan = {f: {} for f in families}
    remaining = {f: counts[f] for f in families}
    for bin_name, col_total in zip(BIN_NAMES[:2], col_totals[:2]):
        quotas = {f: counts[f] * col_total / total for f in families}
        parts = {f: int(quotas[f]) for f in families}
        leftover = col_total - sum(parts.values())
        order = sorted(families, key=lambda f: (parts[f] - quotas[f], f))
        for f in order[:leftover]:
            parts[f] += 1
        for f in families:
            plan[f][bin_name] = parts[f]
            remaining[f] -= parts[f]
    for f in families:
        if remaining[f] < 0:
            raise SynthesisError("bin plan infeasible for requested counts")
        plan[f]["hard"] = remaining[f]
    return plan


def synthesize_batch(out_dir: str | Path, seed: int, *,
                     counts: Optional[dict[str, int]] = None,
                     model: Optional[DifficultyPredictor] = None,
                     budget: int = DEFAULT_BUDGET,
                     render: bool = True) -> dict:
    """Generate a dataset directory: instances/<id>/ plus index.json."""
    counts = counts or {f: 150 for f in FAMILY_TYPES}
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    plan = bin_plan(counts) if model is not None else None

    index_rows = []
    batch_stream = Stream.from_seed(seed).split("batch")
    for family_type in sorted(counts):
        fam_stream = batch_stream.split(family_type)
        targets: list[Optional[str]] = []
        if plan is None:
            targets = [None] * counts[family_type]
        else:
            for bin_name in BIN_NAMES:
                targets.extend([bin_name] * plan[family_type][bin_name])
        for i, target_bin in enumerate(targets):
            inst_seed = fam_stream.split(i).next_u64() >> 1
            inst = synthesize(family_type, inst_seed, bin=target_bin,
                              model=model, budget=budget, render=render)
            write_instance(root, inst)
            index_rows.append({
                "instance_id": inst.instance_id,
                "family": inst.family,
                "ability": inst.ability,
                "bin": inst.difficulty["bin"] if inst.difficulty else None,
                "correct_label": inst.correct_label,
            })
    index = {"seed": seed, "counts": counts, "instances": index_rows}
    (root / "index.json").write_text(json.dumps(index, indent=2, sort_keys=True))
    return index


def write_instance(root: Path, inst: Instance) -> Path:
    inst_dir = root / "instances" / inst.instance_id
    inst_dir.mkdir(parents=True, exist_ok=True)
    (inst_dir / "instance.json").write_text(canonical_dumps(inst.to_dict()))
    for i, svg in enumerate(inst.panels.get("stimulus", [])):
        (inst_dir / f"stimulus_{i}.svg").write_text(svg)
    for i, svg in enumerate(inst.panels.get("candidates", [])):
        if svg:
            (inst_dir / f"candidate_{i}.svg").write_text(svg)
    return inst_dir


def load_instance(root: Path, instance_id: str) -> Instance:
    doc = json.loads((root / "instances" / instance_id / "instance.json").read_text())
    inst = Instance.from_dict(doc)
    inst.panels = render_instance_panels(inst)
    return inst


def load_index(root: Path) -> dict:
    return json.loads((Path(root) / "index.json").read_text())
