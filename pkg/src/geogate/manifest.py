"""Task manifests: parse, validate, canonicalize, and sample parameters.

A manifest declares everything a task family needs besides its built-in scene
code: knob domains and priors, the prompt template, answer layout, validator
margins, renderer style, and which knobs feed the difficulty features.
Manifests are strict: unknown fields or domain violations are rejected with a
field path, never silently accepted.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Protocol

from .canonical import canonical_dumps
from .rng import Stream

INVARIANT_TAGS = (
    "view_match",
    "reference_frame",
    "rotation_congruence",
    "topology",
    "multi_transform",
    "shadow_direction",
    "projection_match",
)

ABILITIES = ("SP", "SO", "MOR", "SV")

# placeholders each built-in family resolves from its scene outputs
FAMILY_PLACEHOLDERS: dict[str, set[str]] = {
    "agent_sight": {"TARGET"},
    "sun_direction": set(),
    "polyomino": set(),
    "unfolded": set(),
    "pyramid": set(),
    "revolution": set(),
    "full_views": set(),
}

_VERSION_RE = re.compile(r"^\d+\.\d+(\.\d+)?$")

MAX_SAMPLE_ATTEMPTS = 1000


class ManifestError(ValueError):
    """Raised on malformed or invalid manifest documents, with a field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class ManifestId:
    name: str
    family_type: str
    version: str


@dataclass(frozen=True)
class ParamDomain:
    kind: str                                # "int" | "real" | "enum"
    min: Optional[float] = None
    max: Optional[float] = None
    values: tuple[Any, ...] = ()
    weights: Optional[tuple[float, ...]] = None

    def contains(self, value: Any) -> bool:
        if self.kind == "int":
            return isinstance(value, int) and self.min <= value <= self.max
        if self.kind == "real":
            return isinstance(value, (int, float)) and self.min <= value <= self.max
        return value in self.values

    def sample(self, stream: Stream) -> Any:
        if self.kind == "int":
            return stream.randint(int(self.min), int(self.max))
        if self.kind == "real":
            return stream.uniform(float(self.min), float(self.max))
        return stream.choice(self.values, self.weights)

    def normalized(self, value: Any) -> float:
        """Map a value to [0, 1] within its domain (enum by index)."""
        if self.kind == "enum":
            idx = self.values.index(value)
            return idx / (len(self.values) - 1) if len(self.values) > 1 else 0.0
        lo, hi = float(self.min), float(self.max)
        return (float(value) - lo) / (hi - lo) if hi > lo else 0.0


@dataclass(frozen=True)
class MonotoneFeature:
    knob: str
    sign: int  # +1: larger knob value is harder; -1: easier


@dataclass(frozen=True)
class Manifest:
    id: ManifestId
    ability: str
    invariant_tag: str
    params: dict[str, ParamDomain]
    prompt_template: str
    num_variants: int
    variant_labels: tuple[str, ...]
    correct_marker: str
    validators: tuple[tuple[str, Optional[float]], ...]   # (name, margin)
    renderer: dict[str, Any]
    difficulty_features: tuple[str, ...]
    monotone_features: tuple[MonotoneFeature, ...]
    raw: dict = field(compare=False, repr=False, default_factory=dict)

    def margin(self, validator_name: str, default: float) -> float:
        for name, m in self.validators:
            if name == validator_name and m is not None:
                return m
        return default

    def has_validator(self, name: str) -> bool:
        return any(v == name for v, _ in self.validators)

    def feature_vector(self, values: Mapping[str, Any]) -> list[float]:
        return [self.params[k].normalized(values[k]) for k in self.difficulty_features]


@dataclass(frozen=True)
class ParamSample:
    values: dict[str, Any]
    seed: int
    manifest: ManifestId

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))


class DifficultyPredictor(Protocol):
    """What sample_params needs from a difficulty model."""

    def predict_from_params(self, family: str, values: Mapping[str, Any]) -> float: ...

    def bin_of(self, d: float) -> str: ...

    def supports_family(self, family: str) -> bool: ...


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise ManifestError(path, message)


def _check_keys(obj: dict, allowed: set[str], required: set[str], path: str) -> None:
    for key in obj:
        _expect(key in allowed, f"{path}.{key}" if path else key, "unknown field")
    for key in required:
        _expect(key in obj, f"{path}.{key}" if path else key, "missing required field")


def _parse_domain(name: str, spec: Any) -> ParamDomain:
    path = f"params.{name}"
    _expect(isinstance(spec, dict), path, "domain must be an object")
    kind = spec.get("type")
    _expect(kind in ("int", "real", "enum"), f"{path}.type", f"unknown domain type {kind!r}")
    if kind in ("int", "real"):
        _check_keys(spec, {"type", "min", "max"}, {"type", "min", "max"}, path)
        lo, hi = spec["min"], spec["max"]
        num = (int,) if kind == "int" else (int, float)
        _expect(isinstance(lo, num) and not isinstance(lo, bool), f"{path}.min", "wrong type")
        _expect(isinstance(hi, num) and not isinstance(hi, bool), f"{path}.max", "wrong type")
        _expect(lo <= hi, path, f"domain violation: min {lo} > max {hi}")
        return ParamDomain(kind=kind, min=float(lo), max=float(hi))
    _check_keys(spec, {"type", "values", "weights"}, {"type", "values"}, path)
    values = spec["values"]
    _expect(isinstance(values, list) and values, f"{path}.values", "enum needs a non-empty list")
    weights = spec.get("weights")
    if weights is not None:
        _expect(isinstance(weights, list) and len(weights) == len(values),
                f"{path}.weights", "weights must match values length")
        _expect(all(isinstance(w, (int, float)) and w >= 0 for w in weights),
                f"{path}.weights", "weights must be non-negative")
        _expect(sum(weights) > 0, f"{path}.weights", "weights must not sum to zero")
        weights = tuple(float(w) for w in weights)
    return ParamDomain(kind="enum", values=tuple(values), weights=weights)


def _template_placeholders(template: str) -> set[str]:
    names = set()
    for match in string.Template.pattern.finditer(template):
        name = match.group("named") or match.group("braced")
        if name:
            names.add(name)
    return names


_TOP_FIELDS = {"name", "family_type", "version", "ability", "invariant", "params",
               "prompt_template", "answer", "validators", "renderer",
               "difficulty_features", "monotone_features"}
_TOP_REQUIRED = _TOP_FIELDS - {"monotone_features"}


def parse_manifest_dict(doc: dict) -> Manifest:
    _expect(isinstance(doc, dict), "", "manifest must be a JSON object")
    _check_keys(doc, _TOP_FIELDS, _TOP_REQUIRED, "")

    name = doc["name"]
    _expect(isinstance(name, str) and name, "name", "must be a non-empty string")
    version = doc["version"]
    _expect(isinstance(version, str) and _VERSION_RE.match(version) is not None,
            "version", "must look like MAJOR.MINOR[.PATCH]")
    family = doc["family_type"]
    _expect(family in FAMILY_PLACEHOLDERS, "family_type", f"unknown family {family!r}")
    _expect(doc["invariant"] in INVARIANT_TAGS, "invariant",
            f"unknown invariant tag {doc['invariant']!r}")
    _expect(doc["ability"] in ABILITIES, "ability", f"must be one of {ABILITIES}")

    _expect(isinstance(doc["params"], dict) and doc["params"], "params",
            "must be a non-empty object")
    params = {k: _parse_domain(k, v) for k, v in doc["params"].items()}

    template = doc["prompt_template"]
    _expect(isinstance(template, str), "prompt_template", "must be a string")
    unresolvable = _template_placeholders(template) - FAMILY_PLACEHOLDERS[family]
    _expect(not unresolvable, "prompt_template",
            f"placeholders not resolvable by family {family!r}: {sorted(unresolvable)}")

    answer = doc["answer"]
    _expect(isinstance(answer, dict), "answer", "must be an object")
    _check_keys(answer, {"num_variants", "variants", "correct"},
                {"num_variants", "variants", "correct"}, "answer")
    nv = answer["num_variants"]
    _expect(isinstance(nv, int) and nv >= 2, "answer.num_variants", "must be an int >= 2")
    labels = answer["variants"]
    _expect(isinstance(labels, list) and len(labels) == nv
            and all(isinstance(x, str) for x in labels) and len(set(labels)) == nv,
            "answer.variants", "must be num_variants distinct strings")

    vspecs = doc["validators"]
    _expect(isinstance(vspecs, list) and vspecs, "validators", "must be a non-empty list")
    validators = []
    for i, v in enumerate(vspecs):
        _expect(isinstance(v, dict), f"validators[{i}]", "must be an object")
        _check_keys(v, {"name", "margin"}, {"name"}, f"validators[{i}]")
        margin = v.get("margin")
        if margin is not None:
            _expect(isinstance(margin, (int, float)), f"validators[{i}].margin", "wrong type")
            margin = float(margin)
        validators.append((v["name"], margin))

    renderer = doc["renderer"]
    _expect(isinstance(renderer, dict), "renderer", "must be an object")
    _check_keys(renderer, {"canvas", "stroke_width", "background"},
                {"canvas"}, "renderer")
    canvas = renderer["canvas"]
    _expect(isinstance(canvas, list) and len(canvas) == 2
            and all(isinstance(c, int) and c >= 64 for c in canvas),
            "renderer.canvas", "must be [width, height], each >= 64")

    feats = doc["difficulty_features"]
    _expect(isinstance(feats, list) and feats, "difficulty_features",
            "must be a non-empty list")
    for i, f in enumerate(feats):
        _expect(f in params, f"difficulty_features[{i}]", f"names undeclared knob {f!r}")

    mono = []
    for i, m in enumerate(doc.get("monotone_features", [])):
        path = f"monotone_features[{i}]"
        _expect(isinstance(m, dict), path, "must be an object")
        _check_keys(m, {"knob", "sign"}, {"knob", "sign"}, path)
        _expect(m["knob"] in params, f"{path}.knob", f"names undeclared knob {m['knob']!r}")
        _expect(m["sign"] in (1, -1), f"{path}.sign", "must be 1 or -1")
        mono.append(MonotoneFeature(m["knob"], m["sign"]))
    if not mono:
        mono = [MonotoneFeature(k, 1) for k in feats]

    return Manifest(
        id=ManifestId(name=name, family_type=family, version=version),
        ability=doc["ability"],
        invariant_tag=doc["invariant"],
        params=params,
        prompt_template=template,
        num_variants=nv,
        variant_labels=tuple(labels),
        correct_marker=answer["correct"],
        validators=tuple(validators),
        renderer=dict(renderer),
        difficulty_features=tuple(feats),
        monotone_features=tuple(mono),
        raw=doc,
    )


def parse_manifest(document: str) -> Manifest:
    import json

    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ManifestError("", f"malformed JSON: {exc}") from exc
    return parse_manifest_dict(doc)


def serialize_manifest(manifest: Manifest) -> str:
    return canonical_dumps(manifest.raw)


def sample_params(manifest: Manifest, seed: int,
                  bin: Optional[str] = None,
                  model: Optional[DifficultyPredictor] = None) -> ParamSample:
    """Deterministic knob draw; with a target bin, rejection-samples against
    the model's predicted difficulty (budget MAX_SAMPLE_ATTEMPTS)."""
    if bin is not None:
        if model is None:
            raise ValueError("bin-conditioned sampling requires a difficulty model")
        if not model.supports_family(manifest.id.family_type):
            raise ValueError(
                f"difficulty model is not fitted for family {manifest.id.family_type!r}")
    root = Stream.from_seed(seed).split("params").split(manifest.id.family_type)
    attempts = 1 if bin is None else MAX_SAMPLE_ATTEMPTS
    for attempt in range(attempts):
        attempt_stream = root.split(attempt)
        values = {k: dom.sample(attempt_stream.split(k))
                  for k, dom in sorted(manifest.params.items())}
        if bin is None:
            return ParamSample(values=values, seed=seed, manifest=manifest.id)
        d = model.predict_from_params(manifest.id.family_type, values)
        if model.bin_of(d) == bin:
            return ParamSample(values=values, seed=seed, manifest=manifest.id)
    raise ValueError(
        f"rejection budget exhausted: bin {bin!r} appears infeasible for "
        f"family {manifest.id.family_type!r}")


def render_prompt(manifest: Manifest, scene_outputs: Mapping[str, str]) -> str:
    try:
        rendered = string.Template(manifest.prompt_template).substitute(scene_outputs)
    except KeyError as exc:
        raise ValueError(f"missing placeholder value: {exc.args[0]}") from exc
    return rendered
