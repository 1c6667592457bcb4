import copy
import json
from collections import Counter

import jsonschema
import pytest

from geogate.manifest import (
    Manifest,
    ManifestError,
    parse_manifest,
    parse_manifest_dict,
    render_prompt,
    sample_params,
    serialize_manifest,
)
from geogate.resources import FAMILY_TYPES, load_all_shipped, load_schema

LISTING_DOC = {
    "name": "Agent Sight",
    "family_type": "agent_sight",
    "version": "1.2",
    "ability": "SO",
    "invariant": "view_match",
    "params": {
        "BOX_COUNT": {"type": "int", "min": 1, "max": 5},
        "CYLINDER_COUNT": {"type": "int", "min": 2, "max": 4},
        "COLOR_MAP": {"type": "enum", "values": ["Pastel1", "Pastel2"]},
    },
    "prompt_template": "Imagine you are the $TARGET",
    "answer": {"num_variants": 4, "variants": ["1", "2", "3", "4"], "correct": "$CORRECT"},
    "validators": [{"name": "uniqueness"}],
    "renderer": {"canvas": [256, 256]},
    "difficulty_features": ["BOX_COUNT"],
}


class TestParse:
    def test_parses_viewpoint_document(self):
        m = parse_manifest_dict(LISTING_DOC)
        assert m.params["BOX_COUNT"].min == 1 and m.params["BOX_COUNT"].max == 5
        assert m.params["COLOR_MAP"].values == ("Pastel1", "Pastel2")
        assert m.num_variants == 4

    def test_inverted_range_rejected_with_path(self):
        doc = copy.deepcopy(LISTING_DOC)
        doc["params"]["BOX_COUNT"]["min"] = 5
        doc["params"]["BOX_COUNT"]["max"] = 1
        with pytest.raises(ManifestError) as exc:
            parse_manifest_dict(doc)
        assert "params.BOX_COUNT" in str(exc.value)

    def test_unknown_field_rejected(self):
        doc = copy.deepcopy(LISTING_DOC)
        doc["surprise"] = 1
        with pytest.raises(ManifestError, match="surprise"):
            parse_manifest_dict(doc)

    def test_unknown_invariant_rejected(self):
        doc = copy.deepcopy(LISTING_DOC)
        doc["invariant"] = "telepathy"
        with pytest.raises(ManifestError, match="invariant"):
            parse_manifest_dict(doc)

    def test_unresolvable_placeholder_rejected(self):
        doc = copy.deepcopy(LISTING_DOC)
        doc["prompt_template"] = "Find the $WIDGET"
        with pytest.raises(ManifestError, match="WIDGET"):
            parse_manifest_dict(doc)

    def test_round_trip_idempotent(self):
        text = json.dumps(LISTING_DOC)
        m1 = parse_manifest(text)
        m2 = parse_manifest(serialize_manifest(m1))
        assert m1 == m2
        assert serialize_manifest(m1) == serialize_manifest(m2)

    def test_malformed_json(self):
        with pytest.raises(ManifestError, match="malformed"):
            parse_manifest("{nope")


class TestStrictSchemaFuzz:
    def test_single_field_corruption_never_silently_invalid(self):
        base = copy.deepcopy(LISTING_DOC)

        def corrupted_docs():
            for key in list(base):
                doc = copy.deepcopy(base)
                del doc[key]
                yield doc
                doc = copy.deepcopy(base)
                doc[key] = 12345 if not isinstance(doc[key], int) else "flip"
                yield doc

        for doc in corrupted_docs():
            try:
                m = parse_manifest_dict(doc)
            except ManifestError as exc:
                assert str(exc)  # carries a field path
            else:
                # accepted: must satisfy all invariants
                assert isinstance(m, Manifest)
                assert m.num_variants >= 2

    def test_shipped_manifests_validate_against_schema(self):
        schema = load_schema()
        for fam, manifest in load_all_shipped().items():
            jsonschema.validate(manifest.raw, schema)
            assert manifest.id.family_type == fam


class TestSampleParams:
    def test_values_in_domain(self):
        m = parse_manifest_dict(LISTING_DOC)
        for seed in range(500):
            sample = sample_params(m, seed)
            assert 1 <= sample.values["BOX_COUNT"] <= 5

    def test_deterministic(self):
        m = parse_manifest_dict(LISTING_DOC)
        assert sample_params(m, 99).values == sample_params(m, 99).values

    def test_bin_without_model_errors(self):
        m = parse_manifest_dict(LISTING_DOC)
        with pytest.raises(ValueError, match="model"):
            sample_params(m, 1, bin="easy")

    def test_enum_prior_weights(self):
        doc = copy.deepcopy(LISTING_DOC)
        doc["params"]["COLOR_MAP"]["weights"] = [3, 1]
        m = parse_manifest_dict(doc)
        counts = Counter(sample_params(m, s).values["COLOR_MAP"] for s in range(10_000))
        ratio = counts["Pastel1"] / counts["Pastel2"]
        assert abs(ratio - 3.0) / 3.0 < 0.05

    def test_all_shipped_manifests_fuzz(self):
        for manifest in load_all_shipped().values():
            for seed in range(1000):
                s = sample_params(manifest, seed)
                for knob, value in s.values.items():
                    assert manifest.params[knob].contains(value), (knob, value)


class TestRenderPrompt:
    def test_substitution(self):
        m = parse_manifest_dict(LISTING_DOC)
        out = render_prompt(m, {"TARGET": "red agent"})
        assert out == "Imagine you are the red agent"

    def test_verbatim_without_placeholders(self):
        doc = copy.deepcopy(LISTING_DOC)
        doc["prompt_template"] = "No placeholders here"
        m = parse_manifest_dict(doc)
        assert render_prompt(m, {}) == "No placeholders here"

    def test_missing_placeholder_named(self):
        m = parse_manifest_dict(LISTING_DOC)
        with pytest.raises(ValueError, match="TARGET"):
            render_prompt(m, {})


def test_seven_families_shipped():
    assert len(FAMILY_TYPES) == 7
    assert set(load_all_shipped()) == set(FAMILY_TYPES)
