"""Run configuration: JSON loading, backend binding, validation, the
offline mock stack, and ablation-row derivation."""

import json

import pytest

from accentflow import (
    SILENT_SPEECH_REF,
    AccentLabel,
    FusionWeights,
    InvalidConfig,
    Metadata,
    MockAdapter,
    MockJudge,
    MockTts,
    RuleBasedParser,
    RunConfig,
)
from accentflow.backends.http import HttpJudgeBackend


class TestMockStack:
    def test_mock_binds_offline_backends(self):
        config = RunConfig.mock(seed=7)
        assert isinstance(config.parser, RuleBasedParser)
        assert isinstance(config.judge, MockJudge)
        assert isinstance(config.tts, MockTts)
        assert [a.name for a in config.adapters] == ["particle", "opener"]
        assert config.seed == 7

    def test_mock_defaults(self):
        config = RunConfig.mock()
        assert config.synthesis is True
        assert config.tfidf_fit_scope == "pool"
        assert config.query_text_mode == "standard"
        assert config.silent_speech_ref == SILENT_SPEECH_REF
        assert config.fusion.accent_enabled
        assert config.fusion.similarity_enabled
        assert config.baseline_mode is False

    def test_mock_overrides_merge_into_raw(self):
        config = RunConfig.mock(seed=3, synthesis=False, tfidf_fit_scope="filtered")
        assert config.synthesis is False
        assert config.tfidf_fit_scope == "filtered"
        assert config.raw["seed"] == 3


class TestFromDict:
    def test_minimal_document(self):
        config = RunConfig.from_dict({})
        assert config.seed == 0
        assert config.adapters == []
        assert isinstance(config.judge, MockJudge)

    def test_non_mapping_rejected(self):
        with pytest.raises(InvalidConfig):
            RunConfig.from_dict(["not", "an", "object"])

    def test_unknown_backend_role_rejected(self):
        with pytest.raises(InvalidConfig) as excinfo:
            RunConfig.from_dict({"backends": {"vocoder": {"kind": "mock"}}})
        assert "vocoder" in str(excinfo.value)

    def test_duplicate_adapter_names_rejected(self):
        with pytest.raises(InvalidConfig):
            RunConfig.from_dict(
                {
                    "backends": {
                        "adapters": [
                            {"kind": "mock", "name": "particle"},
                            {"kind": "mock", "name": "particle"},
                        ]
                    }
                }
            )

    def test_backend_without_kind_rejected(self):
        with pytest.raises(InvalidConfig):
            RunConfig.from_dict({"backends": {"judge": {"url": "http://x"}}})

    def test_unknown_kind_rejected(self):
        with pytest.raises(InvalidConfig):
            RunConfig.from_dict({"backends": {"judge": {"kind": "quantum"}}})

    def test_http_backend_requires_url(self):
        with pytest.raises(InvalidConfig):
            RunConfig.from_dict({"backends": {"judge": {"kind": "http"}}})

    def test_http_backend_binds(self):
        config = RunConfig.from_dict(
            {"backends": {"judge": {"kind": "http", "url": "http://judge.local/v1"}}}
        )
        assert isinstance(config.judge, HttpJudgeBackend)

    def test_fusion_weights_shape_enforced(self):
        with pytest.raises(InvalidConfig):
            RunConfig.from_dict({"fusion": {"weights": [1.0]}})
        with pytest.raises(InvalidConfig):
            RunConfig.from_dict({"fusion": {"weights": [1.0, 2.0, 3.0]}})

    def test_fusion_weights_applied(self):
        config = RunConfig.from_dict({"fusion": {"weights": [0.7, 0.3]}})
        assert config.fusion == FusionWeights(accent=0.7, similarity=0.3)

    def test_disabled_signal_zeroes_its_weight(self):
        config = RunConfig.from_dict(
            {"fusion": {"weights": [0.7, 0.3], "text_similarity": False}}
        )
        assert config.fusion.similarity == 0.0
        assert config.fusion.accent == 0.7
        assert not config.fusion.similarity_enabled

    def test_both_signals_off_is_baseline_mode(self):
        config = RunConfig.from_dict(
            {"fusion": {"accent_score": False, "text_similarity": False}}
        )
        assert config.baseline_mode is True

    def test_bad_fit_scope_rejected(self):
        with pytest.raises(InvalidConfig):
            RunConfig.from_dict({"tfidf_fit_scope": "corpus"})

    def test_bad_query_text_mode_rejected(self):
        with pytest.raises(InvalidConfig):
            RunConfig.from_dict({"fusion": {"query_text": "fancy"}})

    def test_filter_settings_applied(self):
        config = RunConfig.from_dict(
            {
                "filter": {
                    "strict_accent_only": True,
                    "use_gender": False,
                    "age_tolerance": 2,
                }
            }
        )
        assert config.filter_spec.strict_accent_only is True
        assert config.filter_spec.use_gender is False
        assert config.filter_spec.age_tolerance == 2

    def test_relaxation_toggles_applied(self):
        config = RunConfig.from_dict({"relaxation": {"drop_age": False}})
        assert config.relaxation.drop_age is False
        assert config.relaxation.drop_gender is True

    def test_defaults_policy_applied(self):
        config = RunConfig.from_dict({"defaults": {"accent": "GB", "gender": "F"}})
        assert str(config.defaults.accent) == "GB"
        assert str(config.defaults.gender) == "F"

    def test_bad_defaults_rejected(self):
        with pytest.raises(InvalidConfig):
            RunConfig.from_dict({"defaults": {"accent": "XX"}})

    def test_custom_silent_ref(self):
        config = RunConfig.from_dict(
            {"baseline": {"silent_speech_ref": "silent://alt.wav"}}
        )
        assert config.silent_speech_ref == "silent://alt.wav"

    def test_adapter_spec_can_pin_its_own_seed(self):
        config = RunConfig.from_dict(
            {
                "seed": 5,
                "backends": {
                    "adapters": [{"kind": "mock", "name": "particle", "seed": 42}]
                },
            }
        )
        adapter = config.adapters[0]
        assert isinstance(adapter, MockAdapter)
        meta = Metadata(accent=AccentLabel.GB)
        pinned = MockAdapter(name="particle", seed=42)
        assert adapter.adapt("hi", meta) == pinned.adapt("hi", meta)


class TestFromFile:
    def test_loads_json_document(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"seed": 9}), encoding="utf-8")
        assert RunConfig.from_file(path).seed == 9

    def test_invalid_json_raises_invalid_config(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(InvalidConfig):
            RunConfig.from_file(path)


class TestFingerprint:
    def test_same_document_same_fingerprint(self):
        a = RunConfig.from_dict({"seed": 1, "synthesis": True})
        b = RunConfig.from_dict({"synthesis": True, "seed": 1})
        assert a.fingerprint() == b.fingerprint()
        assert len(a.fingerprint()) == 16

    def test_different_document_different_fingerprint(self):
        a = RunConfig.from_dict({"seed": 1})
        b = RunConfig.from_dict({"seed": 2})
        assert a.fingerprint() != b.fingerprint()


class TestAblationDerivation:
    def test_none_strips_adapters(self):
        derived = RunConfig.mock(seed=2).with_ablation_row(True, True, "none")
        assert derived.adapters == []

    def test_max_keeps_all_adapters(self):
        derived = RunConfig.mock(seed=2).with_ablation_row(True, True, "max")
        assert [a.name for a in derived.adapters] == ["particle", "opener"]

    def test_signal_toggles_applied(self):
        derived = RunConfig.mock(seed=2).with_ablation_row(False, True, "none")
        assert not derived.fusion.similarity_enabled
        assert derived.fusion.accent_enabled

        baseline = RunConfig.mock(seed=2).with_ablation_row(False, False, "none")
        assert baseline.baseline_mode is True

    def test_explicit_adapter_subset(self):
        derived = RunConfig.mock(seed=2).with_ablation_row(True, True, ["opener"])
        assert [a.name for a in derived.adapters] == ["opener"]

    def test_unknown_adapter_name_rejected(self):
        with pytest.raises(InvalidConfig):
            RunConfig.mock(seed=2).with_ablation_row(True, True, ["reverb"])

    def test_parent_config_unchanged(self):
        parent = RunConfig.mock(seed=2)
        before = json.dumps(parent.raw, sort_keys=True)
        parent.with_ablation_row(False, False, "none")
        assert json.dumps(parent.raw, sort_keys=True) == before
        assert [a.name for a in parent.adapters] == ["particle", "opener"]

    def test_derived_seed_and_backends_preserved(self):
        parent = RunConfig.mock(seed=13)
        derived = parent.with_ablation_row(True, False, "max")
        assert derived.seed == 13
        assert isinstance(derived.judge, MockJudge)
        assert derived.fingerprint() != parent.fingerprint()
