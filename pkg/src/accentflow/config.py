"""Run configuration: backend bindings per role, filter and fusion
toggles, relaxation switches, and seeds.

The on-disk form is one JSON document (see configs/mock.json for a
complete example). Exactly one backend, real or mock, is bound per
role; adapters are a list and may be empty (adaptation off).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence

from .backends.base import (
    AccentScorer,
    AdapterBackend,
    JudgeBackend,
    QualityScorer,
    TtsBackend,
)
from .backends.http import (
    DEFAULT_BACKOFF,
    DEFAULT_RETRIES,
    DEFAULT_TIMEOUT,
    HttpAccentScorer,
    HttpAdapterBackend,
    HttpJudgeBackend,
    HttpParserBackend,
    HttpQualityScorer,
    HttpTtsBackend,
    JsonHttpClient,
)
from .backends.mock import (
    MockAccentScorer,
    MockAdapter,
    MockJudge,
    MockQualityScorer,
    MockTts,
)
from .core import DefaultPolicy
from .errors import InvalidConfig, UnknownAccent
from .parsing import ParserBackend, RuleBasedParser
from .pool import FilterSpec
from .retrieval import FusionWeights

#: Default locator the baseline mode hands to the TTS backend in place
#: of a retrieved prompt.
SILENT_SPEECH_REF = "silent://near-silent.wav"


@dataclass(frozen=True)
class RelaxationSpec:
    """Which constraints the empty-filter ladder may drop, in order:
    age first, then gender. Accent is never dropped."""

    drop_age: bool = True
    drop_gender: bool = True


@dataclass
class RunConfig:
    """Fully bound configuration for pipeline runs."""

    parser: ParserBackend
    adapters: list[AdapterBackend]
    judge: JudgeBackend
    scorer: AccentScorer
    tts: TtsBackend
    quality: QualityScorer
    defaults: DefaultPolicy = field(default_factory=DefaultPolicy)
    filter_spec: FilterSpec = field(default_factory=FilterSpec)
    fusion: FusionWeights = field(default_factory=FusionWeights)
    relaxation: RelaxationSpec = field(default_factory=RelaxationSpec)
    silent_speech_ref: str = SILENT_SPEECH_REF
    tfidf_fit_scope: str = "pool"  # "pool" | "filtered"
    query_text_mode: str = "standard"  # "standard" | "adapted"
    synthesis: bool = True
    seed: int = 0
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def baseline_mode(self) -> bool:
        """True when both ranking signals are off: the run uses the
        designated silent prompt and skips retrieval entirely."""
        return not self.fusion.accent_enabled and not self.fusion.similarity_enabled

    def fingerprint(self) -> str:
        return hashlib.sha256(
            json.dumps(self.raw, sort_keys=True).encode("utf-8")
        ).hexdigest()[:16]

    @classmethod
    def mock(cls, seed: int = 0, **overrides) -> "RunConfig":
        """A full offline stack; the standard test configuration."""
        data = {
            "seed": seed,
            "backends": {
                "parser": {"kind": "rule"},
                "adapters": [
                    {"kind": "mock", "name": "particle", "style": "suffix"},
                    {"kind": "mock", "name": "opener", "style": "prefix"},
                ],
                "judge": {"kind": "mock"},
                "scorer": {"kind": "mock"},
                "tts": {"kind": "mock"},
                "quality": {"kind": "mock"},
            },
        }
        data.update(overrides)
        return cls.from_dict(data)

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise InvalidConfig(f"config {path} is not valid JSON: {exc.msg}") from None
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RunConfig":
        if not isinstance(data, Mapping):
            raise InvalidConfig("config must be a JSON object")
        seed = int(data.get("seed", 0))
        backends = data.get("backends", {})
        if not isinstance(backends, Mapping):
            raise InvalidConfig("backends must be a JSON object")
        unknown = set(backends) - {"parser", "adapters", "judge", "scorer", "tts", "quality"}
        if unknown:
            raise InvalidConfig(f"unknown backend roles: {sorted(unknown)}")

        parser = _build_parser(backends.get("parser", {"kind": "rule"}))
        adapters = [
            _build_adapter(spec, seed)
            for spec in backends.get("adapters", [])
        ]
        names = [a.name for a in adapters]
        if len(names) != len(set(names)):
            raise InvalidConfig(f"duplicate adapter names: {names}")
        judge = _build_judge(backends.get("judge", {"kind": "mock"}), seed)
        scorer = _build_scorer(backends.get("scorer", {"kind": "mock"}), seed)
        tts = _build_tts(backends.get("tts", {"kind": "mock"}), seed)
        quality = _build_quality(backends.get("quality", {"kind": "mock"}), seed)

        fusion_cfg = data.get("fusion", {})
        weights = fusion_cfg.get("weights", [1.0, 1.0])
        if not (isinstance(weights, Sequence) and len(weights) == 2):
            raise InvalidConfig("fusion.weights must be a 2-element list")
        fusion = FusionWeights(
            accent=float(weights[0]) if fusion_cfg.get("accent_score", True) else 0.0,
            similarity=float(weights[1])
            if fusion_cfg.get("text_similarity", True)
            else 0.0,
        )

        filter_cfg = data.get("filter", {})
        filter_spec = FilterSpec(
            strict_accent_only=bool(filter_cfg.get("strict_accent_only", False)),
            use_gender=bool(filter_cfg.get("use_gender", True)),
            use_age=bool(filter_cfg.get("use_age", True)),
            age_tolerance=int(filter_cfg.get("age_tolerance", 5)),
        )
        relax_cfg = data.get("relaxation", {})
        relaxation = RelaxationSpec(
            drop_age=bool(relax_cfg.get("drop_age", True)),
            drop_gender=bool(relax_cfg.get("drop_gender", True)),
        )
        try:
            defaults = DefaultPolicy.from_dict(data.get("defaults", {}))
        except (ValueError, UnknownAccent) as exc:
            raise InvalidConfig(f"bad defaults: {exc}") from None

        scope = data.get("tfidf_fit_scope", "pool")
        if scope not in ("pool", "filtered"):
            raise InvalidConfig(f"tfidf_fit_scope must be pool|filtered, got {scope!r}")
        query_mode = fusion_cfg.get("query_text", "standard")
        if query_mode not in ("standard", "adapted"):
            raise InvalidConfig(
                f"fusion.query_text must be standard|adapted, got {query_mode!r}"
            )

        return cls(
            parser=parser,
            adapters=adapters,
            judge=judge,
            scorer=scorer,
            tts=tts,
            quality=quality,
            defaults=defaults,
            filter_spec=filter_spec,
            fusion=fusion,
            relaxation=relaxation,
            silent_speech_ref=str(
                data.get("baseline", {}).get("silent_speech_ref", SILENT_SPEECH_REF)
            ),
            tfidf_fit_scope=scope,
            query_text_mode=query_mode,
            synthesis=bool(data.get("synthesis", True)),
            seed=seed,
            raw=dict(data),
        )

    def with_ablation_row(
        self,
        text_similarity: bool,
        accent_score: bool,
        adaptation: str | Sequence[str],
    ) -> "RunConfig":
        """Derive a config for one ablation row by toggling the two
        ranking signals and restricting the adapter set.

        adaptation: "none" (no adapters), "max" (all configured
        adapters), or an explicit adapter-name list.
        """
        raw = json.loads(json.dumps(self.raw))  # deep copy
        fusion = raw.setdefault("fusion", {})
        fusion["text_similarity"] = text_similarity
        fusion["accent_score"] = accent_score
        all_specs = raw.get("backends", {}).get("adapters", [])
        if adaptation == "none":
            selected = []
        elif adaptation == "max":
            selected = all_specs
        else:
            wanted = list(adaptation)
            by_name = {spec.get("name"): spec for spec in all_specs}
            missing = [n for n in wanted if n not in by_name]
            if missing:
                raise InvalidConfig(f"ablation names unknown adapters: {missing}")
            selected = [by_name[n] for n in wanted]
        raw.setdefault("backends", {})["adapters"] = selected
        return RunConfig.from_dict(raw)


def _http_client(spec: Mapping[str, Any]) -> JsonHttpClient:
    url = spec.get("url")
    if not isinstance(url, str) or not url:
        raise InvalidConfig(f"http backend needs a url: {spec!r}")
    return JsonHttpClient(
        url=url,
        timeout=float(spec.get("timeout", DEFAULT_TIMEOUT)),
        retries=int(spec.get("retries", DEFAULT_RETRIES)),
        backoff=float(spec.get("backoff", DEFAULT_BACKOFF)),
    )


def _kind(spec: Any, role: str) -> str:
    if not isinstance(spec, Mapping) or "kind" not in spec:
        raise InvalidConfig(f"{role} backend needs a kind: {spec!r}")
    return str(spec["kind"])


def _build_parser(spec: Mapping[str, Any]) -> ParserBackend:
    kind = _kind(spec, "parser")
    if kind in ("rule", "mock"):
        return RuleBasedParser()
    if kind == "http":
        return HttpParserBackend(_http_client(spec))
    raise InvalidConfig(f"unknown parser kind: {kind!r}")


def _build_adapter(spec: Mapping[str, Any], seed: int) -> AdapterBackend:
    kind = _kind(spec, "adapter")
    name = str(spec.get("name", "")) or None
    if kind == "mock":
        return MockAdapter(
            name=name or "particle",
            seed=int(spec.get("seed", seed)),
            style=str(spec.get("style", "suffix")),
        )
    if kind == "http":
        if not name:
            raise InvalidConfig(f"http adapter needs a name: {spec!r}")
        return HttpAdapterBackend(name, _http_client(spec))
    raise InvalidConfig(f"unknown adapter kind: {kind!r}")


def _build_judge(spec: Mapping[str, Any], seed: int) -> JudgeBackend:
    kind = _kind(spec, "judge")
    if kind == "mock":
        return MockJudge(seed=int(spec.get("seed", seed)))
    if kind == "http":
        return HttpJudgeBackend(_http_client(spec))
    raise InvalidConfig(f"unknown judge kind: {kind!r}")


def _build_scorer(spec: Mapping[str, Any], seed: int) -> AccentScorer:
    kind = _kind(spec, "scorer")
    if kind == "mock":
        return MockAccentScorer(seed=int(spec.get("seed", seed)))
    if kind == "http":
        return HttpAccentScorer(_http_client(spec))
    raise InvalidConfig(f"unknown scorer kind: {kind!r}")


def _build_tts(spec: Mapping[str, Any], seed: int) -> TtsBackend:
    kind = _kind(spec, "tts")
    if kind == "mock":
        return MockTts(seed=int(spec.get("seed", seed)))
    if kind == "http":
        return HttpTtsBackend(_http_client(spec))
    raise InvalidConfig(f"unknown tts kind: {kind!r}")


def _build_quality(spec: Mapping[str, Any], seed: int) -> QualityScorer:
    kind = _kind(spec, "quality")
    if kind == "mock":
        constant = spec.get("constant")
        return MockQualityScorer(
            seed=int(spec.get("seed", seed)),
            constant=float(constant) if constant is not None else None,
        )
    if kind == "http":
        return HttpQualityScorer(_http_client(spec))
    raise InvalidConfig(f"unknown quality kind: {kind!r}")
