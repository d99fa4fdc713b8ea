"""accentflow: two-signal orchestration for accent-faithful speech
synthesis.

The library wires pluggable text backends (instruction parser, text
adapters, judge) and speech backends (accent scorer, TTS, quality
scorer) into one deterministic pipeline: parse the speaker description,
adapt the text and keep the judge's argmax, retrieve the prompt sample
that maximizes accent confidence plus transcript similarity, then
synthesize. A fairness evaluation suite (accuracy, disparity-based
fairness rate, exact binomial bias tests) grades the resulting
predictions.
"""

from .adaptation import (
    STANDARD_SOURCE,
    AdaptationTrace,
    CandidateText,
    generate_candidates,
    select_text,
    validate_adapted,
)
from .backends.base import (
    AccentScorer,
    AdapterBackend,
    JudgeBackend,
    QualityScorer,
    SpeechArtifact,
    TtsBackend,
)
from .backends.mock import (
    ACCENT_PARTICLES,
    FailingAdapter,
    MockAccentScorer,
    MockAdapter,
    MockJudge,
    MockQualityScorer,
    MockTts,
    hash_pick_accent,
    unit_hash,
)
from .config import SILENT_SPEECH_REF, RelaxationSpec, RunConfig
from .core import (
    ACCENT_ORDER,
    AGE_MAX,
    AGE_MIN,
    GENDER_ORDER,
    METADATA_SLOTS,
    UNSPECIFIED,
    AccentLabel,
    AgeSpec,
    DefaultPolicy,
    GenderLabel,
    JudgeScore,
    Metadata,
    UnitScore,
    parse_accent_code,
    parse_gender_code,
)
from .errors import (
    AccentFlowError,
    AccentRequired,
    BackendUnavailable,
    DuplicateId,
    EmptyCandidates,
    EmptyCorpus,
    EmptyInstruction,
    EmptyRecords,
    InsufficientGroups,
    InvalidConfig,
    JudgeUnavailable,
    MalformedBackendReply,
    MalformedRecord,
    NoPromptAvailable,
    ScorerUnavailable,
    SynthesisFailed,
    UnknownAccent,
)
from .metrics import (
    BIAS_TARGETS,
    CHANCE_RATE,
    BinomialTestResult,
    ConfusionResult,
    FdrResult,
    GroupRates,
    PredictionRecord,
    QualityResult,
    accent_accuracy,
    binomial_bias_test,
    binomial_tail,
    confusion_distribution,
    fdr,
    group_rates,
    quality_scores,
    read_prediction_records,
    write_prediction_records,
)
from .parsing import (
    Instruction,
    ParserBackend,
    RuleBasedParser,
    SlotPosterior,
    apply_defaults,
    metadata_from_reply,
    parse,
    select_slot,
)
from .pipeline import (
    DEFAULT_ABLATION_ROWS,
    AblationRow,
    AblationRowResult,
    PipelineResult,
    PipelineTrace,
    filter_with_relaxation,
    mock_recognize,
    run_ablation,
    run_pipeline,
)
from .pool import (
    DEFAULT_POOL_PROFILE,
    FilterSpec,
    Pool,
    PoolEntry,
    PoolRowSpec,
    PoolStats,
    entry_matches,
    filter_pool,
    generate_synthetic_entries,
    generate_synthetic_manifest,
    ingest_manifest,
    pool_stats,
    write_manifest,
)
from .reporting import MetricReport, emit_report
from .retrieval import (
    CachingScorer,
    FusionWeights,
    RankedPrompt,
    rank_candidates,
    select_prompt,
)
from .tfidf import SparseVector, TfIdfModel, cosine, embed, fit, fit_embed_all, tokenize

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "ACCENT_ORDER",
    "AGE_MAX",
    "AGE_MIN",
    "GENDER_ORDER",
    "METADATA_SLOTS",
    "UNSPECIFIED",
    "AccentLabel",
    "AgeSpec",
    "DefaultPolicy",
    "GenderLabel",
    "JudgeScore",
    "Metadata",
    "UnitScore",
    "parse_accent_code",
    "parse_gender_code",
    # errors
    "AccentFlowError",
    "AccentRequired",
    "BackendUnavailable",
    "DuplicateId",
    "EmptyCandidates",
    "EmptyCorpus",
    "EmptyInstruction",
    "EmptyRecords",
    "InsufficientGroups",
    "InvalidConfig",
    "JudgeUnavailable",
    "MalformedBackendReply",
    "MalformedRecord",
    "NoPromptAvailable",
    "ScorerUnavailable",
    "SynthesisFailed",
    "UnknownAccent",
    # parsing
    "Instruction",
    "ParserBackend",
    "RuleBasedParser",
    "SlotPosterior",
    "apply_defaults",
    "metadata_from_reply",
    "parse",
    "select_slot",
    # pool
    "DEFAULT_POOL_PROFILE",
    "FilterSpec",
    "Pool",
    "PoolEntry",
    "PoolRowSpec",
    "PoolStats",
    "entry_matches",
    "filter_pool",
    "generate_synthetic_entries",
    "generate_synthetic_manifest",
    "ingest_manifest",
    "pool_stats",
    "write_manifest",
    # tfidf
    "SparseVector",
    "TfIdfModel",
    "cosine",
    "embed",
    "fit",
    "fit_embed_all",
    "tokenize",
    # retrieval
    "CachingScorer",
    "FusionWeights",
    "RankedPrompt",
    "rank_candidates",
    "select_prompt",
    # adaptation
    "STANDARD_SOURCE",
    "AdaptationTrace",
    "CandidateText",
    "generate_candidates",
    "select_text",
    "validate_adapted",
    # backends
    "AccentScorer",
    "AdapterBackend",
    "JudgeBackend",
    "QualityScorer",
    "SpeechArtifact",
    "TtsBackend",
    "ACCENT_PARTICLES",
    "FailingAdapter",
    "MockAccentScorer",
    "MockAdapter",
    "MockJudge",
    "MockQualityScorer",
    "MockTts",
    "hash_pick_accent",
    "unit_hash",
    # config
    "SILENT_SPEECH_REF",
    "RelaxationSpec",
    "RunConfig",
    # pipeline
    "DEFAULT_ABLATION_ROWS",
    "AblationRow",
    "AblationRowResult",
    "PipelineResult",
    "PipelineTrace",
    "filter_with_relaxation",
    "mock_recognize",
    "run_ablation",
    "run_pipeline",
    # metrics
    "BIAS_TARGETS",
    "CHANCE_RATE",
    "BinomialTestResult",
    "ConfusionResult",
    "FdrResult",
    "GroupRates",
    "PredictionRecord",
    "QualityResult",
    "accent_accuracy",
    "binomial_bias_test",
    "binomial_tail",
    "confusion_distribution",
    "fdr",
    "group_rates",
    "quality_scores",
    "read_prediction_records",
    "write_prediction_records",
    # reporting
    "MetricReport",
    "emit_report",
]
