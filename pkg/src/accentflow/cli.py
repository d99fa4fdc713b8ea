"""Command-line front end.

Subcommands:
  pool ingest        validate a manifest and print a summary
  pool stats         per-accent statistics of a manifest
  pool gen-synthetic write a synthetic manifest from a profile
  run                one pipeline run for an (instruction, text) pair
  batch              many runs from a JSONL input file
  ablate             toggle matrix over a shared input set
  eval               fairness metrics over a prediction-record file

Exit codes: 0 success, 1 bad input (arguments, manifests, configs,
records), 2 backend failure, 3 internal error. All file output is
written atomically (temp file + rename) so a crashed run never leaves a
truncated artifact behind.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .config import RunConfig
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
    accent_accuracy,
    binomial_bias_test,
    confusion_distribution,
    fdr,
    read_prediction_records,
    write_prediction_records,
)
from .pipeline import (
    DEFAULT_ABLATION_ROWS,
    AblationRow,
    mock_recognize,
    run_ablation,
    run_pipeline,
)
from .pool import (
    DEFAULT_POOL_PROFILE,
    PoolRowSpec,
    generate_synthetic_entries,
    ingest_manifest,
    pool_stats,
)
from .reporting import MetricReport, emit_report

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BACKEND = 2
EXIT_INTERNAL = 3

_INPUT_ERRORS = (
    InvalidConfig,
    MalformedRecord,
    DuplicateId,
    UnknownAccent,
    EmptyInstruction,
    EmptyRecords,
    EmptyCorpus,
    EmptyCandidates,
    InsufficientGroups,
    AccentRequired,
    NoPromptAvailable,
    FileNotFoundError,
    IsADirectoryError,
    json.JSONDecodeError,
    ValueError,
)
_BACKEND_ERRORS = (
    BackendUnavailable,
    ScorerUnavailable,
    JudgeUnavailable,
    MalformedBackendReply,
    SynthesisFailed,
)


def _atomic_write(path: str | Path, data: str) -> Path:
    """Write text through a same-directory temp file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
    return path


def _read_inputs(path: str | Path) -> list[tuple[str, str]]:
    """Read a JSONL file of {"instruction": ..., "text": ...} pairs."""
    pairs = []
    for line_number, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        line = line.strip()
        if not line:
            continue
        try:
            item = json.loads(line)
            pairs.append((str(item["instruction"]), str(item["text"])))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise MalformedRecord(line_number, f"bad input line: {exc}") from None
    if not pairs:
        raise EmptyRecords(f"no input pairs in {path}")
    return pairs


#: Environment variable consulted when --config is not given.
CONFIG_ENV_VAR = "ACCENTFLOW_CONFIG"


def _load_config(path: Optional[str], seed: Optional[int]) -> RunConfig:
    path = path or os.environ.get(CONFIG_ENV_VAR)
    config = RunConfig.from_file(path) if path else RunConfig.mock()
    if seed is not None:
        raw = dict(config.raw)
        raw["seed"] = seed
        config = RunConfig.from_dict(raw)
    return config


# ---------------------------------------------------------------------------
# Subcommand bodies
# ---------------------------------------------------------------------------


def cmd_pool_ingest(args: argparse.Namespace) -> int:
    pool = ingest_manifest(args.manifest)
    stats = pool_stats(pool)
    print(f"ok: {len(pool)} entries, {len(stats.per_accent)} accents")
    return EXIT_OK


def cmd_pool_stats(args: argparse.Namespace) -> int:
    pool = ingest_manifest(args.manifest)
    payload = json.dumps(pool_stats(pool).to_dict(), sort_keys=True, indent=2)
    if args.out:
        _atomic_write(args.out, payload + "\n")
        print(f"wrote {args.out}")
    else:
        print(payload)
    return EXIT_OK


def cmd_pool_gen_synthetic(args: argparse.Namespace) -> int:
    if args.spec:
        raw = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        if not isinstance(raw, list) or not raw:
            raise InvalidConfig("profile spec must be a non-empty JSON list")
        rows = [PoolRowSpec.from_dict(item) for item in raw]
    else:
        rows = list(DEFAULT_POOL_PROFILE)
    entries = list(generate_synthetic_entries(rows, seed=args.seed))
    lines = [json.dumps(e.to_dict(), sort_keys=True) for e in entries]
    _atomic_write(args.out, "\n".join(lines) + "\n")
    print(f"wrote {len(entries)} entries to {args.out}")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    config = _load_config(args.config, args.seed)
    pool = ingest_manifest(args.pool)
    result = run_pipeline(
        args.instruction,
        args.text,
        pool,
        config,
        synthesize=False if args.no_synth else None,
    )
    payload = result.to_json()
    if args.out:
        _atomic_write(args.out, payload)
        print(f"wrote {args.out}")
    else:
        print(payload, end="")
    return EXIT_OK


def cmd_batch(args: argparse.Namespace) -> int:
    config = _load_config(args.config, args.seed)
    pool = ingest_manifest(args.pool)
    inputs = _read_inputs(args.inputs)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def one(indexed):
        index, (instruction, text) = indexed
        return index, run_pipeline(
            instruction,
            text,
            pool,
            config,
            synthesize=False if args.no_synth else None,
        )

    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as executor:
            outcomes = dict(executor.map(one, enumerate(inputs)))
    else:
        outcomes = dict(map(one, enumerate(inputs)))

    records = []
    for index in range(len(inputs)):
        result = outcomes[index]
        _atomic_write(out_dir / f"run-{index:04d}.json", result.to_json())
        if args.records:
            records.append(mock_recognize(result, config.seed))
    if args.records:
        write_prediction_records(records, args.records)
        print(f"wrote {len(records)} records to {args.records}")
    print(f"wrote {len(inputs)} results to {out_dir}")
    return EXIT_OK


def cmd_ablate(args: argparse.Namespace) -> int:
    config = _load_config(args.config, args.seed)
    pool = ingest_manifest(args.pool)
    inputs = _read_inputs(args.inputs)
    if args.matrix:
        raw = json.loads(Path(args.matrix).read_text(encoding="utf-8"))
        if not isinstance(raw, list) or not raw:
            raise InvalidConfig("ablation matrix must be a non-empty JSON list")
        try:
            rows = [AblationRow.from_dict(item) for item in raw]
        except (KeyError, TypeError) as exc:
            raise InvalidConfig(f"bad ablation row: {exc}") from None
    else:
        rows = list(DEFAULT_ABLATION_ROWS)

    results = run_ablation(config, pool, inputs, rows)
    table = [r.to_dict() for r in results]
    print(
        f"{'row':<18} {'sim':>3} {'acc':>3} {'adapt':<10} "
        f"{'runs':>4} {'fail':>4} {'ACC%':>7} {'MOS':>5}"
    )
    for row in table:
        adapt = row["adaptation"]
        adapt_label = adapt if isinstance(adapt, str) else "+".join(adapt)
        acc = f"{row['accuracy']:.2f}" if row["accuracy"] is not None else "-"
        mos = f"{row['mean_quality']:.2f}" if row["mean_quality"] is not None else "-"
        print(
            f"{row['name']:<18} {'on' if row['text_similarity'] else 'off':>3}"
            f" {'on' if row['accent_score'] else 'off':>3}"
            f" {adapt_label:<10} {row['runs']:>4} {row['failed']:>4}"
            f" {acc:>7} {mos:>5}"
        )
    if args.out:
        _atomic_write(
            args.out, json.dumps(table, sort_keys=True, indent=2) + "\n"
        )
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    records = read_prediction_records(args.records)
    binomial = [
        result
        for target in BIAS_TARGETS
        for result in binomial_bias_test(records, target)
    ]
    report = MetricReport(
        accuracy=accent_accuracy(records),
        confusion=confusion_distribution(records),
        fdr=fdr(records, threshold=args.tau, alpha=args.alpha, beta=args.beta),
        binomial=binomial,
    )
    if args.out_dir:
        paths = emit_report(report, args.out_dir)
        for path in paths:
            print(f"wrote {path}")
    else:
        print(json.dumps(report.sections(), sort_keys=True, indent=2))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="accentflow",
        description="Two-signal accent-faithful speech synthesis pipeline.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pool = sub.add_parser("pool", help="prompt pool manifest utilities")
    pool_sub = pool.add_subparsers(dest="pool_command", required=True)

    p = pool_sub.add_parser("ingest", help="validate a manifest")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_pool_ingest)

    p = pool_sub.add_parser("stats", help="per-accent manifest statistics")
    p.add_argument("manifest")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_pool_stats)

    p = pool_sub.add_parser("gen-synthetic", help="write a synthetic manifest")
    p.add_argument("--out", required=True)
    p.add_argument("--spec", help="JSON profile (defaults to the built-in one)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_pool_gen_synthetic)

    p = sub.add_parser("run", help="run the pipeline once")
    p.add_argument("--instruction", "-i", required=True)
    p.add_argument("--text", "-t", required=True)
    p.add_argument("--pool", required=True, help="pool manifest (JSONL)")
    p.add_argument("--config", help="run config JSON (defaults to the mock stack)")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--out", help="write the result JSON here instead of stdout")
    p.add_argument("--no-synth", action="store_true", help="skip synthesis")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("batch", help="run the pipeline over a JSONL input file")
    p.add_argument("--inputs", required=True, help='JSONL of {"instruction","text"}')
    p.add_argument("--pool", required=True)
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--records", help="also write mock prediction records here")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-synth", action="store_true")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("ablate", help="toggle matrix over a shared input set")
    p.add_argument("--inputs", required=True)
    p.add_argument("--pool", required=True)
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--matrix", help="JSON list of rows (defaults to the 6-row study)")
    p.add_argument("--out", help="write the row table JSON here")
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("eval", help="fairness metrics over prediction records")
    p.add_argument("--records", required=True, help="prediction-record JSONL")
    p.add_argument("--tau", type=float, default=0.5, help="acceptance threshold")
    p.add_argument("--alpha", type=float, default=0.5, help="FAR-gap weight")
    p.add_argument("--beta", type=float, default=0.5, help="FRR-gap weight")
    p.add_argument("--out-dir", help="emit report.json + CSVs here")
    p.set_defaults(func=cmd_eval)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _BACKEND_ERRORS as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AccentFlowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
