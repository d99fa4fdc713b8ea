"""Machine-readable metric reports: one JSON document with a section per
metric, plus a flat CSV companion per section for external plotting.

Emission is deterministic: stable key ordering, canonical accent order
in all tables, and byte-identical output for identical inputs.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .core import AccentLabel
from .metrics import BinomialTestResult, ConfusionResult, FdrResult, QualityResult

REPORT_FILENAME = "report.json"


@dataclass
class MetricReport:
    """The metric results to serialize; any subset may be present."""

    accuracy: Optional[float] = None
    confusion: Optional[ConfusionResult] = None
    fdr: Optional[FdrResult] = None
    binomial: list[BinomialTestResult] = field(default_factory=list)
    quality: Optional[QualityResult] = None

    def sections(self) -> dict:
        out: dict = {}
        if self.accuracy is not None:
            out["accuracy"] = {"percent": self.accuracy}
        if self.confusion is not None:
            out["confusion"] = self.confusion.to_dict()
        if self.fdr is not None:
            out["fdr"] = self.fdr.to_dict()
        if self.binomial:
            out["binomial"] = [r.to_dict() for r in self.binomial]
        if self.quality is not None:
            out["quality"] = self.quality.to_dict()
        return out


def emit_report(report: MetricReport, out_dir: str | Path) -> list[Path]:
    """Write report.json plus one CSV per populated section.

    Returns the written paths. Re-emitting identical inputs produces
    byte-identical files.
    """
    sections = report.sections()
    if not sections:
        raise ValueError("report has no metric sections")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    report_path = out / REPORT_FILENAME
    report_path.write_text(
        json.dumps(sections, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    written.append(report_path)

    if "accuracy" in sections:
        written.append(
            _write_csv(out / "accuracy.csv", ["percent"], [[f"{report.accuracy:.6f}"]])
        )
    if report.confusion is not None:
        labels = [str(a) for a in AccentLabel]
        rows = [
            [true] + [str(int(v)) for v in row]
            for true, row in zip(labels, report.confusion.matrix)
        ]
        written.append(_write_csv(out / "confusion.csv", ["true\\pred"] + labels, rows))
        tp_fp_rows = [
            [
                str(a),
                str(report.confusion.true_positives[a]),
                str(report.confusion.false_positives[a]),
            ]
            for a in AccentLabel
        ]
        written.append(
            _write_csv(out / "tp_fp.csv", ["accent", "tp", "fp"], tp_fp_rows)
        )
    if report.fdr is not None:
        rows = [
            [
                str(g.accent),
                f"{g.far:.9f}",
                f"{g.frr:.9f}",
                str(g.n_genuine),
                str(g.n_impostor),
            ]
            for g in report.fdr.group_rates
        ]
        rows.append(
            ["__overall__", f"{report.fdr.max_far_gap:.9f}",
             f"{report.fdr.max_frr_gap:.9f}", "", f"fdr={report.fdr.fdr:.9f}"]
        )
        written.append(
            _write_csv(
                out / "fdr.csv",
                ["accent", "far", "frr", "n_genuine", "n_impostor"],
                rows,
            )
        )
    if report.binomial:
        rows = [
            [str(r.group), str(r.target), str(r.n), str(r.k), f"{r.p_value:.9e}"]
            for r in report.binomial
        ]
        written.append(
            _write_csv(
                out / "binomial.csv", ["group", "target", "n", "k", "p_value"], rows
            )
        )
    if report.quality is not None:
        rows = [
            [str(a), f"{v:.6f}"]
            for a, v in sorted(
                report.quality.per_accent_mean.items(), key=lambda kv: kv[0].value
            )
        ]
        written.append(
            _write_csv(out / "quality.csv", ["accent", "mean_score"], rows)
        )
    return written


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> Path:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path
