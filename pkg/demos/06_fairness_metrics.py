"""
Fairness metrics over prediction records
========================================

Evaluating a synthesis system for accent bias starts from prediction
records: (true accent, predicted accent, confidence) triples produced
by recognizing the synthesized audio. From those the suite computes
accuracy, a per-accent confusion distribution, one-vs-rest FAR/FRR per
group, a fairness discrepancy rate (fdr), and an exact binomial test
for systematic misrouting toward majority accents. This demo builds a
record set with one planted bias — Indian-accented requests misrouted
to US far above chance — and shows every metric reacting to it.
"""

import tempfile
from pathlib import Path

import accentflow as af

# 48 records per accent. Most accents get 4/48 = 1/12 misrouted to US,
# exactly the chance rate for twelve classes; IN gets 16/48 = 1/3.
records = []
for accent in af.ACCENT_ORDER:
    misses = 16 if accent is af.AccentLabel.IN else 4
    if accent is af.AccentLabel.US:
        misses = 0
    for i in range(48):
        if i < misses:
            records.append(af.PredictionRecord(accent, af.AccentLabel.US,
                                               af.UnitScore(0.8)))
        else:
            records.append(af.PredictionRecord(accent, accent, af.UnitScore(0.9)))

print(f"{len(records)} records, accuracy = {af.accent_accuracy(records):.4f}%")

# The confusion matrix is a raw 12x12 tally: rows are the true accent
# in canonical order, columns the predicted one.
confusion = af.confusion_distribution(records)


def confusion_row(accent):
    row = confusion.matrix[af.ACCENT_ORDER[accent]]
    return {str(p): int(n) for p, n in zip(af.ACCENT_ORDER, row) if n}


print("\nconfusion row for IN:", confusion_row(af.AccentLabel.IN))
print("confusion row for GB:", confusion_row(af.AccentLabel.GB))
print("US column picks up every misroute: FP(US) =",
      confusion.false_positives[af.AccentLabel.US])

# One-vs-rest acceptance rates at a confidence threshold. US absorbs
# everyone's misroutes, so its false-accept rate stands out; IN's
# false-reject rate is the planted 1/3.
print("\nFAR/FRR at threshold 0.5:")
for g in af.group_rates(records, threshold=0.5):
    if g.accent in (af.AccentLabel.IN, af.AccentLabel.GB, af.AccentLabel.US):
        print(f"  {g.accent}: FAR={g.far:.4f} FRR={g.frr:.4f} "
              f"(genuine={g.n_genuine}, impostor={g.n_impostor})")

# fdr folds the worst FAR gap and worst FRR gap across groups into one
# number: 1.0 means perfectly even, lower means more discrepancy.
result = af.fdr(records, threshold=0.5, alpha=0.5, beta=0.5)
print(f"\nfdr = {result.fdr:.6f}  (max FAR gap {result.max_far_gap:.4f}, "
      f"max FRR gap {result.max_frr_gap:.4f})")

# A perfectly uniform record set scores exactly 1.0.
uniform = [af.PredictionRecord(a, a, af.UnitScore(0.9))
           for a in af.ACCENT_ORDER for _ in range(10)]
print("fdr on uniform records =", af.fdr(uniform, threshold=0.5).fdr)

# The binomial test asks, per group: if misrouting to the target were
# chance (p0 = 1/12), how likely is a count at least this extreme? The
# planted IN bias is the only vanishing p-value.
print("\nbinomial misrouting test toward US (p0 = 1/12):")
for t in af.binomial_bias_test(records, target=af.AccentLabel.US):
    flag = "  <-- biased" if t.p_value < 1e-3 else ""
    print(f"  {t.group}: k={t.k:2d}/{t.n}  p={t.p_value:.3e}{flag}")

# Records round-trip through JSONL files, and a report bundle writes
# one CSV per section plus a combined report.json.
workdir = Path(tempfile.mkdtemp(prefix="accentflow-metrics-"))
records_path = workdir / "records.jsonl"
af.write_prediction_records(records, records_path)
again = af.read_prediction_records(records_path)
print(f"\nround-trip: {len(again)} records, equal: {again == records}")

report = af.MetricReport(
    accuracy=af.accent_accuracy(records),
    confusion=confusion,
    fdr=result,
    binomial=af.binomial_bias_test(records, target=af.AccentLabel.US),
)
written = af.emit_report(report, workdir / "report")
print("report files:")
for path in written:
    print("  ", path.name)
