"""Fairness and quality metrics: accuracy, confusion tallies, disparity
rate, exact binomial tails, bias tests, and quality aggregation."""

import json
import math
import random
from fractions import Fraction

import pytest
import scipy.stats
from hypothesis import given, settings
from hypothesis import strategies as st

from accentflow import (
    BIAS_TARGETS,
    CHANCE_RATE,
    AccentLabel,
    EmptyRecords,
    InsufficientGroups,
    MalformedRecord,
    MockQualityScorer,
    PredictionRecord,
    SpeechArtifact,
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

from oracles import direct_fdr, exact_binomial_tail

ACCENTS = list(AccentLabel)


def rec(true: str, pred: str, conf: float) -> PredictionRecord:
    return PredictionRecord(
        true_accent=AccentLabel(true),
        predicted_accent=AccentLabel(pred),
        confidence=conf,
    )


def random_records(rng: random.Random, n: int, codes=("GB", "US", "IN", "CA")):
    return [
        rec(
            rng.choice(codes),
            rng.choice(codes),
            rng.choice([0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0]),
        )
        for _ in range(n)
    ]


# The two-group worked example used throughout: at tau = 0.5,
# FAR(US) = 0.2, FAR(GB) = 0.0, FRR(US) = FRR(GB) = 0.2.
TWO_GROUP_RECORDS = (
    [rec("GB", "GB", 1.0) for _ in range(8)]
    + [rec("GB", "US", 1.0) for _ in range(2)]
    + [rec("US", "US", 1.0) for _ in range(8)]
    + [rec("US", "US", 0.3) for _ in range(2)]
)


class TestAccuracy:
    def test_empty_raises(self):
        with pytest.raises(EmptyRecords):
            accent_accuracy([])

    def test_all_correct(self):
        records = [rec(str(a), str(a), 0.9) for a in ACCENTS]
        assert accent_accuracy(records) == 100.0

    def test_none_correct(self):
        records = [rec("GB", "US", 0.9), rec("IN", "CA", 0.9)]
        assert accent_accuracy(records) == 0.0

    def test_half_correct(self):
        records = [rec("GB", "GB", 1.0), rec("GB", "US", 1.0)]
        assert accent_accuracy(records) == 50.0

    def test_percent_scale_6336_of_10000(self):
        records = [rec("GB", "GB", 1.0)] * 6336 + [rec("GB", "US", 1.0)] * 3664
        assert accent_accuracy(records) == pytest.approx(63.36, abs=1e-12)

    def test_confidence_does_not_affect_accuracy(self):
        low = [rec("GB", "GB", 0.0), rec("US", "CA", 0.0)]
        high = [rec("GB", "GB", 1.0), rec("US", "CA", 1.0)]
        assert accent_accuracy(low) == accent_accuracy(high) == 50.0


class TestConfusion:
    def test_empty_raises(self):
        with pytest.raises(EmptyRecords):
            confusion_distribution([])

    def test_single_record_cell(self):
        result = confusion_distribution([rec("GB", "US", 0.8)])
        i = ACCENTS.index(AccentLabel.GB)
        j = ACCENTS.index(AccentLabel.US)
        assert result.matrix[i, j] == 1
        assert result.matrix.sum() == 1
        assert result.true_positives[AccentLabel.GB] == 0
        assert result.false_positives[AccentLabel.US] == 1

    def test_matrix_matches_independent_tally(self):
        rng = random.Random(404)
        for _ in range(25):
            records = random_records(rng, rng.randint(1, 300), codes=[str(a) for a in ACCENTS])
            result = confusion_distribution(records)
            tally = {}
            for r in records:
                key = (r.true_accent, r.predicted_accent)
                tally[key] = tally.get(key, 0) + 1
            for i, true in enumerate(ACCENTS):
                for j, pred in enumerate(ACCENTS):
                    assert result.matrix[i, j] == tally.get((true, pred), 0)

    def test_tp_is_diagonal_and_fp_is_off_column(self):
        rng = random.Random(405)
        records = random_records(rng, 500, codes=[str(a) for a in ACCENTS])
        result = confusion_distribution(records)
        for i, accent in enumerate(ACCENTS):
            assert result.true_positives[accent] == result.matrix[i, i]
            assert (
                result.false_positives[accent]
                == result.matrix[:, i].sum() - result.matrix[i, i]
            )

    def test_row_sums_equal_true_label_counts(self):
        records = [rec("GB", "US", 0.5)] * 3 + [rec("IN", "IN", 0.5)] * 2
        result = confusion_distribution(records)
        assert result.matrix[ACCENTS.index(AccentLabel.GB)].sum() == 3
        assert result.matrix[ACCENTS.index(AccentLabel.IN)].sum() == 2
        assert result.matrix.sum() == 5

    def test_to_dict_labels_in_canonical_order(self):
        result = confusion_distribution([rec("GB", "GB", 1.0)])
        payload = result.to_dict()
        assert payload["labels"] == [str(a) for a in ACCENTS]
        assert len(payload["matrix"]) == 12
        assert all(len(row) == 12 for row in payload["matrix"])


class TestGroupRates:
    def test_two_group_example_rates(self):
        rates = group_rates(TWO_GROUP_RECORDS, threshold=0.5)
        by_accent = {g.accent: g for g in rates}
        assert set(by_accent) == {AccentLabel.GB, AccentLabel.US}
        gb, us = by_accent[AccentLabel.GB], by_accent[AccentLabel.US]
        assert gb.far == 0.0
        assert gb.frr == pytest.approx(0.2, abs=1e-15)
        assert us.far == pytest.approx(0.2, abs=1e-15)
        assert us.frr == pytest.approx(0.2, abs=1e-15)
        assert gb.n_genuine == us.n_genuine == 10
        assert gb.n_impostor == us.n_impostor == 10

    def test_groups_sorted_by_accent_code(self):
        records = [rec("US", "US", 1.0), rec("CA", "CA", 1.0), rec("GB", "GB", 1.0)]
        rates = group_rates(records, threshold=0.5)
        assert [g.accent for g in rates] == [AccentLabel.CA, AccentLabel.GB, AccentLabel.US]

    def test_single_group_raises(self):
        with pytest.raises(InsufficientGroups):
            group_rates([rec("GB", "GB", 1.0)] * 5, threshold=0.5)

    def test_empty_raises(self):
        with pytest.raises(InsufficientGroups):
            group_rates([], threshold=0.5)

    def test_low_confidence_counts_as_rejection(self):
        records = [rec("GB", "GB", 0.1), rec("US", "US", 0.9)]
        by_accent = {g.accent: g for g in group_rates(records, threshold=0.5)}
        assert by_accent[AccentLabel.GB].frr == 1.0
        assert by_accent[AccentLabel.US].frr == 0.0

    def test_threshold_boundary_is_inclusive(self):
        records = [rec("GB", "GB", 0.5), rec("US", "US", 0.5)]
        for g in group_rates(records, threshold=0.5):
            assert g.frr == 0.0


class TestFdr:
    def test_identical_rates_give_one(self):
        records = [rec("GB", "GB", 1.0), rec("US", "US", 1.0), rec("IN", "IN", 1.0)]
        result = fdr(records, threshold=0.5)
        assert result.fdr == 1.0
        assert result.max_far_gap == 0.0
        assert result.max_frr_gap == 0.0

    def test_two_group_example_value(self):
        result = fdr(TWO_GROUP_RECORDS, threshold=0.5)
        assert result.fdr == pytest.approx(0.9, abs=1e-12)
        assert result.max_far_gap == pytest.approx(0.2, abs=1e-15)
        assert result.max_frr_gap == 0.0

    def test_matches_direct_definition_across_thresholds(self):
        rng = random.Random(777)
        taus = [i / 10 for i in range(10)]
        for _ in range(50):
            records = random_records(rng, rng.randint(10, 200))
            triples = [
                (str(r.true_accent), str(r.predicted_accent), r.confidence)
                for r in records
            ]
            if len({t for t, _, _ in triples}) < 2:
                continue
            for tau in taus:
                expected = direct_fdr(triples, tau, 0.5, 0.5)
                got = fdr(records, threshold=tau)
                assert got.fdr == pytest.approx(expected, abs=1e-12), (
                    f"tau={tau}: {got.fdr} != {expected}"
                )

    def test_unequal_weights_match_direct_definition(self):
        triples = [
            (str(r.true_accent), str(r.predicted_accent), r.confidence)
            for r in TWO_GROUP_RECORDS
        ]
        result = fdr(TWO_GROUP_RECORDS, threshold=0.5, alpha=0.25, beta=0.75)
        assert result.fdr == pytest.approx(direct_fdr(triples, 0.5, 0.25, 0.75), abs=1e-12)

    def test_weights_must_sum_to_one(self):
        with pytest.raises(ValueError):
            fdr(TWO_GROUP_RECORDS, threshold=0.5, alpha=0.6, beta=0.6)

    def test_weights_must_be_nonnegative(self):
        with pytest.raises(ValueError):
            fdr(TWO_GROUP_RECORDS, threshold=0.5, alpha=-0.5, beta=1.5)

    def test_result_carries_configuration_and_groups(self):
        result = fdr(TWO_GROUP_RECORDS, threshold=0.5)
        assert result.threshold == 0.5
        assert result.alpha == 0.5
        assert result.beta == 0.5
        assert {g.accent for g in result.group_rates} == {AccentLabel.GB, AccentLabel.US}

    def test_worst_case_disparity_reaches_zero(self):
        # One group always falsely accepted and another always rejected.
        records = [rec("GB", "US", 1.0)] * 5 + [rec("US", "US", 1.0)] * 5
        result = fdr(records, threshold=0.5)
        # FAR(US)=1, FAR(GB)=0; FRR(GB)=1, FRR(US)=0.
        assert result.fdr == pytest.approx(0.0, abs=1e-12)


class TestBinomialTail:
    def test_frozen_reference_value(self):
        assert binomial_tail(100, 30, 1 / 12) == pytest.approx(
            3.514275524729031e-10, rel=1e-9
        )

    def test_k_zero_is_exactly_one(self):
        assert binomial_tail(50, 0, 1 / 12) == 1.0
        assert binomial_tail(1, 0, 0.99) == 1.0

    def test_all_successes_is_p_to_the_n(self):
        assert binomial_tail(12, 12, 1 / 12) == pytest.approx((1 / 12) ** 12, rel=1e-9)

    def test_matches_exact_rational_sum(self):
        for n, k in [(1, 1), (5, 2), (12, 12), (30, 3), (60, 10), (100, 30)]:
            expected = float(exact_binomial_tail(n, k, Fraction(1, 12)))
            assert binomial_tail(n, k, 1 / 12) == pytest.approx(expected, rel=1e-9)

    def test_matches_scipy_survival_function(self):
        rng = random.Random(99)
        for _ in range(30):
            n = rng.randint(1, 2000)
            k = rng.randint(0, n)
            p0 = rng.choice([1 / 12, 0.05, 0.5, 0.9])
            expected = scipy.stats.binom.sf(k - 1, n, p0)
            assert binomial_tail(n, k, p0) == pytest.approx(expected, rel=1e-9, abs=1e-300)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=1, max_value=1000))
    def test_monotone_nonincreasing_in_k(self, n):
        previous = 1.0
        step = max(1, n // 20)
        for k in range(0, n + 1, step):
            current = binomial_tail(n, k, 1 / 12)
            assert current <= previous + 1e-15
            previous = current

    def test_stays_within_unit_interval(self):
        for n, k in [(1, 0), (1, 1), (10, 5), (100000, 2)]:
            value = binomial_tail(n, k, 1 / 12)
            assert 0.0 <= value <= 1.0

    def test_large_n_does_not_underflow_to_zero(self):
        value = binomial_tail(100000, 9000, 1 / 12)
        assert 0.0 < value < 1.0

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            binomial_tail(5, 6, 0.5)
        with pytest.raises(ValueError):
            binomial_tail(-1, 0, 0.5)
        with pytest.raises(ValueError):
            binomial_tail(5, -1, 0.5)
        with pytest.raises(ValueError):
            binomial_tail(5, 2, 0.0)
        with pytest.raises(ValueError):
            binomial_tail(5, 2, 1.0)


class TestBinomialBiasTest:
    def test_target_must_be_dominant_accent(self):
        records = [rec("GB", "US", 1.0)]
        with pytest.raises(ValueError):
            binomial_bias_test(records, AccentLabel.GB)

    def test_empty_records_raise(self):
        with pytest.raises(EmptyRecords):
            binomial_bias_test([], AccentLabel.US)

    def test_groups_exclude_both_targets(self):
        records = [rec(str(a), "US", 1.0) for a in ACCENTS]
        results = binomial_bias_test(records, AccentLabel.US)
        groups = {r.group for r in results}
        assert AccentLabel.US not in groups
        assert AccentLabel.CA not in groups
        assert len(results) == 10

    def test_counts_per_group(self):
        records = (
            [rec("GB", "US", 1.0)] * 7
            + [rec("GB", "GB", 1.0)] * 3
            + [rec("IN", "US", 1.0)] * 2
            + [rec("IN", "IN", 1.0)] * 8
        )
        results = {r.group: r for r in binomial_bias_test(records, AccentLabel.US)}
        assert results[AccentLabel.GB].n == 10
        assert results[AccentLabel.GB].k == 7
        assert results[AccentLabel.IN].n == 10
        assert results[AccentLabel.IN].k == 2

    def test_p_values_come_from_exact_tail(self):
        records = [rec("GB", "US", 1.0)] * 7 + [rec("GB", "GB", 1.0)] * 3
        (result,) = binomial_bias_test(records, AccentLabel.US)
        assert result.p_value == binomial_tail(10, 7, CHANCE_RATE)
        assert result.p0 == CHANCE_RATE

    def test_empty_groups_are_skipped(self):
        records = [rec("GB", "US", 1.0)] * 4
        results = binomial_bias_test(records, AccentLabel.US)
        assert [r.group for r in results] == [AccentLabel.GB]

    def test_ca_target_counts_ca_predictions(self):
        records = [rec("GB", "CA", 1.0)] * 3 + [rec("GB", "US", 1.0)] * 2
        (result,) = binomial_bias_test(records, AccentLabel.CA)
        assert result.k == 3
        assert result.target is AccentLabel.CA

    def test_custom_null_rate(self):
        records = [rec("GB", "US", 1.0)] * 5
        (result,) = binomial_bias_test(records, AccentLabel.US, p0=0.5)
        assert result.p_value == binomial_tail(5, 5, 0.5)
        assert result.p_value == pytest.approx(0.5**5, rel=1e-12)

    def test_result_dict_shape(self):
        records = [rec("GB", "US", 1.0)] * 4
        (result,) = binomial_bias_test(records, AccentLabel.US)
        payload = result.to_dict()
        assert payload == {
            "group": "GB",
            "target": "US",
            "n": 4,
            "k": 4,
            "p0": CHANCE_RATE,
            "p_value": result.p_value,
        }


class ConstantScorer:
    def __init__(self, value: float):
        self.value = value

    def score(self, audio_ref: str) -> float:
        return self.value


class TestQualityScores:
    def test_constant_scorer_means(self):
        items = [
            (SpeechArtifact(audio_ref="mock://a.wav"), AccentLabel.GB),
            ("mock://b.wav", AccentLabel.US),
        ]
        result = quality_scores(items, ConstantScorer(4.2))
        assert result.scores == (4.2, 4.2)
        assert result.per_accent_mean[AccentLabel.GB] == 4.2
        assert result.per_accent_mean[AccentLabel.US] == 4.2

    def test_per_accent_means_are_group_averages(self):
        class ByRef:
            def score(self, audio_ref: str) -> float:
                return {"a": 3.0, "b": 5.0, "c": 2.0}[audio_ref]

        items = [("a", AccentLabel.GB), ("b", AccentLabel.GB), ("c", AccentLabel.US)]
        result = quality_scores(items, ByRef())
        assert result.per_accent_mean[AccentLabel.GB] == 4.0
        assert result.per_accent_mean[AccentLabel.US] == 2.0
        assert result.scores == (3.0, 5.0, 2.0)

    def test_out_of_range_scores_clamped_with_warning(self, caplog):
        import logging

        with caplog.at_level(logging.WARNING, logger="accentflow.metrics"):
            high = quality_scores([("x", AccentLabel.GB)], ConstantScorer(7.2))
            low = quality_scores([("y", AccentLabel.GB)], ConstantScorer(0.1))
        assert high.scores == (5.0,)
        assert low.scores == (1.0,)
        assert sum("clamped" in message for message in caplog.messages) == 2

    def test_mock_scorer_output_always_in_range(self):
        items = [(f"mock://{i}.wav", ACCENTS[i % 12]) for i in range(200)]
        result = quality_scores(items, MockQualityScorer(seed=3))
        assert all(1.0 <= s <= 5.0 for s in result.scores)
        assert all(1.0 <= m <= 5.0 for m in result.per_accent_mean.values())

    def test_empty_items_give_empty_result(self):
        result = quality_scores([], ConstantScorer(3.0))
        assert result.scores == ()
        assert result.per_accent_mean == {}

    def test_to_dict_orders_accents_by_code(self):
        items = [("a", AccentLabel.US), ("b", AccentLabel.CA), ("c", AccentLabel.GB)]
        payload = quality_scores(items, ConstantScorer(3.0)).to_dict()
        assert list(payload["per_accent_mean"]) == ["CA", "GB", "US"]


class TestRecordIO:
    def test_round_trip(self, tmp_path):
        rng = random.Random(41)
        records = random_records(rng, 50, codes=[str(a) for a in ACCENTS])
        path = tmp_path / "records.jsonl"
        write_prediction_records(records, path)
        assert read_prediction_records(path) == records

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "records.jsonl"
        line = json.dumps(rec("GB", "US", 0.5).to_dict())
        path.write_text(f"\n{line}\n\n{line}\n", encoding="utf-8")
        assert len(read_prediction_records(path)) == 2

    def test_malformed_json_reports_line_number(self, tmp_path):
        path = tmp_path / "records.jsonl"
        good = json.dumps(rec("GB", "US", 0.5).to_dict())
        path.write_text(f"{good}\nnot-json\n", encoding="utf-8")
        with pytest.raises(MalformedRecord) as excinfo:
            read_prediction_records(path)
        assert "2" in str(excinfo.value)

    def test_unknown_accent_rejected(self, tmp_path):
        path = tmp_path / "records.jsonl"
        payload = rec("GB", "US", 0.5).to_dict()
        payload["true_accent"] = "XX"
        path.write_text(json.dumps(payload) + "\n", encoding="utf-8")
        with pytest.raises(MalformedRecord):
            read_prediction_records(path)

    def test_accepts_open_file_handles(self, tmp_path):
        records = [rec("GB", "GB", 1.0)]
        path = tmp_path / "records.jsonl"
        write_prediction_records(records, path)
        with path.open(encoding="utf-8") as fh:
            assert read_prediction_records(fh) == records

    def test_written_lines_are_sorted_json(self, tmp_path):
        path = tmp_path / "records.jsonl"
        write_prediction_records([rec("GB", "US", 0.5)], path)
        line = path.read_text(encoding="utf-8").strip()
        keys = list(json.loads(line))
        assert keys == sorted(keys)
