import numpy as np
import pytest

from silhouette_coach import evaluation
from silhouette_coach.errors import EmptyCurve, EmptyDataset, UndefinedMetric
from silhouette_coach.evaluation import (
    ConfusionCounts,
    RocPoint,
    ScoredAttempt,
    accuracy,
    confusion_counts,
    false_positive_rate,
    optimal_threshold,
    roc_curve,
    score_attempts,
    sensitivity,
)
from silhouette_coach.template_store import Perturbation, generate_synthetic_dataset

# Published confusion counts this implementation must reproduce arithmetically.
PUBLISHED = ConfusionCounts(tp=149, fp=18, tn=132, fn=1)


def _attempt(alpha, matched="a", target="a", label="correct"):
    return ScoredAttempt(alpha=alpha, matched_template_id=matched,
                         target_template_id=target, label=label)


def _brute_counts(attempts, threshold):
    tp = fp = tn = fn = 0
    for a in attempts:
        pos = a.alpha >= threshold and a.matched_template_id == a.target_template_id
        if a.label == "correct" and pos:
            tp += 1
        elif a.label == "correct":
            fn += 1
        elif pos:
            fp += 1
        else:
            tn += 1
    return tp, fp, tn, fn


@pytest.fixture(scope="module")
def scored(store):
    attempts = generate_synthetic_dataset(
        0, store, attempts_per_template=5, perturbation=Perturbation(1, 0, 0)
    )
    return score_attempts(store, attempts)


class TestConfusionCounts:
    def test_uniform_positives(self):
        attempts = [_attempt(1.0) for _ in range(7)]
        c = confusion_counts(attempts, 0.8)
        assert (c.tp, c.fp, c.tn, c.fn) == (7, 0, 0, 0)

    def test_uniform_negatives(self):
        attempts = [_attempt(0.0, label="incorrect") for _ in range(5)]
        c = confusion_counts(attempts, 0.8)
        assert (c.tp, c.fp, c.tn, c.fn) == (0, 0, 5, 0)

    def test_wrong_template_match_is_negative_prediction(self):
        # high alpha against the wrong template never counts as positive
        c = confusion_counts([_attempt(0.95, matched="b", target="a")], 0.8)
        assert (c.tp, c.fn) == (0, 1)

    def test_matches_brute_force_on_synthetic(self, scored):
        for t in (0.0, 0.3, 0.8, 1.0):
            c = confusion_counts(scored, t)
            assert (c.tp, c.fp, c.tn, c.fn) == _brute_counts(scored, t)

    def test_empty_dataset_raises(self):
        with pytest.raises(EmptyDataset):
            confusion_counts([], 0.5)

    def test_count_conservation(self, scored):
        for t in evaluation.DEFAULT_THRESHOLDS:
            assert confusion_counts(scored, t).total == len(scored)


class TestMetrics:
    def test_sensitivity_published_counts(self):
        assert sensitivity(PUBLISHED) == pytest.approx(149 / 150, abs=1e-9)

    def test_sensitivity_edge_cases(self):
        assert sensitivity(ConfusionCounts(0, 0, 0, 5)) == 0.0
        assert sensitivity(ConfusionCounts(7, 0, 0, 0)) == 1.0
        with pytest.raises(UndefinedMetric):
            sensitivity(ConfusionCounts(0, 3, 2, 0))

    def test_fpr_published_counts(self):
        assert false_positive_rate(PUBLISHED) == pytest.approx(18 / 150, abs=1e-9)
        assert false_positive_rate(PUBLISHED) == pytest.approx(0.12, abs=1e-9)

    def test_fpr_edge_cases(self):
        assert false_positive_rate(ConfusionCounts(0, 0, 9, 0)) == 0.0
        assert false_positive_rate(ConfusionCounts(0, 3, 0, 0)) == 1.0
        with pytest.raises(UndefinedMetric):
            false_positive_rate(ConfusionCounts(1, 0, 0, 1))

    def test_accuracy_published_counts(self):
        assert accuracy(PUBLISHED) == pytest.approx(281 / 300, abs=1e-9)
        assert accuracy(PUBLISHED) == pytest.approx(0.936667, abs=1e-6)

    def test_accuracy_edge_cases(self):
        assert accuracy(ConfusionCounts(4, 0, 0, 0)) == 1.0
        assert accuracy(ConfusionCounts(0, 4, 0, 0)) == 0.0
        with pytest.raises(UndefinedMetric):
            accuracy(ConfusionCounts(0, 0, 0, 0))

    def test_accuracy_between_sensitivity_and_specificity_balanced(self, scored):
        # positive and negative label counts are equal by construction
        for t in evaluation.DEFAULT_THRESHOLDS:
            c = confusion_counts(scored, t)
            sens = sensitivity(c)
            spec = 1.0 - false_positive_rate(c)
            acc = accuracy(c)
            assert min(sens, spec) - 1e-12 <= acc <= max(sens, spec) + 1e-12


class TestRocCurve:
    def test_default_sweep_has_eleven_points(self, scored):
        assert len(roc_curve(scored)) == 11

    def test_threshold_zero_counts_all_matched_ids(self, scored):
        pt = roc_curve(scored)[0]
        c = confusion_counts(scored, 0.0)
        assert pt.threshold == 0.0
        assert pt.sensitivity == sensitivity(c)

    def test_points_match_independent_recomputation(self, scored):
        for pt in roc_curve(scored):
            tp, fp, tn, fn = _brute_counts(scored, pt.threshold)
            assert pt.sensitivity == tp / (tp + fn)
            assert pt.false_positive_rate == fp / (tn + fp)

    def test_monotone_in_threshold(self, scored):
        curve = roc_curve(scored)
        for a, b in zip(curve, curve[1:]):
            assert b.sensitivity <= a.sensitivity
            assert b.false_positive_rate <= a.false_positive_rate

    def test_order_independent_of_attempt_permutation(self, scored, rng):
        shuffled = list(scored)
        rng.shuffle(shuffled)
        assert roc_curve(shuffled) == roc_curve(scored)

    def test_non_increasing_thresholds_rejected(self, scored):
        with pytest.raises(ValueError):
            roc_curve(scored, [0.5, 0.5])


class TestOptimalThreshold:
    def test_singleton(self):
        assert optimal_threshold([RocPoint(0.4, 0.9, 0.1)]) == 0.4

    def test_tie_breaks_to_larger_threshold(self):
        curve = [RocPoint(0.3, 0.9, 0.1), RocPoint(0.7, 0.8, 0.0)]
        assert optimal_threshold(curve) == 0.7

    def test_equals_independent_youden_scan(self, scored):
        curve = roc_curve(scored)
        best = max(curve, key=lambda p: (p.sensitivity - p.false_positive_rate, p.threshold))
        assert optimal_threshold(curve) == best.threshold

    def test_empty_curve_raises(self):
        with pytest.raises(EmptyCurve):
            optimal_threshold([])


class TestReport:
    def test_report_file_layout(self, scored, tmp_path):
        rows = evaluation.evaluation_rows(scored)
        path = tmp_path / "report.csv"
        evaluation.write_report(rows, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "threshold,tp,fp,tn,fn,sensitivity,fpr,accuracy"
        assert len(lines) == 12
        first = lines[1].split(",")
        assert first[0] == "0.000000"
        assert first[1] == str(rows[0]["tp"])

    def test_summary_table_has_one_row_per_threshold(self, scored):
        rows = evaluation.evaluation_rows(scored)
        table = evaluation.summary_table(rows)
        assert len(table.splitlines()) == len(rows) + 2
