"""Classification metrics over chronological predictions: confusion matrix,
per-class and macro precision/recall/F1, accuracy, and one-vs-rest ROC curves
with trapezoid AUC.

Conventions: precision/recall are 0 when their denominator is 0; macro
averages run over the classes that actually appear in the true labels, so a
never-occurring class cannot distort them.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence

from .journal import EnrichedRecord
from .tree import CLASSES, Hyperparams, fit, predict_distribution
from .training import TrainMode, iterative_scores, labeled_rows

HOLDOUT_TRAIN_FRACTION = 0.75


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    per_class: Dict[int, ClassMetrics]
    macro_precision: float
    macro_recall: float
    macro_f1: float

    def as_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "per_class": {
                str(k): {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "support": m.support,
                }
                for k, m in self.per_class.items()
            },
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
        }


@dataclass(frozen=True)
class RocCurve:
    """ROC points from (0,0) to (1,1) and their trapezoid area."""

    points: tuple[tuple[float, float], ...]
    auc: float


class EvalScheme(Enum):
    # Collect class scores during the chronological refit loop (default),
    # or fit once on the first 75% of rows and score the chronological tail.
    ITERATIVE_SCORES = "iterative"
    HOLDOUT_SPLIT = "holdout"


def confusion(y_true: Sequence[int], y_pred: Sequence[int]) -> list[list[int]]:
    """3x3 count grid; rows are true classes, columns predicted classes."""
    if len(y_true) != len(y_pred):
        raise ValueError("y_true and y_pred differ in length")
    if not y_true:
        raise ValueError("nothing to evaluate")
    matrix = [[0] * len(CLASSES) for _ in CLASSES]
    for t, p in zip(y_true, y_pred):
        if t not in CLASSES or p not in CLASSES:
            raise ValueError(f"class out of range: true={t}, pred={p}")
        matrix[t][p] += 1
    return matrix


def report(cm: Sequence[Sequence[int]]) -> MetricsReport:
    """Precision/recall/F1 per class plus macro means and accuracy."""
    total = sum(sum(row) for row in cm)
    if total <= 0:
        raise ValueError("empty confusion matrix")
    per_class: Dict[int, ClassMetrics] = {}
    for k in CLASSES:
        tp = cm[k][k]
        fp = sum(cm[t][k] for t in CLASSES) - tp
        fn = sum(cm[k]) - tp
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        f1 = (
            2 * precision * recall / (precision + recall)
            if precision + recall > 0
            else 0.0
        )
        per_class[k] = ClassMetrics(precision, recall, f1, support=sum(cm[k]))
    present = [k for k in CLASSES if per_class[k].support > 0]
    return MetricsReport(
        accuracy=sum(cm[k][k] for k in CLASSES) / total,
        per_class=per_class,
        macro_precision=sum(per_class[k].precision for k in present) / len(present),
        macro_recall=sum(per_class[k].recall for k in present) / len(present),
        macro_f1=sum(per_class[k].f1 for k in present) / len(present),
    )


def roc_binary(scores: Sequence[float], labels: Sequence[int]) -> RocCurve:
    """ROC curve over descending score thresholds, tied scores grouped into a
    single step; AUC by the trapezoid rule."""
    if len(scores) != len(labels):
        raise ValueError("scores and labels differ in length")
    positives = sum(1 for y in labels if y == 1)
    negatives = len(labels) - positives
    if positives == 0 or negatives == 0:
        raise ValueError("ROC undefined: labels contain a single class")

    ranked = sorted(zip(scores, labels), key=lambda pair: -pair[0])
    points: list[tuple[float, float]] = [(0.0, 0.0)]
    tp = fp = 0
    i = 0
    while i < len(ranked):
        score = ranked[i][0]
        while i < len(ranked) and ranked[i][0] == score:
            if ranked[i][1] == 1:
                tp += 1
            else:
                fp += 1
            i += 1
        points.append((fp / negatives, tp / positives))
    if points[-1] != (1.0, 1.0):
        points.append((1.0, 1.0))

    auc = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        auc += (x1 - x0) * (y0 + y1) / 2
    return RocCurve(points=tuple(points), auc=auc)


def one_vs_rest_rocs(
    journal: Sequence[EnrichedRecord],
    hp: Hyperparams,
    scheme: EvalScheme = EvalScheme.ITERATIVE_SCORES,
    mode: TrainMode = TrainMode.INCLUSIVE_PREFIX,
) -> Dict[int, Optional[RocCurve]]:
    """One ROC curve per class; a class absent from the evaluated labels (or
    covering all of them) has no defined curve and maps to None."""
    if scheme is EvalScheme.ITERATIVE_SCORES:
        _, distributions = iterative_scores(journal, hp, mode)
        true_labels = [rec.pri for rec in journal]
    else:
        n_train = int(len(journal) * HOLDOUT_TRAIN_FRACTION)
        if n_train < 1 or n_train >= len(journal):
            raise ValueError("journal too small for a 75/25 holdout split")
        train, test = journal[:n_train], journal[n_train:]
        model = fit(labeled_rows(train), hp)
        distributions = [predict_distribution(model, rec.features()) for rec in test]
        true_labels = [rec.pri for rec in test]

    curves: Dict[int, Optional[RocCurve]] = {}
    for k in CLASSES:
        binary = [1 if y == k else 0 for y in true_labels]
        if all(b == 1 for b in binary) or all(b == 0 for b in binary):
            curves[k] = None
            continue
        curves[k] = roc_binary([d[k] for d in distributions], binary)
    return curves


def roc_csv(curves: Dict[int, Optional[RocCurve]]) -> str:
    """Defined per-class curves as `class,fpr,tpr` rows."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["class", "fpr", "tpr"])
    for k in sorted(curves):
        curve = curves[k]
        if curve is None:
            continue
        for fpr, tpr in curve.points:
            writer.writerow([k, fpr, tpr])
    return out.getvalue()


def metrics_text_table(rep: MetricsReport, cm: Sequence[Sequence[int]]) -> str:
    """Plain-text rendering of the metrics report for the CLI."""
    lines = ["confusion matrix (rows=true, cols=pred)"]
    lines.append("      " + "".join(f"{k:>8}" for k in CLASSES))
    for k in CLASSES:
        lines.append(f"  {k:>4}" + "".join(f"{cm[k][p]:>8}" for p in CLASSES))
    lines.append("")
    lines.append(f"{'class':>6} {'precision':>10} {'recall':>10} {'f1':>10} {'support':>8}")
    for k in CLASSES:
        m = rep.per_class[k]
        lines.append(
            f"{k:>6} {m.precision:>10.4f} {m.recall:>10.4f} {m.f1:>10.4f} {m.support:>8}"
        )
    lines.append("")
    lines.append(f"accuracy        {rep.accuracy:.4f}")
    lines.append(f"macro precision {rep.macro_precision:.4f}")
    lines.append(f"macro recall    {rep.macro_recall:.4f}")
    lines.append(f"macro f1        {rep.macro_f1:.4f}")
    return "\n".join(lines) + "\n"
