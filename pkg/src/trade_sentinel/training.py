"""Chronological training: refit a fresh tree on the journal prefix for every
row, predict that row, and grid-search hyperparameters by the resulting
accuracy.

INCLUSIVE_PREFIX trains on rows 0..i and then predicts row i (retrospective
style); CAUSAL_PREFIX trains on rows 0..i-1 only, the honest no-look-ahead
variant for live use. In causal mode row 0 has nothing to train
on and receives the fallback class 0 (the no-risk prior).
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .journal import EnrichedRecord
from .tree import CLASSES, Hyperparams, fit, predict, predict_distribution

FALLBACK_CLASS = 0

# The standard search grid: 27 combinations.
DEFAULT_GRID: dict[str, list] = {
    "max_depth": [3, 5, 7],
    "min_samples_split": [2, 5, 10],
    "min_samples_leaf": [1, 2, 4],
}

GRID_CSV_COLUMNS = ("max_depth", "min_samples_split", "min_samples_leaf", "accuracy")


class TrainMode(Enum):
    INCLUSIVE_PREFIX = "inclusive"
    CAUSAL_PREFIX = "causal"


@dataclass(frozen=True)
class GridResult:
    hp: Hyperparams
    predictions: tuple[int, ...]
    accuracy: float


def labeled_rows(journal: Sequence[EnrichedRecord]) -> list[tuple[tuple, int]]:
    """(features, label) pairs for training. Labels outside the evaluation
    classes are rejected: a stray PRI 3 would corrupt the one-vs-rest metrics
    invisibly if it were let through."""
    rows = []
    for rec in journal:
        if rec.pri is None:
            raise ValueError(f"row {rec.index} has no PRI label")
        if rec.pri not in CLASSES:
            raise ValueError(
                f"row {rec.index} has PRI {rec.pri} outside classes {CLASSES}"
            )
        rows.append((rec.features(), rec.pri))
    return rows


def iterative_scores(
    journal: Sequence[EnrichedRecord],
    hp: Hyperparams,
    mode: TrainMode = TrainMode.INCLUSIVE_PREFIX,
) -> tuple[list[int], list[tuple[float, ...]]]:
    """Chronological run returning per-row predicted classes and class
    probability vectors (for ROC scoring).

    Every step refits from scratch on the prefix dictated by `mode`. The
    causal cold start (row 0, empty training set) predicts the fallback class
    with a one-hot distribution on it.
    """
    rows = labeled_rows(journal)
    predictions: list[int] = []
    distributions: list[tuple[float, ...]] = []
    for i, (features, _) in enumerate(rows):
        prefix = rows[: i + 1] if mode is TrainMode.INCLUSIVE_PREFIX else rows[:i]
        if not prefix:
            predictions.append(FALLBACK_CLASS)
            distributions.append(
                tuple(1.0 if k == FALLBACK_CLASS else 0.0 for k in CLASSES)
            )
            continue
        model = fit(prefix, hp)
        predictions.append(predict(model, features))
        distributions.append(predict_distribution(model, features))
    return predictions, distributions


def iterative_run(
    journal: Sequence[EnrichedRecord],
    hp: Hyperparams,
    mode: TrainMode = TrainMode.INCLUSIVE_PREFIX,
) -> list[int]:
    """Predicted class per row under the chronological refit loop."""
    predictions, _ = iterative_scores(journal, hp, mode)
    return predictions


def accuracy_of(predictions: Sequence[int], labels: Sequence[int]) -> float:
    if len(predictions) != len(labels):
        raise ValueError("predictions and labels differ in length")
    hits = sum(1 for p, y in zip(predictions, labels) if p == y)
    return hits / len(labels)


def enumerate_grid(grid: dict[str, list]) -> list[Hyperparams]:
    """All hyperparameter combinations in deterministic enumeration order:
    ascending max_depth, then min_samples_split, then min_samples_leaf.
    Unlimited depth (None) sorts after every finite depth."""
    depths = sorted(grid["max_depth"], key=lambda d: (d is None, d if d is not None else 0))
    splits = sorted(grid["min_samples_split"])
    leaves = sorted(grid["min_samples_leaf"])
    return [
        Hyperparams(max_depth=d, min_samples_split=s, min_samples_leaf=l)
        for d, s, l in itertools.product(depths, splits, leaves)
    ]


def grid_search(
    journal: Sequence[EnrichedRecord],
    grid: Optional[dict[str, list]] = None,
    mode: TrainMode = TrainMode.INCLUSIVE_PREFIX,
) -> list[GridResult]:
    """Evaluate every grid combination with the chronological loop and rank by
    accuracy descending; equal accuracies keep enumeration order."""
    if not journal:
        raise ValueError("empty journal: nothing to train on")
    if grid is None:
        grid = DEFAULT_GRID
    labels = [rec.pri for rec in journal]
    results = []
    for hp in enumerate_grid(grid):
        predictions = iterative_run(journal, hp, mode)
        results.append(
            GridResult(
                hp=hp,
                predictions=tuple(predictions),
                accuracy=accuracy_of(predictions, labels),
            )
        )
    # sorted() is stable, so enumeration order survives among ties
    return sorted(results, key=lambda r: -r.accuracy)


def grid_table_rows(results: Sequence[GridResult]) -> list[dict]:
    return [
        {
            "max_depth": r.hp.max_depth,
            "min_samples_split": r.hp.min_samples_split,
            "min_samples_leaf": r.hp.min_samples_leaf,
            "accuracy": r.accuracy,
        }
        for r in results
    ]


def grid_table_csv(results: Sequence[GridResult]) -> str:
    """The accuracy table as CSV, in ranked order."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(GRID_CSV_COLUMNS)
    for row in grid_table_rows(results):
        writer.writerow([row[col] for col in GRID_CSV_COLUMNS])
    return out.getvalue()
