"""Batch pipeline: label the journal, grid-search hyperparameters with the
chronological loop, evaluate the winner, and write a run manifest.

The manifest directory holds machine-readable artifacts consumed by the HTTP
service and the web console:

    manifest.json   winning hyperparameters, accuracy, run settings
    grid.csv/json   full accuracy table, ranked
    metrics.json    confusion matrix + precision/recall/F1 report
    roc.csv/json    per-class one-vs-rest ROC curves
    tree.json       exported tree document of the final fit

All artifacts are deterministic for a fixed journal; `created_at` in
manifest.json is the only timestamp.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from .metrics import EvalScheme, confusion, one_vs_rest_rocs, report, roc_csv
from .pri import HistoryMode, apply_labels
from .store import JournalStore
from .tree import Hyperparams, export_tree, fit
from .training import (
    TrainMode,
    grid_search,
    grid_table_csv,
    grid_table_rows,
    labeled_rows,
)

MANIFEST_DIR_NAME = "manifest"


@dataclass(frozen=True)
class RunManifest:
    revision: int
    history_mode: HistoryMode
    train_mode: TrainMode
    winner: Hyperparams
    accuracy: float
    out_dir: Path


def default_history_mode(train_mode: TrainMode) -> HistoryMode:
    # Retrospective runs pair the inclusive slice with whole-journal loss
    # counts; the live path is causal end to end.
    if train_mode is TrainMode.INCLUSIVE_PREFIX:
        return HistoryMode.FULL_HISTORY
    return HistoryMode.CAUSAL_PREFIX


def manifest_dir(store: JournalStore) -> Path:
    return store.path.parent / MANIFEST_DIR_NAME


def run_pipeline(
    store: JournalStore,
    grid: Optional[dict] = None,
    train_mode: TrainMode = TrainMode.INCLUSIVE_PREFIX,
    history_mode: Optional[HistoryMode] = None,
    out_dir: Optional[Path] = None,
) -> RunManifest:
    """Execute label -> grid search -> winner evaluation -> artifacts.

    Leaves the store untouched; fails before writing anything if the journal
    is empty.
    """
    records = store.records
    if not records:
        raise ValueError("empty journal: run ingest first")
    revision = store.revision
    history = history_mode or default_history_mode(train_mode)
    labeled = apply_labels(records, history)
    labels = [rec.pri for rec in labeled]

    results = grid_search(labeled, grid, train_mode)
    winner = results[0]

    cm = confusion(labels, list(winner.predictions))
    rep = report(cm)
    curves = one_vs_rest_rocs(labeled, winner.hp, EvalScheme.ITERATIVE_SCORES, train_mode)
    final_tree = fit(labeled_rows(labeled), winner.hp)

    out = Path(out_dir) if out_dir is not None else manifest_dir(store)
    out.mkdir(parents=True, exist_ok=True)

    manifest = {
        "revision": revision,
        "history_mode": history.value,
        "train_mode": train_mode.value,
        "winner": _hp_dict(winner.hp),
        "accuracy": winner.accuracy,
        "created_at": datetime.now(timezone.utc).isoformat(),
    }
    _write_json(out / "manifest.json", manifest)
    (out / "grid.csv").write_text(grid_table_csv(results), encoding="utf-8")
    _write_json(out / "grid.json", grid_table_rows(results))
    _write_json(
        out / "metrics.json",
        {"confusion": cm, "report": rep.as_dict(), "revision": revision},
    )
    (out / "roc.csv").write_text(roc_csv(curves), encoding="utf-8")
    _write_json(
        out / "roc.json",
        {
            str(k): None
            if curve is None
            else {"points": [list(p) for p in curve.points], "auc": curve.auc}
            for k, curve in curves.items()
        },
    )
    _write_json(out / "tree.json", export_tree(final_tree))

    return RunManifest(
        revision=revision,
        history_mode=history,
        train_mode=train_mode,
        winner=winner.hp,
        accuracy=winner.accuracy,
        out_dir=out,
    )


def load_manifest(out_dir: Path) -> Optional[dict]:
    path = Path(out_dir) / "manifest.json"
    if not path.exists():
        return None
    return json.loads(path.read_text(encoding="utf-8"))


def load_artifact(out_dir: Path, name: str) -> Optional[dict]:
    path = Path(out_dir) / name
    if not path.exists():
        return None
    return json.loads(path.read_text(encoding="utf-8"))


def winning_hyperparams(out_dir: Path) -> Optional[Hyperparams]:
    manifest = load_manifest(out_dir)
    if manifest is None:
        return None
    winner = manifest["winner"]
    return Hyperparams(
        max_depth=winner["max_depth"],
        min_samples_split=winner["min_samples_split"],
        min_samples_leaf=winner["min_samples_leaf"],
    )


def _hp_dict(hp: Hyperparams) -> dict:
    return {
        "max_depth": hp.max_depth,
        "min_samples_split": hp.min_samples_split,
        "min_samples_leaf": hp.min_samples_leaf,
    }


def _write_json(path: Path, payload) -> None:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
