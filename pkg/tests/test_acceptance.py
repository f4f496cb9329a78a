"""Acceptance gate: one test per primary criterion, each printing a pass line
and enforcing its runtime budget. Runnable standalone:

    pytest tests/test_acceptance.py -v -s
"""

import json
import random
import time
from fractions import Fraction

from trade_sentinel.journal import enrich
from trade_sentinel.metrics import confusion, report, roc_binary
from trade_sentinel.pipeline import run_pipeline
from trade_sentinel.pri import HistoryMode, apply_labels, label_pri
from trade_sentinel.store import JournalStore
from trade_sentinel.training import DEFAULT_GRID, TrainMode, grid_search, iterative_run
from trade_sentinel.tree import Hyperparams, best_split, gini

from conftest import (
    TAME_RR_POOL,
    make_consistent_journal,
    mutate_suffix,
    random_journal,
    random_trades,
)
from test_metrics import mann_whitney_auc
from test_pri import naive_rule_pri
from test_tree import brute_force_best_split, random_dataset


def announce(name, started, budget):
    elapsed = time.perf_counter() - started
    assert elapsed < budget, f"{name}: {elapsed:.2f}s exceeded {budget}s budget"
    print(f"ACCEPTANCE PASS: {name} ({elapsed:.2f}s)")


def test_gini_correctness():
    started = time.perf_counter()
    assert gini({0: 1, 1: 3}) == 0.375
    rng = random.Random(1001)
    checked = 0
    while checked < 1000:
        counts = {k: rng.randint(0, 12) for k in (0, 1, 2)}
        total = sum(counts.values())
        if total == 0:
            continue
        exact = 1 - sum(Fraction(c, total) ** 2 for c in counts.values())
        assert abs(gini(counts) - float(exact)) <= 1e-12
        checked += 1
    announce("gini matches direct formula on 1000 random count vectors", started, 1.0)


def test_split_search_oracle_equivalence():
    started = time.perf_counter()
    rng = random.Random(2002)
    for _ in range(200):
        rows = random_dataset(rng, rng.randint(2, 30), rng.randint(1, 3))
        msl = rng.randint(1, 3)
        assert best_split(rows, msl) == brute_force_best_split(rows, msl)
    announce("best_split equals brute-force enumeration on 200 datasets", started, 10.0)


def test_pri_oracle_equivalence():
    started = time.perf_counter()
    rng = random.Random(3003)
    for _ in range(500):
        journal = random_journal(rng, rng.randint(1, 60))
        assert label_pri(journal, HistoryMode.FULL_HISTORY) == naive_rule_pri(journal)
        assert label_pri(journal, HistoryMode.CAUSAL_PREFIX) == naive_rule_pri(
            journal, causal=True
        )
    announce("PRI labels match the naive rule re-implementation on 500 journals", started, 10.0)


def test_perfect_score_reproduction():
    started = time.perf_counter()
    journal = make_consistent_journal(60)
    assert len(journal) >= 50

    # label consistency, checked independently: identical feature vectors
    # never carry different labels
    seen = {}
    for rec in journal:
        label = seen.setdefault(rec.features(), rec.pri)
        assert label == rec.pri, "journal is not label-consistent"
    assert {rec.pri for rec in journal} == {0, 1, 2}

    results = grid_search(journal, DEFAULT_GRID, TrainMode.INCLUSIVE_PREFIX)
    assert len(results) == 27
    best = results[0]
    assert best.accuracy == 1.0

    labels = [rec.pri for rec in journal]
    rep = report(confusion(labels, list(best.predictions)))
    assert rep.accuracy == 1.0
    assert rep.macro_precision == 1.0
    assert rep.macro_recall == 1.0
    assert rep.macro_f1 == 1.0

    perfect = {r.hp for r in results if r.accuracy == 1.0}
    assert Hyperparams(max_depth=5, min_samples_split=2, min_samples_leaf=1) in perfect

    # the per-combination accuracy table has no fixed expected values; it is
    # checked for determinism across reruns instead
    rerun = grid_search(journal, DEFAULT_GRID, TrainMode.INCLUSIVE_PREFIX)
    assert [(r.hp, r.accuracy, r.predictions) for r in results] == [
        (r.hp, r.accuracy, r.predictions) for r in rerun
    ]
    announce("perfect-score reproduction with (5,2,1) in the perfect set", started, 60.0)


def test_causality_no_look_ahead():
    started = time.perf_counter()
    rng = random.Random(5005)

    # labels: full rule coverage, any label values
    for _ in range(100):
        trades = random_trades(rng, rng.randint(2, 40))
        cut = rng.randint(1, len(trades) - 1)
        mutated = mutate_suffix(rng, trades, cut)
        original_labels = label_pri(enrich(trades), HistoryMode.CAUSAL_PREFIX)
        mutated_labels = label_pri(enrich(mutated), HistoryMode.CAUSAL_PREFIX)
        assert original_labels[:cut] == mutated_labels[:cut]

    # predictions: labels within the evaluation classes by construction
    for _ in range(100):
        trades = random_trades(rng, rng.randint(2, 22), rr_pool=TAME_RR_POOL)
        cut = rng.randint(1, len(trades) - 1)
        mutated = mutate_suffix(rng, trades, cut, rr_pool=TAME_RR_POOL)
        hp = Hyperparams(max_depth=5)
        original = iterative_run(
            apply_labels(enrich(trades), HistoryMode.CAUSAL_PREFIX),
            hp,
            TrainMode.CAUSAL_PREFIX,
        )
        again = iterative_run(
            apply_labels(enrich(mutated), HistoryMode.CAUSAL_PREFIX),
            hp,
            TrainMode.CAUSAL_PREFIX,
        )
        assert original[:cut] == again[:cut]
    announce("suffix mutations never change causal prefix labels/predictions", started, 30.0)


def test_roc_auc_oracle():
    started = time.perf_counter()
    perfect = roc_binary([0.9, 0.1], [1, 0])
    assert perfect.auc == 1.0
    constant = roc_binary([0.4, 0.4, 0.4, 0.4], [1, 0, 1, 0])
    assert constant.auc == 0.5

    rng = random.Random(6006)
    checked = 0
    while checked < 200:
        n = rng.randint(2, 50)
        labels = [rng.randint(0, 1) for _ in range(n)]
        if len(set(labels)) < 2:
            continue
        scores = [rng.choice((0.0, 0.2, 0.4, 0.5, 0.6, 0.8, 1.0)) for _ in range(n)]
        curve = roc_binary(scores, labels)
        assert abs(curve.auc - mann_whitney_auc(scores, labels)) <= 1e-9
        checked += 1
    announce("trapezoid AUC matches the Mann-Whitney oracle on 200 sets", started, 5.0)


def test_pipeline_determinism(tmp_path):
    started = time.perf_counter()
    store = JournalStore(tmp_path / "journal.csv")
    store.replace_all(make_consistent_journal(55))
    run_pipeline(store, out_dir=tmp_path / "run_a")
    run_pipeline(store, out_dir=tmp_path / "run_b")
    for name in ("grid.csv", "grid.json", "metrics.json", "roc.csv", "roc.json", "tree.json"):
        assert (tmp_path / "run_a" / name).read_bytes() == (
            tmp_path / "run_b" / name
        ).read_bytes(), name
    manifests = []
    for run in ("run_a", "run_b"):
        payload = json.loads((tmp_path / run / "manifest.json").read_text())
        payload.pop("created_at")
        manifests.append(payload)
    assert manifests[0] == manifests[1]
    announce("repeated pipeline runs are identical apart from timestamps", started, 60.0)


def test_append_equivalence(tmp_path):
    started = time.perf_counter()
    rng = random.Random(8008)
    store = JournalStore(tmp_path / "journal.csv")
    for trade in random_trades(rng, 30):
        store.append(trade.max_rr, trade.rs, trade.outcome, trade.session)
    stored_labels = [rec.pri for rec in store.records]
    assert stored_labels == label_pri(store.records, HistoryMode.CAUSAL_PREFIX)
    # and a reader starting fresh from disk sees the same journal
    reloaded = JournalStore(store.path)
    assert [rec.pri for rec in reloaded.records] == stored_labels
    announce("interleaved appends equal batch causal labeling", started, 30.0)
