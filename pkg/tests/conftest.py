"""Shared builders for randomized and hand-crafted journals."""

from __future__ import annotations

import random

from trade_sentinel.journal import (
    EnrichedRecord,
    Outcome,
    Session,
    TradeRecord,
    enrich,
)
from trade_sentinel.pri import HistoryMode, apply_labels

SESSIONS = (Session.ASIAN, Session.LONDON, Session.NEW_YORK)

# Includes the exact rule-2 boundary (22.5) and values on both sides.
MAX_RR_POOL = (0.0, 1.0, 2.5, 5.0, 10.0, 22.5, 23.0, 24.0, 30.0)


# Keeping max_rr at or below the rule-2 limit caps labels at 2 by construction.
TAME_RR_POOL = (0.0, 1.0, 2.5, 5.0, 10.0, 22.5)


def random_trades(
    rng: random.Random, n: int, start: int = 0, rr_pool=MAX_RR_POOL
) -> list[TradeRecord]:
    return [
        TradeRecord(
            index=start + i,
            max_rr=rng.choice(rr_pool),
            rs=round(rng.uniform(-3, 5), 2),
            outcome=rng.choice((Outcome.WIN, Outcome.LOSS)),
            session=rng.choice(SESSIONS),
        )
        for i in range(n)
    ]


def mutate_suffix(
    rng: random.Random, trades: list[TradeRecord], cut: int, rr_pool=MAX_RR_POOL
) -> list[TradeRecord]:
    """Replace every trade from position `cut` on with fresh random trades."""
    return trades[:cut] + random_trades(rng, len(trades) - cut, start=cut, rr_pool=rr_pool)


def random_journal(rng: random.Random, n: int) -> list[EnrichedRecord]:
    return enrich(random_trades(rng, n))


def capped_labeled_journal(
    rng: random.Random, n: int, mode: HistoryMode = HistoryMode.FULL_HISTORY
) -> list[EnrichedRecord]:
    """A labeled random journal whose labels stay within the evaluation
    classes {0,1,2} (journals where all three rules fire at once are redrawn)."""
    while True:
        journal = apply_labels(random_journal(rng, n), mode)
        if all(rec.pri <= 2 for rec in journal):
            return journal


def make_consistent_journal(n: int = 60, seed: int = 7) -> list[EnrichedRecord]:
    """A journal whose full-history PRI labels are a pure function of the
    5-feature vector.

    Construction: max_rr is constant (rule 2 can never fire and the feature
    contributes no split candidates), sessions are London/New York only, and
    at least one early London loss makes London the whole-journal max-loss
    session. Labels therefore reduce to (|streak| >= 3) + (session == London),
    a function of the streak and session-flag features.
    """
    rng = random.Random(seed)
    outcomes: list[Outcome] = []
    while len(outcomes) < n:
        run = rng.choice((1, 1, 2, 2, 3, 4, 5))
        value = rng.choice((Outcome.WIN, Outcome.LOSS))
        outcomes.extend([value] * run)
    outcomes = outcomes[:n]
    outcomes[1] = Outcome.LOSS  # guarantees a London loss at row 1

    records = []
    for i, outcome in enumerate(outcomes):
        session = Session.LONDON if (i % 3 != 2 or i == 1) else Session.NEW_YORK
        if i == 1:
            session = Session.LONDON
        records.append(
            TradeRecord(index=i, max_rr=5.0, rs=1.0 if outcome is Outcome.WIN else -1.0,
                        outcome=outcome, session=session)
        )
    return apply_labels(enrich(records), HistoryMode.FULL_HISTORY)
