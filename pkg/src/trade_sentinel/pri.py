"""Psychological Risk Index labeling.

Three additive rules, each contributing +1:

  R1  the current win/loss streak has reached 3 or more;
  R2  the previous trade targeted an oversized reward-to-risk ratio
      (max_rr / 3 > 7.5, i.e. above 22.5), checked from row 3 onward;
  R3  the trade sits in the session with the most recorded losses.

R3's loss census scans the one-hot session columns, so only Asian and London
can ever win the argmax; New York is the dropped baseline and a New York row
never fires R3. Ties go to the first session in fixed order (Asian first).
"""

from __future__ import annotations

from enum import Enum
from typing import Optional, Sequence

from .journal import EnrichedRecord, Outcome, Session

# Sessions that carry a one-hot column, in argmax tie-break order.
COUNTED_SESSIONS = (Session.ASIAN, Session.LONDON)

RULE_STREAK_RUN = "streak_run"
RULE_OVERSIZED_PRIOR_RR = "oversized_prior_rr"
RULE_WORST_LOSS_SESSION = "worst_loss_session"

STREAK_RULE_MIN = 3
PRIOR_RR_LIMIT = 7.5  # against max_rr / 3


class HistoryMode(Enum):
    """How far R3's session-loss census may look.

    FULL_HISTORY counts losses over the entire journal for every row, so the
    census reads rows that lie in the future of the row being labeled.
    CAUSAL_PREFIX restricts it to rows strictly before the current one and is
    the only mode safe for live use.
    """

    FULL_HISTORY = "full"
    CAUSAL_PREFIX = "causal"


def max_loss_session(
    journal: Sequence[EnrichedRecord], upto: Optional[int] = None
) -> Session:
    """The session with the most Loss outcomes, ties to the first in fixed order.

    With `upto` given, only rows with index < upto are counted. With all
    counts zero (e.g. upto=0) the tie-break returns Asian.
    """
    counts = {session: 0 for session in COUNTED_SESSIONS}
    for rec in journal:
        if upto is not None and rec.index >= upto:
            continue
        if rec.base.outcome is Outcome.LOSS and rec.base.session in counts:
            counts[rec.base.session] += 1
    return max(COUNTED_SESSIONS, key=lambda s: counts[s])


def fired_rules(
    journal: Sequence[EnrichedRecord], i: int, mode: HistoryMode
) -> list[str]:
    """Identifiers of the PRI rules that fire for row i."""
    rec = journal[i]
    rules = []
    if abs(rec.streak) >= STREAK_RULE_MIN:
        rules.append(RULE_STREAK_RUN)
    if i >= 3 and journal[i - 1].base.max_rr / 3 > PRIOR_RR_LIMIT:
        rules.append(RULE_OVERSIZED_PRIOR_RR)
    upto = i if mode is HistoryMode.CAUSAL_PREFIX else None
    if rec.base.session is max_loss_session(journal, upto=upto):
        rules.append(RULE_WORST_LOSS_SESSION)
    return rules


def label_pri(
    journal: Sequence[EnrichedRecord], mode: HistoryMode = HistoryMode.FULL_HISTORY
) -> list[int]:
    """PRI label (0..3) for every row of an enriched journal."""
    if not journal:
        raise ValueError("nothing to label: journal is empty")
    return [len(fired_rules(journal, i, mode)) for i in range(len(journal))]


def apply_labels(
    journal: Sequence[EnrichedRecord], mode: HistoryMode = HistoryMode.FULL_HISTORY
) -> list[EnrichedRecord]:
    """A copy of the journal with PRI labels filled in."""
    labels = label_pri(journal, mode)
    return [rec.with_pri(pri) for rec, pri in zip(journal, labels)]


def binarize_labels(
    labels: Sequence[int], classes: Sequence[int] = (0, 1, 2)
) -> list[tuple[int, ...]]:
    """One-hot indicator rows for one-vs-rest evaluation.

    A label outside `classes` is an error: silently emitting an all-zero row
    would corrupt one-vs-rest metrics invisibly.
    """
    index = {label: pos for pos, label in enumerate(classes)}
    rows = []
    for i, label in enumerate(labels):
        if label not in index:
            raise ValueError(f"label {label} at row {i} is outside classes {tuple(classes)}")
        row = [0] * len(classes)
        row[index[label]] = 1
        rows.append(tuple(row))
    return rows
