"""Append-only journal store.

The canonical store is the cleaned CSV itself; the revision is the row count,
which is monotone because rows are immutable once appended. Writes go through
a single lock and land via an atomic rename, so a concurrent reader sees
either the old journal or the new one, never a half-written row.

Appends compute the new row's streak, balance, session flags and its
causal-prefix PRI (no look-ahead), so stored labels are always identical to
batch causal labeling of the same journal.
"""

from __future__ import annotations

import os
import tempfile
import threading
from pathlib import Path
from typing import Optional, Sequence

from .journal import (
    EnrichedRecord,
    Outcome,
    Session,
    TradeRecord,
    one_hot_session,
    read_clean_csv,
    write_clean_csv,
)
from .pri import HistoryMode, fired_rules


class RevisionConflictError(Exception):
    """Conditional append against a stale revision."""

    def __init__(self, expected: int, actual: int):
        super().__init__(f"expected revision {expected}, store is at {actual}")
        self.expected = expected
        self.actual = actual


class JournalStore:
    def __init__(self, path: Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        if self.path.exists():
            self._records: tuple[EnrichedRecord, ...] = tuple(
                read_clean_csv(self.path.read_text(encoding="utf-8"))
            )
        else:
            self._records = ()

    @property
    def revision(self) -> int:
        return len(self._records)

    @property
    def records(self) -> tuple[EnrichedRecord, ...]:
        """Consistent snapshot of the journal at the current revision."""
        return self._records

    def append(
        self,
        max_rr: float,
        rs: float,
        outcome: Outcome,
        session: Session,
        expected_revision: Optional[int] = None,
    ) -> EnrichedRecord:
        """Append one trade, deriving its enrichment and causal PRI."""
        if max_rr < 0:
            raise ValueError("max_rr must be non-negative")
        with self._lock:
            if expected_revision is not None and expected_revision != self.revision:
                raise RevisionConflictError(expected_revision, self.revision)
            records = list(self._records)
            index = len(records)
            base = TradeRecord(
                index=index, max_rr=max_rr, rs=rs, outcome=outcome, session=session
            )
            signed = outcome.signed
            last_streak = records[-1].streak if records else 0
            if last_streak != 0 and (last_streak > 0) == (signed > 0):
                streak = last_streak + signed
            else:
                streak = signed
            balance = (records[-1].balance if records else 0.0) + rs
            asian, london = one_hot_session(session)
            enriched = EnrichedRecord(
                base=base,
                outcome_signed=signed,
                streak=streak,
                balance=balance,
                session_asian=asian,
                session_london=london,
            )
            tentative = records + [enriched]
            pri = len(fired_rules(tentative, index, HistoryMode.CAUSAL_PREFIX))
            enriched = enriched.with_pri(pri)
            self._persist(records + [enriched])
            self._records = tuple(records) + (enriched,)
            return enriched

    def replace_all(self, records: Sequence[EnrichedRecord]) -> None:
        """Swap in a whole journal (ingest and relabel paths)."""
        with self._lock:
            self._persist(list(records))
            self._records = tuple(records)

    def _persist(self, records: list[EnrichedRecord]) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        content = write_clean_csv(records)
        fd, tmp_path = tempfile.mkstemp(
            dir=self.path.parent, prefix=self.path.name, suffix=".tmp"
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(content)
            os.replace(tmp_path, self.path)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
