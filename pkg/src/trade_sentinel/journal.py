"""Journal ingestion: parse the raw trading-journal CSV and derive the
feature-ready record sequence (signed outcomes, streaks, session one-hot,
hypothetical balance).

The raw journal carries four columns: `Max RR`, `Rs`, `BE`, `Session`.
The cleaned journal adds `Streak`, `Balance`, `Session_Asian`,
`Session_London`, `BE_signed` and `PRI`, preserving row order.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Optional, Sequence

logger = logging.getLogger(__name__)

# Raw journal columns. Matching is exact after trimming surrounding whitespace.
COL_MAX_RR = "Max RR"
COL_RS = "Rs"
COL_BE = "BE"
COL_SESSION = "Session"
RAW_COLUMNS = (COL_MAX_RR, COL_RS, COL_BE, COL_SESSION)

CLEAN_COLUMNS = RAW_COLUMNS + (
    "Streak",
    "Balance",
    "Session_Asian",
    "Session_London",
    "BE_signed",
    "PRI",
)

# Fixed model feature order. Balance and Rs are deliberately absent: the
# hypothetical balance is diagnostic metadata only.
FEATURE_NAMES = ("Max RR", "BE", "Streak", "Session_Asian", "Session_London")


class SchemaError(ValueError):
    """Raised when the CSV header is missing a required column."""


class RowError(ValueError):
    """Raised when a data row cannot be parsed. Carries the 1-based row number."""

    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


class Outcome(Enum):
    WIN = "W"
    LOSS = "L"

    @property
    def signed(self) -> int:
        return 1 if self is Outcome.WIN else -1


class Session(Enum):
    ASIAN = "Asian"
    LONDON = "London"
    NEW_YORK = "New York"


# Fixed session order used for deterministic tie-breaks throughout.
SESSION_ORDER = (Session.ASIAN, Session.LONDON, Session.NEW_YORK)


@dataclass(frozen=True)
class TradeRecord:
    """One journal row in chronological position `index`."""

    index: int
    max_rr: float
    rs: float
    outcome: Outcome
    session: Session


@dataclass(frozen=True)
class EnrichedRecord:
    """A TradeRecord plus derived columns.

    `balance` is the hypothetical cumulative R-multiple and never enters the
    feature vector. `pri` is None until the labeler has run.
    """

    base: TradeRecord
    outcome_signed: int
    streak: int
    balance: float
    session_asian: int
    session_london: int
    pri: Optional[int] = None

    @property
    def index(self) -> int:
        return self.base.index

    @property
    def max_rr(self) -> float:
        return self.base.max_rr

    @property
    def session(self) -> Session:
        return self.base.session

    @property
    def outcome(self) -> Outcome:
        return self.base.outcome

    def features(self) -> tuple[float, int, int, int, int]:
        """The 5-component feature vector, in FEATURE_NAMES order."""
        return (
            self.base.max_rr,
            self.outcome_signed,
            self.streak,
            self.session_asian,
            self.session_london,
        )

    def with_pri(self, pri: int) -> "EnrichedRecord":
        return replace(self, pri=pri)


def parse_journal(csv_text: str, lenient: bool = False) -> list[TradeRecord]:
    """Parse the raw journal CSV into TradeRecords, assigning indexes by row order.

    The `BE` value "W" maps to a win; any other non-empty value maps to a loss.
    Unknown session strings are rejected in strict mode (default); in lenient
    mode they fall back to New York with a logged warning.
    """
    reader = csv.reader(io.StringIO(csv_text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty input: no header row") from None

    names = [name.strip() for name in header]
    positions: dict[str, int] = {}
    for col in RAW_COLUMNS:
        if col not in names:
            raise SchemaError(f"missing required column {col!r}")
        positions[col] = names.index(col)

    records: list[TradeRecord] = []
    for row_num, row in enumerate(reader, start=1):
        if not any(cell.strip() for cell in row):
            continue  # blank line
        fields = {}
        for col, pos in positions.items():
            if pos >= len(row):
                raise RowError(row_num, f"missing value for column {col!r}")
            fields[col] = row[pos].strip()

        try:
            max_rr = float(fields[COL_MAX_RR])
        except ValueError:
            raise RowError(
                row_num, f"non-numeric Max RR {fields[COL_MAX_RR]!r}"
            ) from None
        if max_rr < 0:
            raise RowError(row_num, f"negative Max RR {max_rr}")
        try:
            rs = float(fields[COL_RS])
        except ValueError:
            raise RowError(row_num, f"non-numeric Rs {fields[COL_RS]!r}") from None

        be = fields[COL_BE]
        if not be:
            raise RowError(row_num, "missing outcome (BE)")
        outcome = Outcome.WIN if be == "W" else Outcome.LOSS

        session = _parse_session(fields[COL_SESSION], row_num, lenient)

        records.append(
            TradeRecord(
                index=len(records),
                max_rr=max_rr,
                rs=rs,
                outcome=outcome,
                session=session,
            )
        )
    return records


def _parse_session(raw: str, row_num: int, lenient: bool) -> Session:
    for session in SESSION_ORDER:
        if raw == session.value:
            return session
    if lenient:
        logger.warning("row %d: unknown session %r, falling back to New York", row_num, raw)
        return Session.NEW_YORK
    accepted = ", ".join(repr(s.value) for s in SESSION_ORDER)
    raise RowError(row_num, f"unknown session {raw!r} (accepted: {accepted})")


def compute_streaks(outcomes: Sequence[int]) -> list[int]:
    """Signed consecutive-outcome streaks over +1/-1 outcomes.

    The streak at row i includes row i's own outcome and resets to +/-1
    whenever the outcome flips sign.
    """
    streaks: list[int] = []
    for i, outcome in enumerate(outcomes):
        if i > 0 and (outcome > 0) == (outcomes[i - 1] > 0):
            streaks.append(streaks[-1] + outcome)
        else:
            streaks.append(outcome)
    return streaks


def compute_balance(rs_values: Sequence[float], start: float = 0.0) -> list[float]:
    """Hypothetical running balance: prefix sums of Rs from `start`.

    Diagnostic only; excluded from the feature vector.
    """
    balances: list[float] = []
    total = start
    for rs in rs_values:
        total += rs
        balances.append(total)
    return balances


def one_hot_session(session: Session) -> tuple[int, int]:
    """(Session_Asian, Session_London) flags. New York is the dropped baseline."""
    return (
        1 if session is Session.ASIAN else 0,
        1 if session is Session.LONDON else 0,
    )


def enrich(records: Sequence[TradeRecord], start_balance: float = 0.0) -> list[EnrichedRecord]:
    """Derive streaks, balances and session flags for a parsed journal."""
    outcomes = [r.outcome.signed for r in records]
    streaks = compute_streaks(outcomes)
    balances = compute_balance([r.rs for r in records], start_balance)
    enriched = []
    for record, signed, streak, balance in zip(records, outcomes, streaks, balances):
        asian, london = one_hot_session(record.session)
        enriched.append(
            EnrichedRecord(
                base=record,
                outcome_signed=signed,
                streak=streak,
                balance=balance,
                session_asian=asian,
                session_london=london,
            )
        )
    return enriched


def _format_number(value: float) -> str:
    # Integers render without a trailing .0 so hand-written CSVs round-trip.
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def write_clean_csv(records: Iterable[EnrichedRecord]) -> str:
    """Serialize an enriched journal to the cleaned CSV format."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CLEAN_COLUMNS)
    for rec in records:
        writer.writerow(
            [
                _format_number(rec.base.max_rr),
                _format_number(rec.base.rs),
                rec.base.outcome.value,
                rec.base.session.value,
                rec.streak,
                _format_number(rec.balance),
                rec.session_asian,
                rec.session_london,
                rec.outcome_signed,
                "" if rec.pri is None else rec.pri,
            ]
        )
    return out.getvalue()


def read_clean_csv(csv_text: str) -> list[EnrichedRecord]:
    """Load a cleaned CSV back into enriched records, recomputing derived columns.

    Derived values are recomputed from the raw columns rather than trusted,
    so a hand-edited file cannot introduce inconsistent streaks or balances.
    Stored PRI values are preserved.
    """
    records = enrich(parse_journal(csv_text))
    reader = csv.DictReader(io.StringIO(csv_text))
    pris: list[Optional[int]] = []
    for row in reader:
        raw = (row.get("PRI") or "").strip()
        pris.append(int(raw) if raw else None)
    if len(pris) != len(records):
        pris = [None] * len(records)
    return [
        rec if pri is None else rec.with_pri(pri)
        for rec, pri in zip(records, pris)
    ]
