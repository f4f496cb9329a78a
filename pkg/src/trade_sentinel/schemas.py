"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from .journal import EnrichedRecord

SessionName = Literal["Asian", "London", "New York"]
OutcomeCode = Literal["W", "L"]


class TradeIn(BaseModel):
    max_rr: float = Field(ge=0, description="planned reward-to-risk ratio")
    rs: float = Field(description="realized result in R multiples")
    outcome: OutcomeCode
    session: SessionName
    expected_revision: Optional[int] = Field(
        default=None, description="conditional append: reject if the store moved"
    )


class EnrichedRow(BaseModel):
    index: int
    max_rr: float
    rs: float
    outcome: OutcomeCode
    session: SessionName
    outcome_signed: int
    streak: int
    balance: float
    session_asian: int
    session_london: int
    pri: Optional[int]

    @classmethod
    def from_record(cls, rec: EnrichedRecord) -> "EnrichedRow":
        return cls(
            index=rec.index,
            max_rr=rec.base.max_rr,
            rs=rec.base.rs,
            outcome=rec.base.outcome.value,
            session=rec.base.session.value,
            outcome_signed=rec.outcome_signed,
            streak=rec.streak,
            balance=rec.balance,
            session_asian=rec.session_asian,
            session_london=rec.session_london,
            pri=rec.pri,
        )


class JournalResponse(BaseModel):
    revision: int
    rows: list[EnrichedRow]


class AppendResponse(BaseModel):
    revision: int
    row: EnrichedRow


class ProposalIn(BaseModel):
    max_rr: float = Field(ge=0)
    session: SessionName


class TradeContext(BaseModel):
    max_rr: float
    session: SessionName


class PerOutcomePri(BaseModel):
    if_win: int
    if_loss: int


class ModelPri(BaseModel):
    if_win: Optional[int]
    if_loss: Optional[int]


class RiskAlertResponse(BaseModel):
    revision: int
    trade_context: TradeContext
    per_outcome_pri: PerOutcomePri
    worst_case_pri: int
    fired_rules: list[str]
    alert: bool
    threshold: int
    model_pri: ModelPri


class ClassMetricsOut(BaseModel):
    precision: float
    recall: float
    f1: float
    support: int


class MetricsResponse(BaseModel):
    revision: int
    confusion: list[list[int]]
    accuracy: float
    per_class: dict[str, ClassMetricsOut]
    macro_precision: float
    macro_recall: float
    macro_f1: float


class RocCurveOut(BaseModel):
    points: list[tuple[float, float]]
    auc: float


class RocResponse(BaseModel):
    revision: int
    curves: dict[str, Optional[RocCurveOut]]


class GridRow(BaseModel):
    max_depth: Optional[int]
    min_samples_split: int
    min_samples_leaf: int
    accuracy: float


class GridResponse(BaseModel):
    revision: int
    table: list[GridRow]


class TreeResponse(BaseModel):
    revision: int
    tree: dict


class HealthResponse(BaseModel):
    status: str
    revision: int
