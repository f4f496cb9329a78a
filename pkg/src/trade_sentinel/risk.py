"""Pre-trade risk checks.

The trade outcome is unknown before entry, but the streak feature depends on
it, so a proposal is evaluated under both hypothetical outcomes and the alert
fires on the worse of the two. Rule evaluation is causal: only already
recorded rows enter the session-loss census.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .journal import EnrichedRecord, Outcome, Session, TradeRecord, one_hot_session
from .pri import (
    HistoryMode,
    RULE_OVERSIZED_PRIOR_RR,
    RULE_STREAK_RUN,
    RULE_WORST_LOSS_SESSION,
    fired_rules,
)
from .tree import Hyperparams, TreeNode, fit, predict

DEFAULT_ALERT_THRESHOLD = 1

_RULE_ORDER = (RULE_STREAK_RUN, RULE_OVERSIZED_PRIOR_RR, RULE_WORST_LOSS_SESSION)


@dataclass(frozen=True)
class TradeProposal:
    max_rr: float
    session: Session


@dataclass(frozen=True)
class RiskAlert:
    proposal: TradeProposal
    pri_if_win: int
    pri_if_loss: int
    worst_case_pri: int
    fired_rules: tuple[str, ...]
    alert: bool
    threshold: int
    model_pri_if_win: Optional[int] = None
    model_pri_if_loss: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "trade_context": {
                "max_rr": self.proposal.max_rr,
                "session": self.proposal.session.value,
            },
            "per_outcome_pri": {"if_win": self.pri_if_win, "if_loss": self.pri_if_loss},
            "worst_case_pri": self.worst_case_pri,
            "fired_rules": list(self.fired_rules),
            "alert": self.alert,
            "threshold": self.threshold,
            "model_pri": {
                "if_win": self.model_pri_if_win,
                "if_loss": self.model_pri_if_loss,
            },
        }


def hypothetical_next_record(
    journal: Sequence[EnrichedRecord],
    max_rr: float,
    session: Session,
    outcome: Outcome,
) -> EnrichedRecord:
    """The enriched row the journal would gain if the proposal were taken and
    resolved with `outcome`. Rs is unknown pre-trade and carried as 0."""
    index = len(journal)
    signed = outcome.signed
    last_streak = journal[-1].streak if journal else 0
    if last_streak != 0 and (last_streak > 0) == (signed > 0):
        streak = last_streak + signed
    else:
        streak = signed
    asian, london = one_hot_session(session)
    return EnrichedRecord(
        base=TradeRecord(
            index=index, max_rr=max_rr, rs=0.0, outcome=outcome, session=session
        ),
        outcome_signed=signed,
        streak=streak,
        balance=(journal[-1].balance if journal else 0.0),
        session_asian=asian,
        session_london=london,
    )


def check_risk(
    journal: Sequence[EnrichedRecord],
    proposal: TradeProposal,
    threshold: int = DEFAULT_ALERT_THRESHOLD,
    model_hp: Optional[Hyperparams] = None,
    model: Optional[TreeNode] = None,
) -> RiskAlert:
    """Evaluate the PRI rules for a hypothetical next trade under both
    outcomes. Read-only: the journal is never mutated.

    When a model (or hyperparameters to fit one with) is supplied and the
    journal is non-empty and labeled, the alert also carries the model's
    predicted class for each hypothetical feature vector.
    """
    if proposal.max_rr < 0:
        raise ValueError("max_rr must be non-negative")
    journal = list(journal)
    index = len(journal)

    rules_by_outcome = {}
    hypos = {}
    for outcome in (Outcome.WIN, Outcome.LOSS):
        hypo = hypothetical_next_record(journal, proposal.max_rr, proposal.session, outcome)
        hypos[outcome] = hypo
        rules_by_outcome[outcome] = fired_rules(
            journal + [hypo], index, HistoryMode.CAUSAL_PREFIX
        )

    pri_if_win = len(rules_by_outcome[Outcome.WIN])
    pri_if_loss = len(rules_by_outcome[Outcome.LOSS])
    union = set(rules_by_outcome[Outcome.WIN]) | set(rules_by_outcome[Outcome.LOSS])
    worst = max(pri_if_win, pri_if_loss)

    model_win = model_loss = None
    if model is None and model_hp is not None:
        rows = [(rec.features(), rec.pri) for rec in journal if rec.pri is not None]
        if rows:
            model = fit(rows, model_hp)
    if model is not None:
        model_win = predict(model, hypos[Outcome.WIN].features())
        model_loss = predict(model, hypos[Outcome.LOSS].features())

    return RiskAlert(
        proposal=proposal,
        pri_if_win=pri_if_win,
        pri_if_loss=pri_if_loss,
        worst_case_pri=worst,
        fired_rules=tuple(r for r in _RULE_ORDER if r in union),
        alert=worst >= threshold,
        threshold=threshold,
        model_pri_if_win=model_win,
        model_pri_if_loss=model_loss,
    )
