"""HTTP service: live trade logging and pre-trade risk alerts, plus read-only
views of the latest training run's artifacts.

Every response carries the revision of the data it renders: journal and risk
endpoints report the store's current revision, artifact endpoints report the
revision the manifest was trained at (so the console can flag stale views).
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import pipeline
from .journal import Outcome, Session
from .risk import DEFAULT_ALERT_THRESHOLD, TradeProposal, check_risk
from .schemas import (
    AppendResponse,
    EnrichedRow,
    GridResponse,
    HealthResponse,
    JournalResponse,
    MetricsResponse,
    ProposalIn,
    RiskAlertResponse,
    RocResponse,
    TradeIn,
    TreeResponse,
)
from .store import JournalStore, RevisionConflictError
from .tree import Hyperparams, TreeNode, fit

JOURNAL_FILENAME = "journal.csv"

# Fallback when no training run exists yet: a depth-5 tree with
# unconstrained splits, the usual grid winner on small journals.
DEFAULT_MODEL_HP = Hyperparams(max_depth=5, min_samples_split=2, min_samples_leaf=1)

_OUTCOMES = {"W": Outcome.WIN, "L": Outcome.LOSS}
_SESSIONS = {s.value: s for s in Session}


class _ModelCache:
    """One fitted tree, invalidated whenever the revision or hp change."""

    def __init__(self):
        self._lock = threading.Lock()
        self._key: Optional[tuple] = None
        self._model: Optional[TreeNode] = None

    def get(self, store: JournalStore, hp: Hyperparams) -> Optional[TreeNode]:
        records = store.records
        rows = [(rec.features(), rec.pri) for rec in records if rec.pri is not None]
        if not rows:
            return None
        key = (len(records), hp)
        with self._lock:
            if self._key != key:
                self._model = fit(rows, hp)
                self._key = key
            return self._model


def create_app(
    data_dir: Path,
    threshold: int = DEFAULT_ALERT_THRESHOLD,
    static_dir: Optional[Path] = None,
) -> FastAPI:
    data_dir = Path(data_dir)
    store = JournalStore(data_dir / JOURNAL_FILENAME)
    manifest_dir = data_dir / pipeline.MANIFEST_DIR_NAME
    cache = _ModelCache()

    app = FastAPI(title="trade-sentinel", version="0.1.0")
    app.state.store = store

    @app.exception_handler(RequestValidationError)
    async def validation_to_400(request: Request, exc: RequestValidationError):
        # The API contract uses 400 with field detail for validation failures.
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.get("/api/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", revision=store.revision)

    @app.get("/api/journal", response_model=JournalResponse)
    def journal():
        records = store.records
        return JournalResponse(
            revision=len(records),
            rows=[EnrichedRow.from_record(rec) for rec in records],
        )

    @app.post("/api/trades", response_model=AppendResponse)
    def append_trade(trade: TradeIn):
        try:
            row = store.append(
                max_rr=trade.max_rr,
                rs=trade.rs,
                outcome=_OUTCOMES[trade.outcome],
                session=_SESSIONS[trade.session],
                expected_revision=trade.expected_revision,
            )
        except RevisionConflictError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return AppendResponse(revision=store.revision, row=EnrichedRow.from_record(row))

    @app.post("/api/check-risk", response_model=RiskAlertResponse)
    def check_risk_endpoint(proposal: ProposalIn):
        hp = pipeline.winning_hyperparams(manifest_dir) or DEFAULT_MODEL_HP
        alert = check_risk(
            store.records,
            TradeProposal(max_rr=proposal.max_rr, session=_SESSIONS[proposal.session]),
            threshold=threshold,
            model=cache.get(store, hp),
        )
        payload = alert.as_dict()
        payload["revision"] = store.revision
        return RiskAlertResponse(**payload)

    @app.get("/api/tree", response_model=TreeResponse)
    def tree_doc():
        manifest = _require_manifest(manifest_dir)
        doc = pipeline.load_artifact(manifest_dir, "tree.json")
        return TreeResponse(revision=manifest["revision"], tree=doc)

    @app.get("/api/metrics", response_model=MetricsResponse)
    def metrics_doc():
        manifest = _require_manifest(manifest_dir)
        payload = pipeline.load_artifact(manifest_dir, "metrics.json")
        rep = payload["report"]
        return MetricsResponse(
            revision=manifest["revision"],
            confusion=payload["confusion"],
            accuracy=rep["accuracy"],
            per_class=rep["per_class"],
            macro_precision=rep["macro_precision"],
            macro_recall=rep["macro_recall"],
            macro_f1=rep["macro_f1"],
        )

    @app.get("/api/roc", response_model=RocResponse)
    def roc_doc():
        manifest = _require_manifest(manifest_dir)
        curves = pipeline.load_artifact(manifest_dir, "roc.json")
        return RocResponse(revision=manifest["revision"], curves=curves)

    @app.get("/api/grid", response_model=GridResponse)
    def grid_doc():
        manifest = _require_manifest(manifest_dir)
        table = pipeline.load_artifact(manifest_dir, "grid.json")
        return GridResponse(revision=manifest["revision"], table=table)

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="console")

    return app


def _require_manifest(manifest_dir: Path) -> dict:
    manifest = pipeline.load_manifest(manifest_dir)
    if manifest is None:
        raise HTTPException(
            status_code=404,
            detail="no training run available; run `trade-sentinel train` first",
        )
    return manifest
