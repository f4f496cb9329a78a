"""Command-line interface. Thin argument parsing over the core package; no
risk logic lives here.

    trade-sentinel ingest journal.csv
    trade-sentinel label --mode full
    trade-sentinel train --mode inclusive
    trade-sentinel eval
    trade-sentinel predict --max-rr 5 --session London
    trade-sentinel serve --port 8000 --threshold 1
"""

from __future__ import annotations

import json
from pathlib import Path

import click

from . import pipeline
from .api import DEFAULT_MODEL_HP, JOURNAL_FILENAME, create_app
from .journal import Session, enrich, parse_journal
from .metrics import metrics_text_table, report
from .pri import HistoryMode, apply_labels
from .risk import DEFAULT_ALERT_THRESHOLD, TradeProposal, check_risk
from .store import JournalStore
from .training import DEFAULT_GRID, TrainMode

_SESSIONS = {s.value: s for s in Session}
_HISTORY = {"full": HistoryMode.FULL_HISTORY, "causal": HistoryMode.CAUSAL_PREFIX}
_TRAIN = {"inclusive": TrainMode.INCLUSIVE_PREFIX, "causal": TrainMode.CAUSAL_PREFIX}


@click.group()
@click.option(
    "--data-dir",
    type=click.Path(path_type=Path),
    default=Path("sentinel_data"),
    envvar="TRADE_SENTINEL_DATA",
    show_default=True,
    help="Directory holding the journal CSV and run manifests.",
)
@click.pass_context
def main(ctx: click.Context, data_dir: Path):
    """Psychological risk engine for a personal trading journal."""
    ctx.obj = data_dir


def _store(ctx: click.Context) -> JournalStore:
    return JournalStore(ctx.obj / JOURNAL_FILENAME)


@main.command()
@click.argument("csv_path", type=click.Path(exists=True, path_type=Path))
@click.option("--lenient", is_flag=True, help="Map unknown sessions to New York instead of rejecting.")
@click.option("--start-balance", type=float, default=0.0, show_default=True)
@click.pass_context
def ingest(ctx: click.Context, csv_path: Path, lenient: bool, start_balance: float):
    """Parse a raw journal CSV, enrich it, label it causally, and store it."""
    records = parse_journal(csv_path.read_text(encoding="utf-8"), lenient=lenient)
    if not records:
        raise click.ClickException("journal has no data rows")
    labeled = apply_labels(enrich(records, start_balance), HistoryMode.CAUSAL_PREFIX)
    store = _store(ctx)
    store.replace_all(labeled)
    click.echo(f"ingested {len(labeled)} trades -> {store.path} (revision {store.revision})")


@main.command()
@click.option("--mode", type=click.Choice(sorted(_HISTORY)), default="causal", show_default=True)
@click.pass_context
def label(ctx: click.Context, mode: str):
    """Recompute PRI labels for the stored journal."""
    store = _store(ctx)
    if not store.records:
        raise click.ClickException("journal is empty; run ingest first")
    store.replace_all(apply_labels(store.records, _HISTORY[mode]))
    click.echo(f"labeled {store.revision} rows ({mode} history)")


@main.command()
@click.option("--grid", "grid_file", type=click.Path(exists=True, path_type=Path), default=None,
              help="JSON file with max_depth/min_samples_split/min_samples_leaf lists.")
@click.option("--mode", type=click.Choice(sorted(_TRAIN)), default="inclusive", show_default=True)
@click.option("--history", type=click.Choice(sorted(_HISTORY)), default=None,
              help="Label history mode; defaults to full for inclusive runs, causal otherwise.")
@click.pass_context
def train(ctx: click.Context, grid_file: Path, mode: str, history: str):
    """Grid-search hyperparameters chronologically and write the run manifest."""
    grid = DEFAULT_GRID if grid_file is None else json.loads(grid_file.read_text(encoding="utf-8"))
    try:
        manifest = pipeline.run_pipeline(
            _store(ctx),
            grid=grid,
            train_mode=_TRAIN[mode],
            history_mode=None if history is None else _HISTORY[history],
        )
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    hp = manifest.winner
    click.echo(
        f"winner: max_depth={hp.max_depth} min_samples_split={hp.min_samples_split} "
        f"min_samples_leaf={hp.min_samples_leaf} accuracy={manifest.accuracy:.4f}"
    )
    click.echo(f"manifest -> {manifest.out_dir}")


@main.command(name="eval")
@click.pass_context
def eval_cmd(ctx: click.Context):
    """Print the metrics report of the latest training run."""
    out_dir = ctx.obj / pipeline.MANIFEST_DIR_NAME
    payload = pipeline.load_artifact(out_dir, "metrics.json")
    if payload is None:
        raise click.ClickException("no training run found; run train first")
    cm = payload["confusion"]
    click.echo(metrics_text_table(report(cm), cm), nl=False)


@main.command()
@click.option("--max-rr", type=float, required=True)
@click.option("--session", type=click.Choice(sorted(_SESSIONS)), required=True)
@click.option("--threshold", type=int, default=DEFAULT_ALERT_THRESHOLD, show_default=True)
@click.pass_context
def predict(ctx: click.Context, max_rr: float, session: str, threshold: int):
    """Pre-trade risk check for a proposed trade."""
    store = _store(ctx)
    hp = pipeline.winning_hyperparams(ctx.obj / pipeline.MANIFEST_DIR_NAME) or DEFAULT_MODEL_HP
    alert = check_risk(
        store.records,
        TradeProposal(max_rr=max_rr, session=_SESSIONS[session]),
        threshold=threshold,
        model_hp=hp,
    )
    payload = alert.as_dict()
    payload["revision"] = store.revision
    click.echo(json.dumps(payload, indent=2))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--threshold", type=int, default=DEFAULT_ALERT_THRESHOLD, show_default=True)
@click.option("--static-dir", type=click.Path(path_type=Path), default=None,
              help="Directory of built console assets to serve at /.")
@click.pass_context
def serve(ctx: click.Context, host: str, port: int, threshold: int, static_dir: Path):
    """Run the HTTP API (and the web console, when built)."""
    import uvicorn

    if static_dir is None:
        candidate = Path("frontend") / "dist"
        static_dir = candidate if candidate.is_dir() else None
    app = create_app(ctx.obj, threshold=threshold, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
