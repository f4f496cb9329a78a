// Pure HTML renderers. Every value displayed is taken verbatim from an API
// response; nothing here recomputes risk, metrics, or curves.

import type {
  EnrichedRow,
  GridRow,
  JournalResponse,
  MetricsResponse,
  RiskAlertResponse,
  RocResponse,
} from './types.js';

export const PRI_SCALE_MAX = 3;

// Fixed copy per fired-rule identifier; 1:1, no client inference.
export const RULE_COPY: Record<string, string> = {
  streak_run: 'Win/loss streak at 3 or more',
  oversized_prior_rr: 'Previous trade RR above 22.5',
  worst_loss_session: 'Session with most historical losses',
};

export function escapeHtml(value: unknown): string {
  return String(value)
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;');
}

export function priBadge(pri: number | null): string {
  if (pri === null) {
    return '<span class="badge badge-unlabeled">–</span>';
  }
  return `<span class="badge badge-pri-${pri}">${pri}</span>`;
}

function journalRow(row: EnrichedRow): string {
  return `<tr>
    <td>${row.index}</td>
    <td>${escapeHtml(row.session)}</td>
    <td>${row.max_rr}</td>
    <td>${row.rs}</td>
    <td class="${row.outcome === 'W' ? 'win' : 'loss'}">${row.outcome}</td>
    <td>${row.streak}</td>
    <td>${row.balance}</td>
    <td>${priBadge(row.pri)}</td>
  </tr>`;
}

export function renderJournal(journal: JournalResponse): string {
  if (journal.rows.length === 0) {
    return '<p class="empty-state" data-revision="0">No trades logged yet.</p>';
  }
  const body = journal.rows.map(journalRow).join('\n');
  return `<table class="journal-table" data-revision="${journal.revision}">
    <thead><tr>
      <th>#</th><th>Session</th><th>Max RR</th><th>Rs</th>
      <th>W/L</th><th>Streak</th><th>Balance</th><th>PRI</th>
    </tr></thead>
    <tbody>${body}</tbody>
  </table>`;
}

export function renderWhatIf(alert: RiskAlertResponse): string {
  // gauge value is the API's worst_case_pri, verbatim
  const worst = alert.worst_case_pri;
  const explanations = alert.fired_rules
    .map((rule) => `<li data-rule="${escapeHtml(rule)}">${escapeHtml(RULE_COPY[rule] ?? rule)}</li>`)
    .join('\n');
  const banner = alert.alert
    ? `<div class="alert-banner">⚠ Psychological risk alert: worst-case PRI ${worst} (threshold ${alert.threshold})</div>`
    : '<div class="alert-ok">No alert at the configured threshold.</div>';
  const modelLine =
    alert.model_pri.if_win === null
      ? '<p class="model-pri">Model predictions unavailable (empty journal).</p>'
      : `<p class="model-pri">Model predicts PRI ${alert.model_pri.if_win} if won, ${alert.model_pri.if_loss} if lost.</p>`;
  const coldStart =
    alert.revision === 0
      ? '<p class="cold-start-note">Cold start: with no history, the loss census tie-break elects the Asian session.</p>'
      : '';
  return `<div class="what-if-result" data-revision="${alert.revision}" data-worst-case="${worst}">
    ${banner}
    <div class="gauge">
      <span class="gauge-value">${worst}</span><span class="gauge-scale">/ ${PRI_SCALE_MAX}</span>
    </div>
    <p class="per-outcome">PRI if win: ${alert.per_outcome_pri.if_win} · PRI if loss: ${alert.per_outcome_pri.if_loss}</p>
    <ul class="fired-rules">${explanations || '<li class="none">No rules fired.</li>'}</ul>
    ${modelLine}
    ${coldStart}
  </div>`;
}

export function renderWhatIfUnavailable(): string {
  return '<div class="what-if-result unavailable">Risk check unavailable — the service could not be reached.</div>';
}

function heatCell(value: number, total: number): string {
  const intensity = total > 0 ? value / total : 0;
  return `<td class="heat" style="--heat:${intensity.toFixed(3)}">${value}</td>`;
}

export function renderMetrics(metrics: MetricsResponse): string {
  const total = metrics.confusion.flat().reduce((a, b) => a + b, 0);
  const header = ['', '0', '1', '2'].map((h) => `<th>${h}</th>`).join('');
  const rows = metrics.confusion
    .map(
      (row, k) =>
        `<tr><th>${k}</th>${row.map((v) => heatCell(v, total)).join('')}</tr>`,
    )
    .join('\n');
  const cards = [
    ['Accuracy', metrics.accuracy],
    ['Macro precision', metrics.macro_precision],
    ['Macro recall', metrics.macro_recall],
    ['Macro F1', metrics.macro_f1],
  ]
    .map(
      ([name, value]) =>
        `<div class="scorecard"><span class="scorecard-name">${name}</span><span class="scorecard-value">${(value as number).toFixed(4)}</span></div>`,
    )
    .join('\n');
  return `<div class="metrics" data-revision="${metrics.revision}">
    <div class="scorecards">${cards}</div>
    <table class="confusion"><caption>Confusion matrix (rows true, cols predicted)</caption>
      <thead><tr>${header}</tr></thead><tbody>${rows}</tbody></table>
  </div>`;
}

const ROC_COLORS: Record<string, string> = { '0': '#2563eb', '1': '#d97706', '2': '#dc2626' };

export function renderRoc(roc: RocResponse, size = 220): string {
  const pad = 24;
  const scale = (v: number) => pad + v * (size - 2 * pad);
  const flip = (v: number) => size - pad - v * (size - 2 * pad);
  const lines = Object.entries(roc.curves)
    .map(([klass, curve]) => {
      if (curve === null) {
        return `<text x="${pad}" y="${pad + 14 * Number(klass)}" class="roc-undefined">class ${klass}: undefined</text>`;
      }
      const points = curve.points
        .map(([fpr, tpr]) => `${scale(fpr).toFixed(1)},${flip(tpr).toFixed(1)}`)
        .join(' ');
      return `<polyline data-roc-class="${klass}" points="${points}" fill="none" stroke="${ROC_COLORS[klass] ?? '#333'}" stroke-width="2"/>
        <text x="${size - pad - 60}" y="${pad + 14 * (Number(klass) + 1)}" fill="${ROC_COLORS[klass] ?? '#333'}">class ${klass} AUC ${curve.auc.toFixed(3)}</text>`;
    })
    .join('\n');
  return `<svg class="roc-chart" data-revision="${roc.revision}" viewBox="0 0 ${size} ${size}" width="${size}" height="${size}">
    <line x1="${pad}" y1="${size - pad}" x2="${size - pad}" y2="${pad}" stroke="#bbb" stroke-dasharray="4 3"/>
    <rect x="${pad}" y="${pad}" width="${size - 2 * pad}" height="${size - 2 * pad}" fill="none" stroke="#888"/>
    ${lines}
  </svg>`;
}

export type GridSortKey = keyof GridRow;

export function sortGrid(table: GridRow[], key: GridSortKey, descending: boolean): GridRow[] {
  const sorted = [...table].sort((a, b) => {
    const left = a[key] ?? Number.POSITIVE_INFINITY;
    const right = b[key] ?? Number.POSITIVE_INFINITY;
    return left === right ? 0 : left < right ? -1 : 1;
  });
  return descending ? sorted.reverse() : sorted;
}

export function renderGrid(
  revision: number,
  table: GridRow[],
  sortKey: GridSortKey = 'accuracy',
  descending = true,
): string {
  const rows = sortGrid(table, sortKey, descending)
    .map(
      (row) => `<tr>
        <td>${row.max_depth ?? '∞'}</td>
        <td>${row.min_samples_split}</td>
        <td>${row.min_samples_leaf}</td>
        <td>${row.accuracy.toFixed(4)}</td>
      </tr>`,
    )
    .join('\n');
  const arrow = (key: GridSortKey) =>
    key === sortKey ? (descending ? ' ▾' : ' ▴') : '';
  return `<table class="grid-table" data-revision="${revision}">
    <thead><tr>
      <th data-sort="max_depth">max_depth${arrow('max_depth')}</th>
      <th data-sort="min_samples_split">min_samples_split${arrow('min_samples_split')}</th>
      <th data-sort="min_samples_leaf">min_samples_leaf${arrow('min_samples_leaf')}</th>
      <th data-sort="accuracy">accuracy${arrow('accuracy')}</th>
    </tr></thead>
    <tbody>${rows}</tbody>
  </table>`;
}

export function renderEmptyModel(): string {
  return '<p class="empty-state">No training run yet — run <code>trade-sentinel train</code> to build the model views.</p>';
}

export function renderStaleNotice(panelRevision: number, journalRevision: number): string {
  if (panelRevision === journalRevision) {
    return '';
  }
  return `<div class="stale-notice" data-stale="true">
    Trained at revision ${panelRevision}, journal is at ${journalRevision} — retrain to refresh.
  </div>`;
}
