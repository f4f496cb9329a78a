// Single-page wiring: journal zone, what-if zone, model zone. API calls are
// de-duplicated per panel; server-owned data is never mutated locally.

import { ApiError, makeClient } from './api.js';
import {
  renderEmptyModel,
  renderGrid,
  renderJournal,
  renderMetrics,
  renderRoc,
  renderStaleNotice,
  renderWhatIf,
  renderWhatIfUnavailable,
  sortGrid,
  type GridSortKey,
} from './render.js';
import { renderTree } from './tree.js';
import type { GridRow, OutcomeCode, SessionName } from './types.js';

const client = makeClient();

const state = {
  journalRevision: 0,
  modelRevision: null as number | null,
  gridTable: null as GridRow[] | null,
  gridSortKey: 'accuracy' as GridSortKey,
  gridDescending: true,
  inFlight: new Set<string>(),
};

function panel(id: string): HTMLElement {
  const element = document.getElementById(id);
  if (!element) {
    throw new Error(`missing panel #${id}`);
  }
  return element;
}

async function withPanel(name: string, task: () => Promise<void>): Promise<void> {
  if (state.inFlight.has(name)) {
    return;
  }
  state.inFlight.add(name);
  try {
    await task();
  } finally {
    state.inFlight.delete(name);
  }
}

async function refreshJournal(): Promise<void> {
  await withPanel('journal', async () => {
    const journal = await client.journal();
    state.journalRevision = journal.revision;
    panel('journal-view').innerHTML = renderJournal(journal);
    panel('journal-revision').textContent = `revision ${journal.revision}`;
    refreshStaleNotices();
  });
}

function refreshStaleNotices(): void {
  const container = panel('model-stale');
  container.innerHTML =
    state.modelRevision === null
      ? ''
      : renderStaleNotice(state.modelRevision, state.journalRevision);
}

async function refreshModel(): Promise<void> {
  await withPanel('model', async () => {
    try {
      const [tree, metrics, roc, grid] = await Promise.all([
        client.tree(),
        client.metrics(),
        client.roc(),
        client.grid(),
      ]);
      state.modelRevision = tree.revision;
      state.gridTable = grid.table;
      panel('tree-view').innerHTML = renderTree(tree.tree, tree.revision);
      panel('metrics-view').innerHTML = renderMetrics(metrics);
      panel('roc-view').innerHTML = renderRoc(roc);
      renderGridPanel(grid.revision);
      refreshStaleNotices();
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        state.modelRevision = null;
        for (const id of ['tree-view', 'metrics-view', 'roc-view', 'grid-view']) {
          panel(id).innerHTML = renderEmptyModel();
        }
        refreshStaleNotices();
        return;
      }
      throw error;
    }
  });
}

function renderGridPanel(revision: number): void {
  if (!state.gridTable) {
    return;
  }
  panel('grid-view').innerHTML = renderGrid(
    revision,
    state.gridTable,
    state.gridSortKey,
    state.gridDescending,
  );
  for (const header of panel('grid-view').querySelectorAll<HTMLElement>('[data-sort]')) {
    header.addEventListener('click', () => {
      const key = header.dataset.sort as GridSortKey;
      if (key === state.gridSortKey) {
        state.gridDescending = !state.gridDescending;
      } else {
        state.gridSortKey = key;
        state.gridDescending = key === 'accuracy';
      }
      renderGridPanel(revision);
    });
  }
}

function formNumber(form: FormData, name: string): number {
  return Number(form.get(name));
}

function setupLogTradeForm(): void {
  const form = document.getElementById('log-trade-form') as HTMLFormElement;
  const errorBox = panel('log-trade-error');
  form.addEventListener('submit', async (event) => {
    event.preventDefault();
    errorBox.textContent = '';
    const data = new FormData(form);
    const maxRr = formNumber(data, 'max_rr');
    const rs = formNumber(data, 'rs');
    if (!Number.isFinite(maxRr) || maxRr < 0) {
      errorBox.textContent = 'Max RR must be a number ≥ 0.';
      return;
    }
    if (!Number.isFinite(rs)) {
      errorBox.textContent = 'Rs must be a number.';
      return;
    }
    try {
      await client.appendTrade({
        max_rr: maxRr,
        rs,
        outcome: data.get('outcome') as OutcomeCode,
        session: data.get('session') as SessionName,
      });
      form.reset();
      await refreshJournal();
    } catch (error) {
      if (error instanceof ApiError) {
        errorBox.textContent = `Rejected by server: ${JSON.stringify(error.detail)}`;
      } else {
        errorBox.textContent = 'Network failure — the trade was not logged. Try again.';
      }
    }
  });
}

function setupWhatIfForm(): void {
  const form = document.getElementById('what-if-form') as HTMLFormElement;
  form.addEventListener('submit', async (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const maxRr = formNumber(data, 'max_rr');
    if (!Number.isFinite(maxRr) || maxRr < 0) {
      panel('what-if-view').innerHTML = renderWhatIfUnavailable();
      return;
    }
    await withPanel('what-if', async () => {
      try {
        const alert = await client.checkRisk(maxRr, data.get('session') as SessionName);
        panel('what-if-view').innerHTML = renderWhatIf(alert);
      } catch {
        panel('what-if-view').innerHTML = renderWhatIfUnavailable();
      }
    });
  });
}

async function init(): Promise<void> {
  setupLogTradeForm();
  setupWhatIfForm();
  document.getElementById('refresh-model')?.addEventListener('click', () => {
    void refreshModel();
  });
  await refreshJournal();
  await refreshModel();
}

void init();
