// Typed client for the sentinel service. The console performs no risk
// computation of its own; everything rendered comes from these calls.

import type {
  AppendResponse,
  GridResponse,
  HealthResponse,
  JournalResponse,
  MetricsResponse,
  OutcomeCode,
  RiskAlertResponse,
  RocResponse,
  SessionName,
  TreeResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: unknown,
  ) {
    super(`HTTP ${status}`);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, {
    headers: { Accept: 'application/json', 'Content-Type': 'application/json' },
    ...init,
  });
  if (!response.ok) {
    let detail: unknown = null;
    try {
      detail = (await response.json()).detail;
    } catch {
      // non-JSON error body
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export interface TradeInput {
  max_rr: number;
  rs: number;
  outcome: OutcomeCode;
  session: SessionName;
  expected_revision?: number;
}

export function makeClient(base = '') {
  return {
    health: () => request<HealthResponse>(`${base}/api/health`),
    journal: () => request<JournalResponse>(`${base}/api/journal`),
    appendTrade: (trade: TradeInput) =>
      request<AppendResponse>(`${base}/api/trades`, {
        method: 'POST',
        body: JSON.stringify(trade),
      }),
    checkRisk: (maxRr: number, session: SessionName) =>
      request<RiskAlertResponse>(`${base}/api/check-risk`, {
        method: 'POST',
        body: JSON.stringify({ max_rr: maxRr, session }),
      }),
    tree: () => request<TreeResponse>(`${base}/api/tree`),
    metrics: () => request<MetricsResponse>(`${base}/api/metrics`),
    roc: () => request<RocResponse>(`${base}/api/roc`),
    grid: () => request<GridResponse>(`${base}/api/grid`),
  };
}

export type Client = ReturnType<typeof makeClient>;
