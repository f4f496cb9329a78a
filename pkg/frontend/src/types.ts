// Wire types mirroring the service's response models.

export type SessionName = 'Asian' | 'London' | 'New York';
export type OutcomeCode = 'W' | 'L';

export interface EnrichedRow {
  index: number;
  max_rr: number;
  rs: number;
  outcome: OutcomeCode;
  session: SessionName;
  outcome_signed: number;
  streak: number;
  balance: number;
  session_asian: number;
  session_london: number;
  pri: number | null;
}

export interface JournalResponse {
  revision: number;
  rows: EnrichedRow[];
}

export interface AppendResponse {
  revision: number;
  row: EnrichedRow;
}

export interface RiskAlertResponse {
  revision: number;
  trade_context: { max_rr: number; session: SessionName };
  per_outcome_pri: { if_win: number; if_loss: number };
  worst_case_pri: number;
  fired_rules: string[];
  alert: boolean;
  threshold: number;
  model_pri: { if_win: number | null; if_loss: number | null };
}

export interface TreeNodeDoc {
  kind: 'leaf' | 'internal';
  counts: Record<string, number>;
  gini: number;
  depth: number;
  predicted?: number;
  feature?: string;
  threshold?: number;
  children?: TreeNodeDoc[];
}

export interface TreeResponse {
  revision: number;
  tree: TreeNodeDoc;
}

export interface ClassMetrics {
  precision: number;
  recall: number;
  f1: number;
  support: number;
}

export interface MetricsResponse {
  revision: number;
  confusion: number[][];
  accuracy: number;
  per_class: Record<string, ClassMetrics>;
  macro_precision: number;
  macro_recall: number;
  macro_f1: number;
}

export interface RocCurve {
  points: [number, number][];
  auc: number;
}

export interface RocResponse {
  revision: number;
  curves: Record<string, RocCurve | null>;
}

export interface GridRow {
  max_depth: number | null;
  min_samples_split: number;
  min_samples_leaf: number;
  accuracy: number;
}

export interface GridResponse {
  revision: number;
  table: GridRow[];
}

export interface HealthResponse {
  status: string;
  revision: number;
}
