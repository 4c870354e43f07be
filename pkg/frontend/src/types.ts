/** Wire document shapes returned by the analysis HTTP API. */

export interface ScoreDoc {
  total: number;
  cohesion: Record<string, number>;
  sync_cross: number;
  async_cross: number;
  granularity_penalty: number;
  duplication_penalty: number;
}

export interface SummaryDoc {
  id: string;
  classes: number;
  packages: number;
  contexts: string[];
  window_us: number;
  snapshot_windows: number[];
  edit_log_len: number;
  score: ScoreDoc;
}

export interface ContextMapEdgeDoc {
  from: string;
  to: string;
  static_weight: number;
  dynamic_weight: number;
  mode: "sync" | "async";
}

export interface ContextMapDoc {
  nodes: string[];
  edges: ContextMapEdgeDoc[];
}

export interface AmbiguityEntryDoc {
  package: string;
  contexts: string[];
  witnesses: string[];
}

export interface AmbiguitiesDoc {
  entries: AmbiguityEntryDoc[];
}

export interface SnapshotsDoc {
  window_us: number;
  windows: number[];
}

export interface LayoutBoxDoc {
  entity: string;
  kind: "package" | "class";
  x: number;
  z: number;
  width: number;
  depth: number;
  y_base: number;
  height: number;
  level: number;
  color: string;
}

export interface LayoutEdgeDoc {
  from: string;
  to: string;
  width_class: number;
  requests: number;
}

export interface LayoutDoc {
  window_start_us: number;
  boxes: LayoutBoxDoc[];
  edges: LayoutEdgeDoc[];
}

export interface SuggestionClusterDoc {
  id: string;
  members: string[];
}

export interface SuggestionsDoc {
  clusters: SuggestionClusterDoc[];
  modularity: number;
  deterministic: boolean;
}

export interface SharedTableDoc {
  table: string;
  contexts: string[];
  write_counts: Record<string, number>;
}

export interface SplitProposalDoc {
  table: string;
  overlap: number;
  projections: { context: string; columns: string[] }[];
}

export interface DataPartitionDoc {
  owned: Record<string, string>;
  shared: SharedTableDoc[];
  remainder: string[];
  proposals: SplitProposalDoc[];
}

export interface CouplingRowDoc {
  from: string;
  to: string;
  weight: number;
  mode: "sync" | "async";
}

export interface WhatifDoc {
  before: ScoreDoc;
  after: ScoreDoc;
  delta: number;
  coupling: CouplingRowDoc[];
}

export interface ErrorEnvelope {
  error: {
    code: string;
    message: string;
    detail: unknown;
  };
}

/** Boundary-edit operations, one wire shape per op. */

export interface MovePackageOp {
  op: "move_package";
  package: string;
  context: string;
}

export interface MarkAsyncOp {
  op: "mark_async";
  from: string;
  to: string;
}

export interface MergeOp {
  op: "merge";
  a: string;
  b: string;
  new_id: string;
}

export interface DivideOp {
  op: "divide";
  context: string;
  assign: Record<string, string>;
}

export interface DuplicateOp {
  op: "duplicate";
  package: string;
  targets: string[];
}

export interface SplitPackageOp {
  op: "split_package";
  package: string;
  assign: Record<string, string>;
}

export interface ExtractOp {
  op: "extract";
  new_context: string;
  classes: string[];
}

export type EditOp =
  | MovePackageOp
  | MarkAsyncOp
  | MergeOp
  | DivideOp
  | DuplicateOp
  | SplitPackageOp
  | ExtractOp;

export interface ProjectBundle {
  graph: string;
  domain: string;
  tables: string;
  traces?: string;
  window_us?: number;
}
