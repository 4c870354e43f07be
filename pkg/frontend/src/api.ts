/** Typed client for the analysis HTTP API. All numbers are passed through
 * verbatim; the workbench never recomputes scores on its own.
 */

import type {
  AmbiguitiesDoc,
  ContextMapDoc,
  DataPartitionDoc,
  EditOp,
  ErrorEnvelope,
  LayoutDoc,
  ProjectBundle,
  ScoreDoc,
  SnapshotsDoc,
  SuggestionsDoc,
  SummaryDoc,
  WhatifDoc,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail: unknown;

  constructor(status: number, code: string, message: string, detail: unknown) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
    this.detail = detail;
  }
}

export interface ApiClientOptions {
  baseUrl?: string;
  fetchImpl?: FetchLike;
}

const API_ROOT = "/api/v1";

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(options: ApiClientOptions = {}) {
    this.baseUrl = (options.baseUrl ?? "").replace(/\/$/, "");
    const impl = options.fetchImpl ?? globalThis.fetch;
    if (impl === undefined) {
      throw new Error("no fetch implementation available");
    }
    this.fetchImpl = impl;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.baseUrl}${API_ROOT}${path}`, init);
    if (!response.ok) {
      throw await toApiError(response);
    }
    return (await response.json()) as T;
  }

  createProject(bundle: ProjectBundle): Promise<{ id: string }> {
    return this.request("POST", "/projects", bundle);
  }

  summary(projectId: string): Promise<SummaryDoc> {
    return this.request("GET", `/projects/${projectId}`);
  }

  contextMap(projectId: string): Promise<ContextMapDoc> {
    return this.request("GET", `/projects/${projectId}/contextmap`);
  }

  ambiguities(projectId: string): Promise<AmbiguitiesDoc> {
    return this.request("GET", `/projects/${projectId}/ambiguities`);
  }

  snapshots(projectId: string): Promise<SnapshotsDoc> {
    return this.request("GET", `/projects/${projectId}/snapshots`);
  }

  layout(projectId: string, windowStartUs: number): Promise<LayoutDoc> {
    return this.request("GET", `/projects/${projectId}/snapshots/${windowStartUs}/layout`);
  }

  suggestions(projectId: string): Promise<SuggestionsDoc> {
    return this.request("GET", `/projects/${projectId}/suggestions`);
  }

  dataPartition(projectId: string): Promise<DataPartitionDoc> {
    return this.request("GET", `/projects/${projectId}/datapartition`);
  }

  whatif(projectId: string, edits: EditOp[]): Promise<WhatifDoc> {
    return this.request("POST", `/projects/${projectId}/whatif`, { edits });
  }

  commit(projectId: string, edits: EditOp[], expectedLogLen: number): Promise<ScoreDoc> {
    return this.request("POST", `/projects/${projectId}/edits`, {
      edits,
      expected_log_len: expectedLogLen,
    });
  }
}

async function toApiError(response: Response): Promise<ApiError> {
  let code = "error";
  let message = `request failed with status ${response.status}`;
  let detail: unknown = null;
  try {
    const envelope = (await response.json()) as ErrorEnvelope;
    if (envelope && typeof envelope.error === "object" && envelope.error !== null) {
      code = envelope.error.code ?? code;
      message = envelope.error.message ?? message;
      detail = envelope.error.detail ?? null;
    }
  } catch {
    // non-JSON body: keep the status-derived message
  }
  return new ApiError(response.status, code, message, detail);
}
