/** Workbench session: one open project, a timeline selection, a pending edit
 * batch, and the latest what-if preview. Commits use optimistic concurrency
 * via the edit-log length reported by the server.
 */

import type { ApiClient } from "./api.js";
import { deltaPanelModel, type DeltaPanelModel } from "./deltapanel.js";
import { projectLayout, type SceneSpec } from "./scene.js";
import { selectWindow, timelineFromSnapshots, type TimelineState } from "./timeline.js";
import type { EditOp, ProjectBundle, ScoreDoc, SummaryDoc, WhatifDoc } from "./types.js";
import { validateEditBatch, type EditInventory } from "./validate.js";

export class WorkbenchSession {
  private readonly client: ApiClient;
  private projectId: string | null = null;
  private editLogLen = 0;
  private contexts: string[] = [];
  private timelineState: TimelineState = { windowUs: 0, windows: [], selected: null };
  private pendingEdits: EditOp[] = [];
  private lastWhatif: WhatifDoc | null = null;

  constructor(client: ApiClient) {
    this.client = client;
  }

  /** Create (or re-open) the project and load the current scene; returns it. */
  async open(bundle: ProjectBundle): Promise<SceneSpec | null> {
    const { id } = await this.client.createProject(bundle);
    this.projectId = id;
    const summary = await this.client.summary(id);
    this.applySummary(summary);
    this.timelineState = timelineFromSnapshots(await this.client.snapshots(id));
    if (this.timelineState.selected === null) {
      return null;
    }
    return this.loadScene(this.timelineState.selected);
  }

  private applySummary(summary: SummaryDoc): void {
    this.contexts = summary.contexts;
    this.editLogLen = summary.edit_log_len;
  }

  private async loadScene(windowStartUs: number): Promise<SceneSpec> {
    const id = this.requireProject();
    return projectLayout(await this.client.layout(id, windowStartUs));
  }

  private requireProject(): string {
    if (this.projectId === null) {
      throw new Error("no project open");
    }
    return this.projectId;
  }

  get id(): string | null {
    return this.projectId;
  }

  get timeline(): TimelineState {
    return this.timelineState;
  }

  get batch(): readonly EditOp[] {
    return this.pendingEdits;
  }

  get preview(): DeltaPanelModel | null {
    return this.lastWhatif === null ? null : deltaPanelModel(this.lastWhatif);
  }

  /** Move the timeline selection and rebuild the scene for that window. */
  async selectTimelineWindow(windowStartUs: number): Promise<SceneSpec> {
    this.timelineState = selectWindow(this.timelineState, windowStartUs);
    return this.loadScene(windowStartUs);
  }

  /** Contexts are the only id space the summary reports completely, so the
   * client-side check stays free of false positives; package and class
   * mistakes surface as server rejections instead.
   */
  inventory(): EditInventory {
    return { contexts: this.contexts };
  }

  addEdit(edit: EditOp): void {
    this.pendingEdits.push(edit);
    this.lastWhatif = null;
  }

  removeEdit(index: number): void {
    this.pendingEdits.splice(index, 1);
    this.lastWhatif = null;
  }

  clearBatch(): void {
    this.pendingEdits = [];
    this.lastWhatif = null;
  }

  batchIssues(): string[] {
    return validateEditBatch(this.pendingEdits, this.inventory());
  }

  canCommit(): boolean {
    return this.projectId !== null && this.pendingEdits.length > 0 && this.batchIssues().length === 0;
  }

  /** Ask the server to score the pending batch without applying it. */
  async previewBatch(): Promise<DeltaPanelModel> {
    const id = this.requireProject();
    this.lastWhatif = await this.client.whatif(id, this.pendingEdits);
    return deltaPanelModel(this.lastWhatif);
  }

  /** Apply the pending batch; on success the batch is cleared. */
  async commitBatch(): Promise<ScoreDoc> {
    if (!this.canCommit()) {
      throw new Error("pending batch is empty or invalid");
    }
    const id = this.requireProject();
    const score = await this.client.commit(id, this.pendingEdits, this.editLogLen);
    this.applySummary(await this.client.summary(id));
    this.clearBatch();
    return score;
  }

  /** Re-read the summary, e.g. after a concurrent-edit conflict. */
  async refresh(): Promise<void> {
    this.applySummary(await this.client.summary(this.requireProject()));
  }
}
