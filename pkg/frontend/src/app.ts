/** Browser bootstrap: wires the session to the DOM and renders the city view
 * with three.js. Expects the element ids defined in index.html.
 */

import * as THREE from "three";

import { buildSceneGraph } from "./adapter.js";
import { ApiClient } from "./api.js";
import { formatSigned, type DeltaPanelModel } from "./deltapanel.js";
import type { SceneSpec } from "./scene.js";
import { WorkbenchSession } from "./session.js";
import { windowLabel } from "./timeline.js";
import type { ProjectBundle } from "./types.js";
import { parseEditBatchText } from "./validate.js";

function element<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

class CityView {
  private readonly renderer: THREE.WebGLRenderer;
  private readonly camera: THREE.PerspectiveCamera;
  private readonly scene: THREE.Scene;
  private cityGroup: THREE.Group | null = null;

  constructor(canvas: HTMLCanvasElement) {
    this.renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
    this.renderer.setSize(canvas.clientWidth, canvas.clientHeight, false);
    this.camera = new THREE.PerspectiveCamera(50, canvas.clientWidth / canvas.clientHeight, 0.1, 500);
    this.scene = new THREE.Scene();
    this.scene.background = new THREE.Color("#f4f4f4");
    this.scene.add(new THREE.AmbientLight(0xffffff, 0.6));
    const sun = new THREE.DirectionalLight(0xffffff, 1.2);
    sun.position.set(30, 60, 20);
    this.scene.add(sun);
  }

  show(spec: SceneSpec): void {
    if (this.cityGroup !== null) {
      this.scene.remove(this.cityGroup);
    }
    this.cityGroup = buildSceneGraph(spec);
    this.scene.add(this.cityGroup);
    const bounds = new THREE.Box3().setFromObject(this.cityGroup);
    const center = bounds.getCenter(new THREE.Vector3());
    const size = bounds.getSize(new THREE.Vector3());
    const radius = Math.max(size.x, size.z, 1);
    this.camera.position.set(center.x + radius, radius * 1.2, center.z + radius);
    this.camera.lookAt(center);
    this.renderer.render(this.scene, this.camera);
  }
}

async function readFile(input: HTMLInputElement): Promise<string | null> {
  const file = input.files?.[0];
  if (file === undefined) {
    return null;
  }
  return file.text();
}

function renderDeltaPanel(target: HTMLElement, model: DeltaPanelModel | null): void {
  if (model === null) {
    target.textContent = "no preview yet";
    return;
  }
  const lines = [
    `total ${model.beforeTotal.toFixed(6)} -> ${model.afterTotal.toFixed(6)} (${formatSigned(model.delta)})`,
  ];
  for (const change of model.changedCohesion) {
    lines.push(
      `cohesion ${change.context}: ${change.before?.toFixed(6) ?? "-"} -> ${change.after?.toFixed(6) ?? "-"}`,
    );
  }
  for (const row of model.coupling) {
    lines.push(`coupling ${row.from} -> ${row.to}: ${row.weight.toFixed(6)} [${row.mode}]`);
  }
  target.textContent = lines.join("\n");
}

export async function startWorkbench(): Promise<void> {
  const client = new ApiClient({ baseUrl: element<HTMLBodyElement>("workbench").dataset.api ?? "" });
  const session = new WorkbenchSession(client);
  const view = new CityView(element<HTMLCanvasElement>("city-canvas"));
  const timelineBar = element<HTMLDivElement>("timeline");
  const batchInput = element<HTMLTextAreaElement>("batch-input");
  const issuesOut = element<HTMLPreElement>("batch-issues");
  const deltaOut = element<HTMLPreElement>("delta-panel");
  const statusOut = element<HTMLSpanElement>("status");
  const previewButton = element<HTMLButtonElement>("preview-button");
  const commitButton = element<HTMLButtonElement>("commit-button");
  let parseErrors: string[] = [];

  const refreshTimeline = () => {
    timelineBar.replaceChildren();
    const timeline = session.timeline;
    for (const start of timeline.windows) {
      const button = document.createElement("button");
      button.textContent = windowLabel(timeline, start);
      button.disabled = start === timeline.selected;
      button.addEventListener("click", () => {
        void session.selectTimelineWindow(start).then((spec) => {
          view.show(spec);
          refreshTimeline();
        });
      });
      timelineBar.append(button);
    }
  };

  const refreshBatchState = () => {
    const issues = [...parseErrors, ...session.batchIssues()];
    issuesOut.textContent = issues.length > 0 ? issues.join("\n") : "batch ok";
    const enabled = parseErrors.length === 0 && session.canCommit();
    commitButton.disabled = !enabled;
    previewButton.disabled = !enabled;
  };

  batchInput.addEventListener("input", () => {
    session.clearBatch();
    const text = batchInput.value.trim();
    if (text === "") {
      parseErrors = [];
    } else {
      const { edits, errors } = parseEditBatchText(text);
      parseErrors = errors;
      for (const edit of edits) {
        session.addEdit(edit);
      }
    }
    renderDeltaPanel(deltaOut, null);
    refreshBatchState();
  });

  previewButton.addEventListener("click", () => {
    void session
      .previewBatch()
      .then((model) => renderDeltaPanel(deltaOut, model))
      .catch((exc: Error) => {
        deltaOut.textContent = `preview failed: ${exc.message}`;
      });
  });

  commitButton.addEventListener("click", () => {
    void session
      .commitBatch()
      .then((score) => {
        statusOut.textContent = `committed; total ${score.total.toFixed(6)}`;
        batchInput.value = "";
        parseErrors = [];
        renderDeltaPanel(deltaOut, null);
        refreshBatchState();
      })
      .catch((exc: Error) => {
        statusOut.textContent = `commit failed: ${exc.message}`;
        void session.refresh();
      });
  });

  element<HTMLButtonElement>("open-button").addEventListener("click", () => {
    void (async () => {
      const graph = await readFile(element<HTMLInputElement>("graph-file"));
      const domain = await readFile(element<HTMLInputElement>("domain-file"));
      const tables = await readFile(element<HTMLInputElement>("tables-file"));
      const traces = await readFile(element<HTMLInputElement>("traces-file"));
      if (graph === null || domain === null || tables === null) {
        statusOut.textContent = "graph, domain, and tables files are required";
        return;
      }
      const bundle: ProjectBundle = { graph, domain, tables };
      if (traces !== null) {
        bundle.traces = traces;
      }
      try {
        const spec = await session.open(bundle);
        statusOut.textContent = `project ${session.id ?? "?"} open`;
        if (spec !== null) {
          view.show(spec);
        }
        refreshTimeline();
        refreshBatchState();
      } catch (exc) {
        statusOut.textContent = `open failed: ${(exc as Error).message}`;
      }
    })();
  });

  refreshBatchState();
}

if (typeof document !== "undefined" && document.getElementById("workbench") !== null) {
  void startWorkbench();
}
