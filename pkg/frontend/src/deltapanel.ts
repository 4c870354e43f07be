/** View model for the what-if result panel. Every number comes straight from
 * the server document; this module only reshapes for display and never
 * recomputes a score or a delta.
 */

import type { CouplingRowDoc, WhatifDoc } from "./types.js";

export interface CohesionChange {
  context: string;
  before: number | null;
  after: number | null;
}

export interface DeltaPanelModel {
  beforeTotal: number;
  afterTotal: number;
  delta: number;
  changedCohesion: CohesionChange[];
  coupling: CouplingRowDoc[];
}

export function deltaPanelModel(doc: WhatifDoc): DeltaPanelModel {
  const contexts = new Set([...Object.keys(doc.before.cohesion), ...Object.keys(doc.after.cohesion)]);
  const changedCohesion: CohesionChange[] = [];
  for (const context of [...contexts].sort()) {
    const before = context in doc.before.cohesion ? doc.before.cohesion[context] : null;
    const after = context in doc.after.cohesion ? doc.after.cohesion[context] : null;
    if (before !== after) {
      changedCohesion.push({ context, before, after });
    }
  }
  return {
    beforeTotal: doc.before.total,
    afterTotal: doc.after.total,
    delta: doc.delta,
    changedCohesion,
    coupling: doc.coupling,
  };
}

export function formatSigned(value: number, digits = 6): string {
  const text = value.toFixed(digits);
  return value >= 0 ? `+${text}` : text;
}
