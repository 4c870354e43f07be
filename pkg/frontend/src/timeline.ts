/** Timeline over the snapshot windows of a project. Selection defaults to
 * the latest window; picking another window is what drives a scene rebuild.
 */

import type { SnapshotsDoc } from "./types.js";

export interface TimelineState {
  windowUs: number;
  windows: readonly number[];
  selected: number | null;
}

export function timelineFromSnapshots(doc: SnapshotsDoc): TimelineState {
  const windows = [...doc.windows].sort((a, b) => a - b);
  return {
    windowUs: doc.window_us,
    windows,
    selected: windows.length > 0 ? windows[windows.length - 1] : null,
  };
}

export function selectWindow(state: TimelineState, windowStartUs: number): TimelineState {
  if (!state.windows.includes(windowStartUs)) {
    throw new RangeError(`unknown snapshot window: ${windowStartUs}`);
  }
  return { ...state, selected: windowStartUs };
}

/** Label shown on the tick: index plus offset in seconds from the first window. */
export function windowLabel(state: TimelineState, windowStartUs: number): string {
  const index = state.windows.indexOf(windowStartUs);
  if (index < 0) {
    throw new RangeError(`unknown snapshot window: ${windowStartUs}`);
  }
  const offsetSeconds = (windowStartUs - state.windows[0]) / 1_000_000;
  return `w${index} +${offsetSeconds}s`;
}
