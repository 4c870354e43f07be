/** Pure projection from a layout document to renderer-agnostic scene
 * geometry. The layout supplies footprints (x, z, width, depth) and vertical
 * extent (y_base, height); this module turns them into centered boxes and
 * edge polylines without touching any rendering library.
 */

import type { LayoutDoc } from "./types.js";

export type Vec3 = readonly [number, number, number];

export interface SceneBox {
  entity: string;
  kind: "package" | "class";
  center: Vec3;
  size: Vec3;
  color: string;
}

export interface SceneEdge {
  from: string;
  to: string;
  points: readonly [Vec3, Vec3];
  strokeWidth: number;
  requests: number;
}

export interface SceneSpec {
  windowStartUs: number;
  boxes: SceneBox[];
  edges: SceneEdge[];
}

/** Stroke width per width class 1..4, strictly increasing. */
export const STROKE_WIDTHS: readonly number[] = [0.05, 0.12, 0.25, 0.5];

export const EDGE_COLOR = "orange";

export function strokeWidth(widthClass: number): number {
  if (!Number.isInteger(widthClass) || widthClass < 1 || widthClass > STROKE_WIDTHS.length) {
    throw new RangeError(`width class out of range: ${widthClass}`);
  }
  return STROKE_WIDTHS[widthClass - 1];
}

export function projectLayout(layout: LayoutDoc): SceneSpec {
  const topCenters = new Map<string, Vec3>();
  const boxes: SceneBox[] = layout.boxes.map((box) => {
    if (topCenters.has(box.entity)) {
      throw new Error(`duplicate layout box: ${box.entity}`);
    }
    const cx = box.x + box.width / 2;
    const cz = box.z + box.depth / 2;
    topCenters.set(box.entity, [cx, box.y_base + box.height, cz]);
    return {
      entity: box.entity,
      kind: box.kind,
      center: [cx, box.y_base + box.height / 2, cz],
      size: [box.width, box.height, box.depth],
      color: box.color,
    };
  });
  const edges: SceneEdge[] = layout.edges.map((edge) => {
    const from = topCenters.get(edge.from);
    const to = topCenters.get(edge.to);
    if (from === undefined || to === undefined) {
      throw new Error(`edge endpoint missing from layout: ${edge.from} -> ${edge.to}`);
    }
    return {
      from: edge.from,
      to: edge.to,
      points: [from, to],
      strokeWidth: strokeWidth(edge.width_class),
      requests: edge.requests,
    };
  });
  return { windowStartUs: layout.window_start_us, boxes, edges };
}
