import { describe, expect, it } from "vitest";

import { STROKE_WIDTHS, projectLayout, strokeWidth } from "../src/scene.js";
import type { LayoutDoc } from "../src/types.js";
import { loadFixture } from "./helpers.js";

function syntheticLayout(): LayoutDoc {
  const entities = ["p.A", "p.B", "p.C", "p.D", "p.E"];
  return {
    window_start_us: 0,
    boxes: entities.map((entity, i) => ({
      entity,
      kind: "class",
      x: 2 * i,
      z: 0,
      width: 1,
      depth: 1,
      y_base: 0,
      height: 1,
      level: 0,
      color: "purple",
    })),
    edges: [
      { from: "p.A", to: "p.B", width_class: 1, requests: 5 },
      { from: "p.B", to: "p.C", width_class: 2, requests: 42 },
      { from: "p.C", to: "p.D", width_class: 3, requests: 500 },
      { from: "p.D", to: "p.E", width_class: 4, requests: 5000 },
    ],
  };
}

describe("stroke widths", () => {
  it("grow strictly with the width class", () => {
    expect(STROKE_WIDTHS).toHaveLength(4);
    for (let i = 1; i < STROKE_WIDTHS.length; i += 1) {
      expect(STROKE_WIDTHS[i]).toBeGreaterThan(STROKE_WIDTHS[i - 1]);
    }
    expect(strokeWidth(4)).toBeGreaterThan(strokeWidth(1));
  });

  it("order the projected edges from thin to thick", () => {
    const spec = projectLayout(syntheticLayout());
    const widths = spec.edges.map((edge) => edge.strokeWidth);
    expect(widths).toEqual([...STROKE_WIDTHS]);
    for (let i = 1; i < widths.length; i += 1) {
      expect(widths[i]).toBeGreaterThan(widths[i - 1]);
    }
  });

  it("map every fixture edge through the width-class table", () => {
    for (const name of ["layout_w0.json", "layout_w1.json", "layout_w2.json"]) {
      const layout = loadFixture<LayoutDoc>(name);
      const spec = projectLayout(layout);
      layout.edges.forEach((edge, i) => {
        expect(spec.edges[i].strokeWidth).toBe(STROKE_WIDTHS[edge.width_class - 1]);
      });
    }
  });

  it("reject width classes outside 1..4", () => {
    expect(() => strokeWidth(0)).toThrow(RangeError);
    expect(() => strokeWidth(5)).toThrow(RangeError);
    expect(() => strokeWidth(1.5)).toThrow(RangeError);
  });
});
