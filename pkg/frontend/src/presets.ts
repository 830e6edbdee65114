import type { CurveSpec } from "./types.js";
import { SQRT2 } from "./types.js";

const SHEET = { width: 1.0, length: SQRT2 };

export const PRESETS: Record<string, CurveSpec> = {
  circle: { family: "sine-arc", params: {}, sheet: { ...SHEET } },
  rectangle: { family: "rectangle", params: { h: 0.192489 }, sheet: { ...SHEET } },
  rhombus: { family: "rhombus", params: { h: 0.30547 }, sheet: { ...SHEET } },
  arc: { family: "arc", params: { theta: 1.047 }, sheet: { ...SHEET } },
  "quad-bezier": {
    family: "quad-bezier",
    params: { a: 0.2, b: 0.15, h: 0.2 },
    sheet: { ...SHEET },
  },
  "cubic-bezier": {
    family: "cubic-bezier",
    params: { a: 0.1, b: 0.08, c: 0.25, d: 0.2, h: 0.2 },
    sheet: { ...SHEET },
  },
  polyline: {
    family: "polyline",
    params: {
      // scaled sine heights at i/16, editable node count kept small
      heights: Array.from({ length: 8 }, (_, i) =>
        (0.8 * Math.sin((Math.PI * (i + 1)) / 16)) / Math.PI,
      ),
      symmetric: true,
    },
    sheet: { ...SHEET },
  },
};
