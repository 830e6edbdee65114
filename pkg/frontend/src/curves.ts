import type { CurveSpec } from "./types.js";

/** Display-side curve sampling (shape drawing and drag animation only; every
 * displayed number still comes from the service). */

function quadPoint(a: number, b: number, h: number, t: number): [number, number] {
  const mt = 1 - t;
  return [2 * a * mt * t + 0.5 * t * t, 2 * b * mt * t + h * t * t];
}

function cubicPoint(
  a: number,
  b: number,
  c: number,
  d: number,
  h: number,
  t: number,
): [number, number] {
  const mt = 1 - t;
  return [
    3 * mt * mt * t * a + 3 * mt * t * t * c + 0.5 * t ** 3,
    3 * mt * mt * t * b + 3 * mt * t * t * d + t ** 3 * h,
  ];
}

/** Sample the development curve as (u, v) pairs covering u in [0, 1]. */
export function sampleCurve(spec: CurveSpec, n = 240): [number, number][] {
  const p = spec.params as Record<string, number>;
  const pts: [number, number][] = [];
  const family = spec.family;
  if (family === "quad-bezier" || family === "cubic-bezier") {
    const half: [number, number][] = [];
    for (let i = 0; i <= n / 2; i++) {
      const t = i / (n / 2);
      half.push(
        family === "quad-bezier"
          ? quadPoint(p.a, p.b, p.h, t)
          : cubicPoint(p.a, p.b, p.c, p.d, p.h, t),
      );
    }
    for (const [u, v] of half) pts.push([u, v]);
    for (let i = half.length - 2; i >= 0; i--) {
      const [u, v] = half[i];
      pts.push([1 - u, v]);
    }
    return pts;
  }
  if (family === "polyline") {
    const heights = (spec.params.heights as number[]) ?? [];
    const symmetric = (spec.params.symmetric as boolean) ?? true;
    if (symmetric) {
      const m = heights.length;
      for (let i = 0; i <= m; i++) pts.push([i / (2 * m), i === 0 ? 0 : heights[i - 1]]);
      for (let i = m - 1; i >= 0; i--)
        pts.push([1 - i / (2 * m), i === 0 ? 0 : heights[i - 1]]);
    } else {
      const m = heights.length;
      pts.push([0, 0]);
      for (let i = 0; i < m; i++) pts.push([(i + 1) / (m + 1), heights[i]]);
      pts.push([1, 0]);
    }
    return pts;
  }
  for (let i = 0; i <= n; i++) {
    const u = i / n;
    let v = 0;
    if (family === "sine-arc") v = Math.sin(Math.PI * u) / Math.PI;
    else if (family === "rectangle") v = Math.min(u, 1 - u, p.h);
    else if (family === "rhombus") v = 2 * p.h * Math.min(u, 1 - u);
    else if (family === "arc")
      v = (Math.cos(p.theta * (2 * u - 1)) - Math.cos(p.theta)) / (2 * p.theta);
    pts.push([u, v]);
  }
  return pts;
}

export interface Handle {
  /** dotted path into params, e.g. ["a","b"] moves both coordinates */
  id: string;
  u: number;
  v: number;
  dragU: boolean; // may the u-coordinate move?
}

/** Draggable handles for the editable families (empty = read-only family). */
export function handlesFor(spec: CurveSpec): Handle[] {
  const p = spec.params as Record<string, number>;
  if (spec.family === "quad-bezier") {
    return [
      { id: "p1", u: p.a, v: p.b, dragU: true },
      { id: "apex", u: 0.5, v: p.h, dragU: false },
    ];
  }
  if (spec.family === "cubic-bezier") {
    return [
      { id: "p1", u: p.a, v: p.b, dragU: true },
      { id: "p2", u: p.c, v: p.d, dragU: true },
      { id: "apex", u: 0.5, v: p.h, dragU: false },
    ];
  }
  if (spec.family === "polyline") {
    const heights = (spec.params.heights as number[]) ?? [];
    const symmetric = (spec.params.symmetric as boolean) ?? true;
    const m = heights.length;
    return heights.map((h, i) => ({
      id: `node${i}`,
      u: symmetric ? (i + 1) / (2 * m) : (i + 1) / (m + 1),
      v: h,
      dragU: false,
    }));
  }
  return [];
}

const clamp = (x: number, lo: number, hi: number) => Math.min(hi, Math.max(lo, x));

/** Apply a handle move, returning an updated spec (bounds clamped). */
export function moveHandle(
  spec: CurveSpec,
  id: string,
  u: number,
  v: number,
): CurveSpec {
  const next = JSON.parse(JSON.stringify(spec)) as CurveSpec;
  const p = next.params as Record<string, number>;
  v = clamp(v, 0, 0.5);
  if (next.family === "quad-bezier" || next.family === "cubic-bezier") {
    if (id === "p1") {
      p.a = clamp(u, 1e-6, 0.5 - 1e-6);
      p.b = v;
    } else if (id === "p2" && next.family === "cubic-bezier") {
      p.c = clamp(u, 1e-6, 0.5 - 1e-6);
      p.d = v;
    } else if (id === "apex") {
      p.h = v;
    }
    return next;
  }
  if (next.family === "polyline") {
    const heights = (next.params.heights as number[]).slice();
    const index = Number(id.replace("node", ""));
    if (index >= 0 && index < heights.length) heights[index] = v;
    next.params.heights = heights;
    return next;
  }
  return next;
}

/** Parameter vector in optimizer order, for optimize-from-here. */
export function paramVector(spec: CurveSpec): number[] | null {
  const p = spec.params as Record<string, number>;
  if (spec.family === "quad-bezier") return [p.a, p.b, p.h];
  if (spec.family === "cubic-bezier") return [p.a, p.b, p.c, p.d, p.h];
  if (spec.family === "polyline") return (spec.params.heights as number[]).slice();
  return null;
}

/** Rebuild a spec from an optimizer parameter vector. */
export function specFromVector(spec: CurveSpec, vector: number[]): CurveSpec {
  const next = JSON.parse(JSON.stringify(spec)) as CurveSpec;
  if (spec.family === "quad-bezier") {
    const [a, b, h] = vector;
    next.params = { a, b, h };
  } else if (spec.family === "cubic-bezier") {
    const [a, b, c, d, h] = vector;
    next.params = { a, b, c, d, h };
  } else if (spec.family === "polyline") {
    next.params = { heights: vector.slice(), symmetric: true };
  }
  return next;
}
