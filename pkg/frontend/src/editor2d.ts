import { handlesFor, moveHandle, sampleCurve } from "./curves.js";
import type { Handle } from "./curves.js";
import type { CurveSpec, ValidationReport } from "./types.js";

const HIT_RADIUS_PX = 12;

/**
 * Canvas editor over the development rectangle: the crease curve with its
 * draggable control points / polyline nodes.  Regions where the slope bound
 * is violated are highlighted from the latest validation report, so
 * infeasibility is visible while dragging.
 */
export class CurveEditor {
  spec: CurveSpec;
  violations: [number, number][] = [];
  valid = true;
  onEdit: ((spec: CurveSpec) => void) | null = null;
  onDragEnd: ((spec: CurveSpec) => void) | null = null;

  private dragging: Handle | null = null;
  private ctx: CanvasRenderingContext2D | null;

  constructor(
    readonly canvas: HTMLCanvasElement,
    spec: CurveSpec,
  ) {
    this.spec = spec;
    this.ctx = canvas.getContext ? canvas.getContext("2d") : null;
    canvas.addEventListener("pointerdown", (e) => this.pointerDown(e));
    canvas.addEventListener("pointermove", (e) => this.pointerMove(e));
    canvas.addEventListener("pointerup", (e) => this.pointerUp(e));
    canvas.addEventListener("pointerleave", (e) => this.pointerUp(e));
  }

  setSpec(spec: CurveSpec): void {
    this.spec = spec;
    this.paint();
  }

  setValidation(report: ValidationReport): void {
    this.valid = report.valid;
    this.violations = report.violations;
    this.paint();
  }

  /** Curve-space (u, v) -> canvas pixels; v axis points up. */
  toPixels(u: number, v: number): [number, number] {
    const w = this.canvas.width;
    const h = this.canvas.height;
    const margin = 24;
    return [
      margin + u * (w - 2 * margin),
      h - margin - v * (w - 2 * margin),
    ];
  }

  toCurve(px: number, py: number): [number, number] {
    const w = this.canvas.width;
    const h = this.canvas.height;
    const margin = 24;
    return [
      (px - margin) / (w - 2 * margin),
      (h - margin - py) / (w - 2 * margin),
    ];
  }

  hitTest(px: number, py: number): Handle | null {
    for (const handle of handlesFor(this.spec)) {
      const [hx, hy] = this.toPixels(handle.u, handle.v);
      if (Math.hypot(px - hx, py - hy) <= HIT_RADIUS_PX) return handle;
    }
    return null;
  }

  private eventPos(e: PointerEvent): [number, number] {
    const rect = this.canvas.getBoundingClientRect();
    return [e.clientX - rect.left, e.clientY - rect.top];
  }

  pointerDown(e: PointerEvent): void {
    const [px, py] = this.eventPos(e);
    this.dragging = this.hitTest(px, py);
    if (this.dragging && this.canvas.setPointerCapture) {
      try {
        this.canvas.setPointerCapture(e.pointerId);
      } catch {
        /* jsdom has no pointer capture */
      }
    }
  }

  pointerMove(e: PointerEvent): void {
    if (!this.dragging) return;
    const [px, py] = this.eventPos(e);
    const [u, v] = this.toCurve(px, py);
    const moved = moveHandle(
      this.spec,
      this.dragging.id,
      this.dragging.dragU ? u : this.dragging.u,
      v,
    );
    this.spec = moved;
    this.onEdit?.(moved);
    this.paint();
  }

  pointerUp(_e: PointerEvent): void {
    if (!this.dragging) return;
    this.dragging = null;
    this.onDragEnd?.(this.spec);
  }

  paint(): void {
    const ctx = this.ctx;
    if (!ctx) return; // headless environment
    const { width, height } = this.canvas;
    ctx.clearRect(0, 0, width, height);

    // development baseline and midline
    ctx.strokeStyle = "#ccc";
    ctx.lineWidth = 1;
    ctx.beginPath();
    const [x0, y0] = this.toPixels(0, 0);
    const [x1] = this.toPixels(1, 0);
    ctx.moveTo(x0, y0);
    ctx.lineTo(x1, y0);
    ctx.stroke();

    const pts = sampleCurve(this.spec);

    // violation highlight under the curve
    for (const [lo, hi] of this.violations) {
      ctx.strokeStyle = "rgba(220, 40, 40, 0.9)";
      ctx.lineWidth = 5;
      ctx.beginPath();
      let started = false;
      for (const [u, v] of pts) {
        if (u < lo - 1e-9 || u > hi + 1e-9) continue;
        const [px, py] = this.toPixels(u, v);
        if (!started) {
          ctx.moveTo(px, py);
          started = true;
        } else ctx.lineTo(px, py);
      }
      ctx.stroke();
    }

    // the crease curve
    ctx.strokeStyle = this.valid ? "#1565c0" : "#b71c1c";
    ctx.lineWidth = 2;
    ctx.beginPath();
    pts.forEach(([u, v], i) => {
      const [px, py] = this.toPixels(u, v);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.stroke();

    // handles
    for (const handle of handlesFor(this.spec)) {
      const [px, py] = this.toPixels(handle.u, handle.v);
      ctx.fillStyle = "#fff";
      ctx.strokeStyle = "#444";
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      ctx.arc(px, py, 5, 0, 2 * Math.PI);
      ctx.fill();
      ctx.stroke();
    }
  }
}
