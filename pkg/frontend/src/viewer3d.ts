import type { MeshPayload } from "./types.js";

interface Tri {
  depth: number;
  xs: [number, number, number];
  ys: [number, number, number];
  shade: number;
}

/** Orbit projection of a point for a given yaw/pitch/zoom; returns screen
 * x, y and view depth. */
export function project(
  x: number,
  y: number,
  z: number,
  yaw: number,
  pitch: number,
  zoom: number,
  width: number,
  height: number,
): [number, number, number] {
  const cy = Math.cos(yaw);
  const sy = Math.sin(yaw);
  const cp = Math.cos(pitch);
  const sp = Math.sin(pitch);
  const rx = cy * x + sy * y;
  const ry = -sy * x + cy * y;
  const rz = z;
  const vy = cp * ry - sp * rz;
  const vz = sp * ry + cp * rz;
  const scale = zoom * Math.min(width, height) * 0.55;
  return [width / 2 + rx * scale, height / 2 - vz * scale, vy];
}

/**
 * Minimal flat-shaded mesh viewer: painter-sorted triangles on a 2D canvas,
 * pointer drag orbits, wheel zooms.  No numeric readouts live here.
 */
export class MeshViewer {
  yaw = 0.7;
  pitch = 0.45;
  zoom = 1.0;
  private mesh: MeshPayload | null = null;
  private center: [number, number, number] = [0, 0, 0];
  private dragFrom: [number, number] | null = null;
  private ctx: CanvasRenderingContext2D | null;
  onViewChange: (() => void) | null = null;

  constructor(readonly canvas: HTMLCanvasElement) {
    this.ctx = canvas.getContext ? canvas.getContext("2d") : null;
    canvas.addEventListener("pointerdown", (e) => {
      this.dragFrom = [e.clientX, e.clientY];
    });
    canvas.addEventListener("pointermove", (e) => {
      if (!this.dragFrom) return;
      this.yaw += (e.clientX - this.dragFrom[0]) * 0.01;
      this.pitch += (e.clientY - this.dragFrom[1]) * 0.01;
      this.pitch = Math.max(-1.55, Math.min(1.55, this.pitch));
      this.dragFrom = [e.clientX, e.clientY];
      this.paint();
      this.onViewChange?.();
    });
    const stop = () => {
      this.dragFrom = null;
    };
    canvas.addEventListener("pointerup", stop);
    canvas.addEventListener("pointerleave", stop);
    canvas.addEventListener("wheel", (e) => {
      e.preventDefault();
      this.zoom *= Math.exp(-e.deltaY * 0.001);
      this.zoom = Math.max(0.2, Math.min(6, this.zoom));
      this.paint();
      this.onViewChange?.();
    });
  }

  setMesh(mesh: MeshPayload): void {
    this.mesh = mesh;
    const v = mesh.vertices;
    if (v.length >= 3) {
      let sx = 0;
      let sy = 0;
      let sz = 0;
      const n = v.length / 3;
      for (let i = 0; i < v.length; i += 3) {
        sx += v[i];
        sy += v[i + 1];
        sz += v[i + 2];
      }
      this.center = [sx / n, sy / n, sz / n];
    }
    this.paint();
  }

  /** Projected triangles, painter-sorted far-to-near (exposed for tests). */
  projected(): Tri[] {
    if (!this.mesh) return [];
    const { vertices, triangles } = this.mesh;
    const { width, height } = this.canvas;
    const light = [0.4, -0.5, 0.77];
    const out: Tri[] = [];
    for (let t = 0; t < triangles.length; t += 3) {
      const idx = [triangles[t], triangles[t + 1], triangles[t + 2]];
      const px: number[] = [];
      const py: number[] = [];
      let depth = 0;
      const corners: number[][] = [];
      for (const i of idx) {
        const x = vertices[3 * i] - this.center[0];
        const y = vertices[3 * i + 1] - this.center[1];
        const z = vertices[3 * i + 2] - this.center[2];
        corners.push([x, y, z]);
        const [sx, sy, d] = project(
          x, y, z, this.yaw, this.pitch, this.zoom, width, height);
        px.push(sx);
        py.push(sy);
        depth += d / 3;
      }
      const ux = corners[1].map((c, i) => c - corners[0][i]);
      const vx = corners[2].map((c, i) => c - corners[0][i]);
      const n = [
        ux[1] * vx[2] - ux[2] * vx[1],
        ux[2] * vx[0] - ux[0] * vx[2],
        ux[0] * vx[1] - ux[1] * vx[0],
      ];
      const len = Math.hypot(n[0], n[1], n[2]) || 1;
      const lambert =
        Math.abs(n[0] * light[0] + n[1] * light[1] + n[2] * light[2]) / len;
      out.push({
        depth,
        xs: [px[0], px[1], px[2]],
        ys: [py[0], py[1], py[2]],
        shade: 0.35 + 0.6 * lambert,
      });
    }
    out.sort((a, b) => a.depth - b.depth);
    return out;
  }

  paint(): void {
    const ctx = this.ctx;
    if (!ctx) return;
    const { width, height } = this.canvas;
    ctx.clearRect(0, 0, width, height);
    for (const tri of this.projected()) {
      const c = Math.round(200 * tri.shade + 30);
      ctx.fillStyle = `rgb(${Math.round(c * 0.75)}, ${Math.round(c * 0.85)}, ${c})`;
      ctx.strokeStyle = ctx.fillStyle;
      ctx.beginPath();
      ctx.moveTo(tri.xs[0], tri.ys[0]);
      ctx.lineTo(tri.xs[1], tri.ys[1]);
      ctx.lineTo(tri.xs[2], tri.ys[2]);
      ctx.closePath();
      ctx.fill();
      ctx.stroke();
    }
  }
}
