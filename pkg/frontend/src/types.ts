export interface SheetSpec {
  width: number;
  length: number;
}

export interface CurveSpec {
  family: string;
  params: Record<string, unknown>;
  sheet: SheetSpec;
}

export interface ValidationReport {
  valid: boolean;
  max_abs_slope: number;
  max_tangent_angle: number;
  violations: [number, number][];
  n_samples: number;
  reason?: string | null;
}

export interface VolumePayload {
  value: number;
  method: string;
  n: number;
}

export interface ProfilePayload {
  x: number[];
  z: number[];
  width: number;
  height: number;
}

export interface MeshPayload {
  vertices: number[];
  triangles: number[];
  part_labels: string[];
  watertight: boolean;
}

export interface OptimizePayload {
  family: string;
  params: number[];
  volume: number;
  iterations: number;
  converged: boolean;
  max_violation: number;
  budget_exceeded: boolean;
}

export const SQRT2 = Math.SQRT2;

export function cloneSpec(spec: CurveSpec): CurveSpec {
  return JSON.parse(JSON.stringify(spec)) as CurveSpec;
}

export function specsEqual(a: CurveSpec, b: CurveSpec): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}
