import type {
  CurveSpec,
  MeshPayload,
  OptimizePayload,
  ProfilePayload,
  ValidationReport,
  VolumePayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly reason: string,
  ) {
    super(`api ${status}: ${reason}`);
  }
}

/** Result of a sequenced call: `stale` means a newer request in the same
 * category finished first and this response must be discarded. */
export type Sequenced<T> = { stale: true } | { stale: false; body: T };

/**
 * Client for the pillowfold HTTP service.
 *
 * Each endpoint category keeps a monotone request counter; a response is
 * surfaced only if no newer request in that category has been issued, so the
 * displayed volume/validity always corresponds to the latest curve.
 */
export class ApiClient {
  private counters = new Map<string, number>();
  private latest = new Map<string, number>();
  onConnectionChange: ((ok: boolean) => void) | null = null;

  constructor(public baseUrl = "") {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    let resp: Response;
    try {
      resp = await fetch(this.baseUrl + path, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      });
    } catch (err) {
      this.onConnectionChange?.(false);
      throw err;
    }
    this.onConnectionChange?.(true);
    if (!resp.ok && resp.status !== 408) {
      let reason = resp.statusText;
      try {
        const payload = (await resp.json()) as { reason?: string; error?: string };
        reason = payload.reason ?? payload.error ?? reason;
      } catch {
        /* opaque body */
      }
      throw new ApiError(resp.status, reason);
    }
    return (await resp.json()) as T;
  }

  /** Issue a request in `category`, dropping the response if it is stale. */
  private async sequenced<T>(
    category: string,
    path: string,
    body: unknown,
  ): Promise<Sequenced<T>> {
    const seq = (this.counters.get(category) ?? 0) + 1;
    this.counters.set(category, seq);
    const result = await this.post<T>(path, body);
    const newest = this.counters.get(category) ?? seq;
    if (seq < newest) return { stale: true };
    this.latest.set(category, seq);
    return { stale: false, body: result };
  }

  validate(spec: CurveSpec, samples = 2000): Promise<Sequenced<ValidationReport>> {
    return this.sequenced("validate", "/api/validate", { ...spec, samples });
  }

  volume(spec: CurveSpec, n = 2000): Promise<Sequenced<VolumePayload>> {
    return this.sequenced("volume", "/api/volume", { ...spec, n });
  }

  profile(spec: CurveSpec, n = 400): Promise<Sequenced<ProfilePayload>> {
    return this.sequenced("profile", "/api/profile", { ...spec, n });
  }

  fold(
    spec: CurveSpec,
    resolution = 120,
    theta1: number | null = null,
    wallDepth = 0,
  ): Promise<Sequenced<MeshPayload>> {
    const body: Record<string, unknown> = { ...spec, resolution };
    if (theta1 !== null) {
      body.theta1 = theta1;
      body.wall_depth = wallDepth;
    }
    return this.sequenced("fold", "/api/fold", body);
  }

  optimize(body: Record<string, unknown>): Promise<OptimizePayload> {
    return this.post<OptimizePayload>("/api/optimize", body);
  }

  async exportObj(spec: CurveSpec, resolution = 1000): Promise<string> {
    const resp = await fetch(this.baseUrl + "/api/export/obj", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ ...spec, resolution }),
    });
    if (!resp.ok) throw new ApiError(resp.status, await resp.text());
    return resp.text();
  }

  async exportPattern(spec: CurveSpec, scaleMm = 100): Promise<string> {
    const resp = await fetch(this.baseUrl + "/api/export/pattern", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ ...spec, scale_mm: scaleMm }),
    });
    if (!resp.ok) throw new ApiError(resp.status, await resp.text());
    return resp.text();
  }

  async healthz(): Promise<boolean> {
    try {
      const resp = await fetch(this.baseUrl + "/healthz");
      return resp.ok;
    } catch {
      return false;
    }
  }
}
