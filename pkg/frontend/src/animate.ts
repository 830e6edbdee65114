/** Linear parameter-vector animation for the optimize-from-here transition.
 * Interpolation only; no volumes or validity are computed here. */
export function animateVector(
  from: number[],
  to: number[],
  durationMs: number,
  onFrame: (vector: number[], t: number) => void,
  onDone: () => void,
): void {
  const start = Date.now();
  const raf: (cb: () => void) => void =
    typeof requestAnimationFrame === "function"
      ? (cb) => requestAnimationFrame(() => cb())
      : (cb) => setTimeout(cb, 16);

  const step = () => {
    const t = durationMs <= 0 ? 1 : Math.min(1, (Date.now() - start) / durationMs);
    const eased = t * (2 - t); // ease-out
    onFrame(
      from.map((v, i) => v + (to[i] - v) * eased),
      t,
    );
    if (t >= 1) onDone();
    else raf(step);
  };
  step();
}
