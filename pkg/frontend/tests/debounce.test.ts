import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { Debouncer } from "../src/debounce.js";

describe("Debouncer", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("fires once, delay ms after the last trigger", () => {
    const debouncer = new Debouncer(150);
    const op = vi.fn();
    debouncer.trigger("k", op);
    vi.advanceTimersByTime(100);
    debouncer.trigger("k", op);
    vi.advanceTimersByTime(100);
    debouncer.trigger("k", op);
    expect(op).not.toHaveBeenCalled();
    vi.advanceTimersByTime(149);
    expect(op).not.toHaveBeenCalled();
    vi.advanceTimersByTime(1);
    expect(op).toHaveBeenCalledTimes(1);
  });

  it("keeps keys independent", () => {
    const debouncer = new Debouncer(150);
    const a = vi.fn();
    const b = vi.fn();
    debouncer.trigger("a", a);
    debouncer.trigger("b", b);
    vi.advanceTimersByTime(150);
    expect(a).toHaveBeenCalledTimes(1);
    expect(b).toHaveBeenCalledTimes(1);
  });

  it("readout delay stays within the 150 ms budget", () => {
    const debouncer = new Debouncer(150);
    expect(debouncer.delay).toBeLessThanOrEqual(150);
  });

  it("cancel drops the pending run", () => {
    const debouncer = new Debouncer(150);
    const op = vi.fn();
    debouncer.trigger("k", op);
    debouncer.cancel("k");
    vi.advanceTimersByTime(300);
    expect(op).not.toHaveBeenCalled();
  });
});
