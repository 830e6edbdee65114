/** Trailing-edge debouncer: the operation runs once, `delay` ms after the
 * last trigger.  Live readouts use 150 ms so they settle right after a drag
 * ends. */
export class Debouncer {
  private handles = new Map<string, ReturnType<typeof setTimeout>>();

  constructor(readonly delay = 150) {}

  trigger(key: string, op: () => void): void {
    const pending = this.handles.get(key);
    if (pending !== undefined) clearTimeout(pending);
    this.handles.set(
      key,
      setTimeout(() => {
        this.handles.delete(key);
        op();
      }, this.delay),
    );
  }

  cancel(key: string): void {
    const pending = this.handles.get(key);
    if (pending !== undefined) {
      clearTimeout(pending);
      this.handles.delete(key);
    }
  }
}
