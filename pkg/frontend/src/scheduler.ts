// Slider storms produce bursts of input events; the scheduler coalesces them
// (150 ms debounce) and hands each fired request a sequence number so late
// responses from superseded requests are never rendered.

export type TimerHandle = ReturnType<typeof setTimeout>;

export interface TimerApi {
  set(fn: () => void, ms: number): TimerHandle;
  clear(handle: TimerHandle): void;
}

const realTimers: TimerApi = {
  set: (fn, ms) => setTimeout(fn, ms),
  clear: (handle) => clearTimeout(handle),
};

export const DEBOUNCE_MS = 150;

export class RequestScheduler {
  private pending: TimerHandle | null = null;
  private issued = 0;

  constructor(
    private readonly fire: (seq: number) => void,
    private readonly delayMs: number = DEBOUNCE_MS,
    private readonly timers: TimerApi = realTimers,
  ) {}

  /** Schedule a request; earlier unfired requests are replaced. */
  request(): void {
    if (this.pending !== null) {
      this.timers.clear(this.pending);
    }
    this.pending = this.timers.set(() => {
      this.pending = null;
      this.issued += 1;
      this.fire(this.issued);
    }, this.delayMs);
  }

  /** True iff seq belongs to the newest fired request (render gate). */
  isCurrent(seq: number): boolean {
    return seq === this.issued;
  }
}
