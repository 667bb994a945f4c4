// Trailing-edge rate limiter and a latest-wins request gate for the level
// slider: drags fire at most every `intervalMs`, stale responses are
// discarded, and the final render always matches the final slider value.

export class Throttle {
  private last = -Infinity;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private pending: (() => void) | null = null;

  constructor(
    private readonly intervalMs: number,
    private readonly now: () => number = () => Date.now(),
  ) {}

  call(fn: () => void): void {
    const t = this.now();
    const due = this.last + this.intervalMs;
    if (t >= due) {
      this.last = t;
      fn();
      return;
    }
    this.pending = fn;
    if (this.timer === null) {
      this.timer = setTimeout(() => {
        this.timer = null;
        const run = this.pending;
        this.pending = null;
        if (run) {
          this.last = this.now();
          run();
        }
      }, due - t);
    }
  }
}

export class LatestWins<T> {
  private seq = 0;
  private delivered = 0;

  // Wraps a promise-producing request; resolves with null when a newer
  // request has already delivered (the stale response is dropped).
  async run(request: () => Promise<T>): Promise<T | null> {
    const ticket = ++this.seq;
    const value = await request();
    if (ticket < this.delivered) return null;
    this.delivered = ticket;
    return value;
  }
}
