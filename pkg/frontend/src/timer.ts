/**
 * Display countdown. Ticks locally for smoothness, snaps to the server's
 * remaining-seconds figure whenever a response supplies one, and decides
 * nothing: a timeout is whatever the server says it is.
 */

export type TickHandler = (remaining: number, healthFraction: number) => void;

export class Countdown {
  private deadline: number;
  private remaining: number;
  private handle: ReturnType<typeof setInterval> | null = null;
  private readonly onTick: TickHandler;

  constructor(deadlineSeconds: number, onTick: TickHandler) {
    this.deadline = deadlineSeconds;
    this.remaining = deadlineSeconds;
    this.onTick = onTick;
  }

  start(intervalMs = 250): void {
    this.stop();
    const step = intervalMs / 1000;
    this.handle = setInterval(() => {
      this.remaining = Math.max(0, this.remaining - step);
      this.emit();
    }, intervalMs);
    this.emit();
  }

  /** Snap to the server's figure; server time always wins. */
  reconcile(serverRemaining: number | null): void {
    if (serverRemaining === null) return;
    this.remaining = Math.max(0, serverRemaining);
    this.emit();
  }

  stop(): void {
    if (this.handle !== null) {
      clearInterval(this.handle);
      this.handle = null;
    }
  }

  get current(): number {
    return this.remaining;
  }

  private emit(): void {
    const fraction = this.deadline > 0 ? this.remaining / this.deadline : 0;
    this.onTick(this.remaining, Math.max(0, Math.min(1, fraction)));
  }
}
