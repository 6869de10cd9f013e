/**
 * Display countdown. Ticks locally for smoothness, snaps to the server's
 * remaining-seconds figure whenever a response supplies one, and decides
 * nothing: a timeout is whatever the server says it is.
 */
export class Countdown {
    deadline;
    remaining;
    handle = null;
    onTick;
    constructor(deadlineSeconds, onTick) {
        this.deadline = deadlineSeconds;
        this.remaining = deadlineSeconds;
        this.onTick = onTick;
    }
    start(intervalMs = 250) {
        this.stop();
        const step = intervalMs / 1000;
        this.handle = setInterval(() => {
            this.remaining = Math.max(0, this.remaining - step);
            this.emit();
        }, intervalMs);
        this.emit();
    }
    /** Snap to the server's figure; server time always wins. */
    reconcile(serverRemaining) {
        if (serverRemaining === null)
            return;
        this.remaining = Math.max(0, serverRemaining);
        this.emit();
    }
    stop() {
        if (this.handle !== null) {
            clearInterval(this.handle);
            this.handle = null;
        }
    }
    get current() {
        return this.remaining;
    }
    emit() {
        const fraction = this.deadline > 0 ? this.remaining / this.deadline : 0;
        this.onTick(this.remaining, Math.max(0, Math.min(1, fraction)));
    }
}
