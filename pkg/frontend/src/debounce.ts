// Latest-wins scheduling for render requests: at most one request in
// flight, at most `maxPerSecond` starts per second, and whatever was
// submitted last always renders eventually.

export type Clock = () => number;
export type Timer = (fn: () => void, ms: number) => void;

export class LatestWins<T> {
    private pending: { value: T } | null = null;
    private inFlight = false;
    private timerArmed = false;
    private lastStart = -Infinity;
    private readonly minInterval: number;

    constructor(
        maxPerSecond: number,
        private readonly run: (value: T) => Promise<void>,
        private readonly now: Clock = () => Date.now(),
        private readonly timer: Timer = (fn, ms) => setTimeout(fn, ms)
    ) {
        this.minInterval = 1000 / maxPerSecond;
    }

    submit(value: T): void {
        this.pending = { value };
        this.pump();
    }

    get busy(): boolean {
        return this.inFlight || this.pending !== null;
    }

    private pump(): void {
        if (this.inFlight || this.pending === null) return;
        const wait = this.lastStart + this.minInterval - this.now();
        if (wait > 0) {
            if (!this.timerArmed) {
                this.timerArmed = true;
                this.timer(() => {
                    this.timerArmed = false;
                    this.pump();
                }, wait);
            }
            return;
        }
        const value = this.pending.value;
        this.pending = null;
        this.inFlight = true;
        this.lastStart = this.now();
        this.run(value)
            .catch(() => undefined)
            .then(() => {
                this.inFlight = false;
                this.pump();
            });
    }
}
