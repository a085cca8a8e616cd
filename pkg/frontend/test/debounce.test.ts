import assert from "node:assert/strict";
import { test } from "node:test";

import { LatestWins } from "../src/debounce.js";

/** Deterministic clock + timer queue. */
class FakeTime {
    nowMs = 0;
    private queue: { at: number; fn: () => void }[] = [];

    now = (): number => this.nowMs;

    timer = (fn: () => void, ms: number): void => {
        this.queue.push({ at: this.nowMs + ms, fn });
    };

    async advance(ms: number): Promise<void> {
        const target = this.nowMs + ms;
        for (;;) {
            this.queue.sort((a, b) => a.at - b.at);
            const next = this.queue[0];
            if (!next || next.at > target) break;
            this.queue.shift();
            this.nowMs = next.at;
            next.fn();
            await drainMicrotasks();
        }
        this.nowMs = target;
        await drainMicrotasks();
    }
}

async function drainMicrotasks(): Promise<void> {
    for (let i = 0; i < 20; i++) await Promise.resolve();
}

test("latest submission wins and rate stays at or under the cap", async () => {
    const time = new FakeTime();
    const ran: number[] = [];
    const lw = new LatestWins<number>(15, async (v) => {
        ran.push(v);
    }, time.now, time.timer);

    for (let i = 0; i < 100; i++) {
        lw.submit(i);
        await time.advance(1); // 1000 submissions/s
    }
    await time.advance(200);
    assert.equal(ran[ran.length - 1], 99); // final state rendered
    // 100 ms of input + trailing: at 15/s the scheduler may start at most
    // ceil(300ms / 66.6ms) + 1 runs
    assert.ok(ran.length <= 6, `ran ${ran.length} times`);
    // intermediate values were skipped, not queued
    assert.ok(ran.length < 100);
});

test("only one request is in flight at a time", async () => {
    const time = new FakeTime();
    let active = 0;
    let peak = 0;
    const lw = new LatestWins<number>(1000, async () => {
        active += 1;
        peak = Math.max(peak, active);
        await drainMicrotasks();
        active -= 1;
    }, time.now, time.timer);
    for (let i = 0; i < 10; i++) lw.submit(i);
    await time.advance(50);
    assert.equal(peak, 1);
});

test("a failing run does not wedge the scheduler", async () => {
    const time = new FakeTime();
    const ran: number[] = [];
    let first = true;
    const lw = new LatestWins<number>(100, async (v) => {
        if (first) {
            first = false;
            throw new Error("boom");
        }
        ran.push(v);
    }, time.now, time.timer);
    lw.submit(1);
    await time.advance(5);
    lw.submit(2);
    await time.advance(100);
    assert.deepEqual(ran, [2]);
    assert.equal(lw.busy, false);
});
