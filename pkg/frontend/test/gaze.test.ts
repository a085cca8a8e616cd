import assert from "node:assert/strict";
import { test } from "node:test";

import { GazeHold, pointerToGaze } from "../src/gaze.js";

const RECT = { left: 100, top: 50, width: 800, height: 600 };

test("pointer at viewport center maps to (0.5, 0.5)", () => {
    const g = pointerToGaze(100 + 400, 50 + 300, RECT);
    assert.deepEqual(g, { x: 0.5, y: 0.5 });
});

test("pointer outside the rect clamps into [0,1]", () => {
    assert.deepEqual(pointerToGaze(0, 0, RECT), { x: 0, y: 0 });
    assert.deepEqual(pointerToGaze(2000, 2000, RECT), { x: 1, y: 1 });
});

test("gaze holds the last value when the pointer leaves", () => {
    const hold = new GazeHold();
    hold.update({ x: 0.3, y: 0.7 });
    const held = hold.update(null);
    assert.deepEqual(held, { x: 0.3, y: 0.7 });
    assert.deepEqual(hold.current(), { x: 0.3, y: 0.7 });
});

test("degenerate rect falls back to the center", () => {
    const g = pointerToGaze(10, 10, { left: 0, top: 0, width: 0, height: 0 });
    assert.deepEqual(g, { x: 0.5, y: 0.5 });
});
