// Pointer-to-gaze mapping with hold-last semantics when the pointer leaves
// the viewport.

export interface Rect {
    left: number;
    top: number;
    width: number;
    height: number;
}

export interface Gaze {
    x: number;
    y: number;
}

export function pointerToGaze(clientX: number, clientY: number, rect: Rect): Gaze {
    const x = rect.width > 0 ? (clientX - rect.left) / rect.width : 0.5;
    const y = rect.height > 0 ? (clientY - rect.top) / rect.height : 0.5;
    return { x: Math.min(Math.max(x, 0), 1), y: Math.min(Math.max(y, 0), 1) };
}

export class GazeHold {
    private last: Gaze = { x: 0.5, y: 0.5 };

    /** Pass null when the pointer is outside the viewport: the last
     * in-viewport gaze is held. */
    update(gaze: Gaze | null): Gaze {
        if (gaze !== null) this.last = gaze;
        return this.last;
    }

    current(): Gaze {
        return this.last;
    }
}
