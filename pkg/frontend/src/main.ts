// Panel wiring: schema -> controls -> render requests, with mouse-driven
// gaze and latest-wins request scheduling.

import { ServiceClient, ServiceError } from "./client.js";
import {
    applyProfileDoc,
    buildControls,
    setEnabled,
    setParam,
    toProfileDoc,
    type ControlTree,
} from "./controls.js";
import { LatestWins } from "./debounce.js";
import { GazeHold, pointerToGaze } from "./gaze.js";
import type { RenderRequestBody } from "./types.js";

type GazeMode = "mouse" | "fixed" | "scripted";

interface PanelState {
    tree: ControlTree | null;
    imageB64: string | null;
    gazeMode: GazeMode;
    fixedGaze: { x: number; y: number };
    timeOrigin: number;
    scriptedPath: { t: number; x: number; y: number }[];
}

const client = new ServiceClient("..");
const state: PanelState = {
    tree: null,
    imageB64: null,
    gazeMode: "mouse",
    fixedGaze: { x: 0.5, y: 0.5 },
    timeOrigin: performance.now(),
    scriptedPath: [],
};
const gazeHold = new GazeHold();

const $ = <T extends HTMLElement>(id: string): T => document.getElementById(id) as T;

function sessionTime(): number {
    return (performance.now() - state.timeOrigin) / 1000;
}

function currentGaze(): { x: number; y: number } {
    if (state.gazeMode === "fixed") return state.fixedGaze;
    if (state.gazeMode === "scripted" && state.scriptedPath.length > 0) {
        const t = sessionTime() % Math.max(state.scriptedPath[state.scriptedPath.length - 1].t, 1e-6);
        let prev = state.scriptedPath[0];
        for (const p of state.scriptedPath) {
            if (p.t >= t) {
                const span = p.t - prev.t;
                const f = span > 0 ? (t - prev.t) / span : 0;
                return { x: prev.x + f * (p.x - prev.x), y: prev.y + f * (p.y - prev.y) };
            }
            prev = p;
        }
        return { x: prev.x, y: prev.y };
    }
    return gazeHold.current();
}

const scheduler = new LatestWins<RenderRequestBody>(15, async (body) => {
    try {
        const result = await client.render(body);
        const blob = new Blob([result.bytes.buffer as ArrayBuffer], { type: result.contentType });
        const url = URL.createObjectURL(blob);
        const img = $<HTMLImageElement>("viewport-image");
        const old = img.src;
        img.src = url;
        if (old.startsWith("blob:")) URL.revokeObjectURL(old);
        $("latency").textContent = `${result.millis.toFixed(0)} ms`;
        setStatus("");
    } catch (err) {
        setStatus(err instanceof ServiceError ? `render failed: ${err.message}` : String(err));
    }
});

function setStatus(text: string): void {
    $("status").textContent = text;
}

function requestRender(): void {
    if (!state.tree || !state.imageB64) return;
    const gaze = currentGaze();
    scheduler.submit({
        image_b64: state.imageB64,
        profile: toProfileDoc(state.tree, "panel", Number($<HTMLInputElement>("seed").value) || 0),
        gaze: [gaze.x, gaze.y],
        time: sessionTime(),
    });
}

function updateTree(tree: ControlTree): void {
    state.tree = tree;
    requestRender();
}

async function rebuildPanel(): Promise<void> {
    const { renderPanel, renderDisabledPanel } = await import("./panel.js");
    const root = $("controls");
    try {
        const schema = await client.symptoms();
        state.tree = state.tree ?? buildControls(schema);
    } catch (err) {
        renderDisabledPanel(root, `cannot reach the render service: ${err}`, () => void rebuildPanel());
        return;
    }
    renderPanel(root, state.tree, {
        onToggle: (symptom, enabled) => updateTree(setEnabled(state.tree!, symptom, enabled)),
        onParam: (symptom, param, value) => updateTree(setParam(state.tree!, symptom, param, value)),
        onGlobal: (enabled) => updateTree({ ...state.tree!, globalEnabled: enabled }),
    });
    await refreshProfileList();
}

async function refreshProfileList(): Promise<void> {
    try {
        const names = await client.profileNames();
        const select = $<HTMLSelectElement>("profile-list");
        select.replaceChildren();
        for (const name of names) {
            const opt = document.createElement("option");
            opt.value = name;
            opt.textContent = name;
            select.appendChild(opt);
        }
    } catch {
        // profile listing is best-effort
    }
}

function bytesToBase64(bytes: Uint8Array): string {
    let binary = "";
    const chunk = 0x8000;
    for (let i = 0; i < bytes.length; i += chunk) {
        binary += String.fromCharCode(...bytes.subarray(i, i + chunk));
    }
    return btoa(binary);
}

async function loadImageFile(file: File): Promise<void> {
    const bytes = new Uint8Array(await file.arrayBuffer());
    state.imageB64 = bytesToBase64(bytes);
    requestRender();
}

function defaultImage(): string {
    // built-in test card so the panel renders before any file is chosen
    const canvas = document.createElement("canvas");
    canvas.width = 960;
    canvas.height = 600;
    const g = canvas.getContext("2d")!;
    const grad = g.createLinearGradient(0, 0, 960, 600);
    grad.addColorStop(0, "#355");
    grad.addColorStop(1, "#dcb");
    g.fillStyle = grad;
    g.fillRect(0, 0, 960, 600);
    g.fillStyle = "#fff";
    for (let i = 0; i < 12; i++) {
        g.fillRect(40 + i * 76, 60, 38, 480);
    }
    g.fillStyle = "#222";
    g.font = "28px sans-serif";
    for (let row = 0; row < 6; row++) {
        g.fillText("The quick brown fox jumps over the lazy dog 0123456789", 48, 120 + row * 80);
    }
    const dataUrl = canvas.toDataURL("image/png");
    return dataUrl.slice(dataUrl.indexOf(",") + 1);
}

function wireEvents(): void {
    const viewport = $("viewport");
    viewport.addEventListener("pointermove", (e) => {
        if (state.gazeMode !== "mouse") return;
        const rect = viewport.getBoundingClientRect();
        gazeHold.update(pointerToGaze(e.clientX, e.clientY, rect));
        requestRender();
    });
    viewport.addEventListener("pointerleave", () => {
        // hold the last in-viewport gaze
        gazeHold.update(null);
    });
    viewport.addEventListener("click", (e) => {
        if (state.gazeMode !== "fixed") return;
        const rect = viewport.getBoundingClientRect();
        state.fixedGaze = pointerToGaze(e.clientX, e.clientY, rect);
        requestRender();
    });

    $<HTMLSelectElement>("gaze-mode").addEventListener("change", (e) => {
        state.gazeMode = (e.target as HTMLSelectElement).value as GazeMode;
        requestRender();
    });

    $<HTMLInputElement>("image-file").addEventListener("change", (e) => {
        const file = (e.target as HTMLInputElement).files?.[0];
        if (file) void loadImageFile(file);
    });

    $<HTMLTextAreaElement>("scripted-path").addEventListener("change", (e) => {
        const lines = (e.target as HTMLTextAreaElement).value.split("\n");
        state.scriptedPath = lines
            .map((l) => l.trim().split(/\s+/).map(Number))
            .filter((p) => p.length >= 3 && p.every((v) => Number.isFinite(v)))
            .map(([t, x, y]) => ({ t, x, y }));
    });

    $("save-profile").addEventListener("click", async () => {
        if (!state.tree) return;
        const name = $<HTMLInputElement>("profile-name").value.trim();
        if (!name) {
            setStatus("enter a profile name to save");
            return;
        }
        try {
            await client.putProfile(name, toProfileDoc(state.tree, name, Number($<HTMLInputElement>("seed").value) || 0));
            setStatus(`saved '${name}'`);
            await refreshProfileList();
        } catch (err) {
            setStatus(`save failed: ${err}`);
        }
    });

    $("load-profile").addEventListener("click", async () => {
        if (!state.tree) return;
        const name = $<HTMLSelectElement>("profile-list").value;
        try {
            const doc = await client.getProfile(name);
            const result = applyProfileDoc(state.tree, doc);
            if (result.errors.length > 0) {
                setStatus(`cannot load '${name}': ${result.errors.join("; ")}`);
                return; // panel unchanged
            }
            state.tree = result.tree;
            $<HTMLInputElement>("profile-name").value = name;
            await rebuildPanel();
            requestRender();
        } catch (err) {
            setStatus(`load failed: ${err}`);
        }
    });

    setInterval(() => {
        // temporal symptoms animate even without input
        if (state.tree?.symptoms.some((s) => s.enabled)) requestRender();
    }, 250);
}

async function start(): Promise<void> {
    state.imageB64 = defaultImage();
    wireEvents();
    await rebuildPanel();
    requestRender();
}

void start();
