// Control tree: the panel's model of every symptom toggle and parameter,
// built exclusively from the service schema and serializable back to a
// profile document.

import type { ParamSchema, ProfileDoc, SymptomsDoc } from "./types.js";

export type ControlKind = "slider" | "int-slider" | "select" | "checkbox" | "vec2" | "readonly";

export interface ParamControl {
    name: string;
    kind: ControlKind;
    min?: number;
    max?: number;
    step?: number;
    choices?: string[];
    unit?: string;
    value: unknown;
    warning?: string;
}

export interface SymptomControl {
    name: string;
    label: string;
    enabled: boolean;
    eyeTracking: boolean;
    disclaimer?: string;
    params: ParamControl[];
}

export interface ControlTree {
    symptoms: SymptomControl[];
    globalEnabled: boolean;
}

function sliderStep(p: ParamSchema): number {
    const span = (p.max ?? 1) - (p.min ?? 0);
    const step = span / 200;
    // snap to a tidy decimal step
    const mag = Math.pow(10, Math.floor(Math.log10(Math.max(step, 1e-9))));
    return Math.max(mag, Number((Math.round(step / mag) * mag).toPrecision(3)));
}

function paramControl(p: ParamSchema): ParamControl {
    switch (p.kind) {
        case "float":
            return {
                name: p.name,
                kind: "slider",
                min: p.min,
                max: p.max,
                step: sliderStep(p),
                unit: p.unit,
                value: p.default,
            };
        case "int":
            return { name: p.name, kind: "int-slider", min: p.min, max: p.max, step: 1, unit: p.unit, value: p.default };
        case "enum":
            return { name: p.name, kind: "select", choices: p.choices ?? [], value: p.default };
        case "bool":
            return { name: p.name, kind: "checkbox", value: p.default };
        case "vec2":
            return { name: p.name, kind: "vec2", min: p.min, max: p.max, step: sliderStep(p), unit: p.unit, value: p.default };
        default:
            // forward compatibility: show the value, refuse to edit it
            return {
                name: p.name,
                kind: "readonly",
                value: p.default,
                warning: `unsupported parameter kind '${p.kind}'`,
            };
    }
}

export function buildControls(doc: SymptomsDoc): ControlTree {
    return {
        globalEnabled: true,
        symptoms: doc.symptoms.map((s) => ({
            name: s.name,
            label: s.label,
            enabled: false,
            eyeTracking: s.eye_tracking,
            disclaimer: s.disclaimer,
            params: s.params.map(paramControl),
        })),
    };
}

export function clampToControl(control: ParamControl, raw: unknown): unknown {
    if (control.kind === "slider" || control.kind === "int-slider") {
        let v = Number(raw);
        if (!Number.isFinite(v)) v = Number(control.min ?? 0);
        v = Math.min(Math.max(v, control.min ?? -Infinity), control.max ?? Infinity);
        return control.kind === "int-slider" ? Math.round(v) : v;
    }
    if (control.kind === "select") {
        const choices = control.choices ?? [];
        return choices.includes(String(raw)) ? String(raw) : choices[0];
    }
    if (control.kind === "checkbox") return Boolean(raw);
    if (control.kind === "vec2") {
        const pair = Array.isArray(raw) ? raw : [0, 0];
        const lo = control.min ?? -Infinity;
        const hi = control.max ?? Infinity;
        const c = (x: unknown) => Math.min(Math.max(Number(x) || 0, lo), hi);
        return [c(pair[0]), c(pair[1])];
    }
    return raw; // readonly: never edited
}

export function setParam(tree: ControlTree, symptom: string, param: string, raw: unknown): ControlTree {
    return {
        ...tree,
        symptoms: tree.symptoms.map((s) => {
            if (s.name !== symptom) return s;
            return {
                ...s,
                params: s.params.map((p) =>
                    p.name === param && p.kind !== "readonly" ? { ...p, value: clampToControl(p, raw) } : p
                ),
            };
        }),
    };
}

export function setEnabled(tree: ControlTree, symptom: string, enabled: boolean): ControlTree {
    return {
        ...tree,
        symptoms: tree.symptoms.map((s) => (s.name === symptom ? { ...s, enabled } : s)),
    };
}

export function toProfileDoc(tree: ControlTree, name: string, seed: number, notes = ""): ProfileDoc {
    return {
        format_version: 1,
        name,
        seed,
        notes,
        global_enabled: tree.globalEnabled,
        symptoms: tree.symptoms.map((s) => ({
            type: s.name,
            enabled: s.enabled,
            params: Object.fromEntries(s.params.map((p) => [p.name, p.value])),
        })),
    };
}

export interface ApplyResult {
    tree: ControlTree;
    errors: string[];
}

export function applyProfileDoc(tree: ControlTree, doc: ProfileDoc): ApplyResult {
    const errors: string[] = [];
    if (doc.format_version !== 1) {
        return { tree, errors: [`unsupported format_version ${doc.format_version}`] };
    }
    const known = new Map(tree.symptoms.map((s) => [s.name, s]));
    for (const entry of doc.symptoms ?? []) {
        if (!known.has(entry.type)) errors.push(`unknown symptom '${entry.type}'`);
    }
    if (errors.length > 0) {
        return { tree, errors }; // panel unchanged on a bad document
    }
    const byType = new Map((doc.symptoms ?? []).map((e) => [e.type, e]));
    const next: ControlTree = {
        globalEnabled: doc.global_enabled ?? true,
        symptoms: tree.symptoms.map((s) => {
            const entry = byType.get(s.name);
            if (!entry) return { ...s, enabled: false }; // absent: off, values kept
            return {
                ...s,
                enabled: Boolean(entry.enabled),
                params: s.params.map((p) =>
                    p.name in entry.params && p.kind !== "readonly"
                        ? { ...p, value: clampToControl(p, entry.params[p.name]) }
                        : p
                ),
            };
        }),
    };
    return { tree: next, errors };
}
