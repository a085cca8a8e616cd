// DOM rendering of the control tree. All state lives in the ControlTree;
// this module only reflects it and reports user edits upward.

import type { ControlTree, ParamControl, SymptomControl } from "./controls.js";

export interface PanelCallbacks {
    onToggle(symptom: string, enabled: boolean): void;
    onParam(symptom: string, param: string, value: unknown): void;
    onGlobal(enabled: boolean): void;
}

function formatValue(p: ParamControl): string {
    if (p.kind === "slider") return Number(p.value).toFixed(3);
    if (p.kind === "vec2") {
        const [a, b] = p.value as [number, number];
        return `${a.toFixed(2)}, ${b.toFixed(2)}`;
    }
    return String(p.value);
}

function paramRow(symptom: SymptomControl, p: ParamControl, cb: PanelCallbacks): HTMLElement {
    const row = document.createElement("label");
    row.className = "param-row";
    const name = document.createElement("span");
    name.className = "param-name";
    name.textContent = p.unit ? `${p.name} (${p.unit})` : p.name;
    row.appendChild(name);

    const valueLabel = document.createElement("span");
    valueLabel.className = "param-value";
    valueLabel.textContent = formatValue(p);

    if (p.kind === "slider" || p.kind === "int-slider") {
        const input = document.createElement("input");
        input.type = "range";
        input.min = String(p.min);
        input.max = String(p.max);
        input.step = String(p.step);
        input.value = String(p.value);
        input.addEventListener("input", () => {
            valueLabel.textContent = input.value;
            cb.onParam(symptom.name, p.name, Number(input.value));
        });
        row.appendChild(input);
    } else if (p.kind === "select") {
        const select = document.createElement("select");
        for (const choice of p.choices ?? []) {
            const opt = document.createElement("option");
            opt.value = choice;
            opt.textContent = choice;
            opt.selected = choice === p.value;
            select.appendChild(opt);
        }
        select.addEventListener("change", () => {
            valueLabel.textContent = select.value;
            cb.onParam(symptom.name, p.name, select.value);
        });
        row.appendChild(select);
    } else if (p.kind === "checkbox") {
        const input = document.createElement("input");
        input.type = "checkbox";
        input.checked = Boolean(p.value);
        input.addEventListener("change", () => {
            valueLabel.textContent = String(input.checked);
            cb.onParam(symptom.name, p.name, input.checked);
        });
        row.appendChild(input);
    } else if (p.kind === "vec2") {
        const pair = p.value as [number, number];
        const holder = document.createElement("span");
        holder.className = "vec2";
        const inputs = pair.map((component, idx) => {
            const input = document.createElement("input");
            input.type = "number";
            input.min = String(p.min);
            input.max = String(p.max);
            input.step = String(p.step);
            input.value = String(component);
            input.addEventListener("change", () => {
                const vals = inputs.map((i) => Number(i.value)) as [number, number];
                valueLabel.textContent = `${vals[0]}, ${vals[1]}`;
                cb.onParam(symptom.name, p.name, vals);
            });
            holder.appendChild(input);
            return input;
        });
        row.appendChild(holder);
    } else {
        // readonly / unknown kind: visible but not editable
        const badge = document.createElement("span");
        badge.className = "warning-badge";
        badge.title = p.warning ?? "read-only";
        badge.textContent = "!";
        row.appendChild(badge);
        row.classList.add("readonly");
    }
    row.appendChild(valueLabel);
    return row;
}

function symptomCard(s: SymptomControl, cb: PanelCallbacks): HTMLElement {
    const card = document.createElement("details");
    card.className = "symptom-card";
    card.open = s.enabled;
    const summary = document.createElement("summary");

    const toggle = document.createElement("input");
    toggle.type = "checkbox";
    toggle.checked = s.enabled;
    toggle.addEventListener("click", (e) => e.stopPropagation());
    toggle.addEventListener("change", () => cb.onToggle(s.name, toggle.checked));
    summary.appendChild(toggle);

    const label = document.createElement("span");
    label.textContent = s.label;
    summary.appendChild(label);

    if (s.eyeTracking) {
        const eye = document.createElement("span");
        eye.className = "eye-flag";
        eye.title = "gaze contingent";
        eye.textContent = "\u{1F441}";
        summary.appendChild(eye);
    }
    if (s.disclaimer) {
        const mark = document.createElement("span");
        mark.className = "warning-badge";
        mark.title = s.disclaimer;
        mark.textContent = "!";
        summary.appendChild(mark);
    }
    card.appendChild(summary);
    for (const p of s.params) card.appendChild(paramRow(s, p, cb));
    return card;
}

export function renderPanel(root: HTMLElement, tree: ControlTree, cb: PanelCallbacks): void {
    root.replaceChildren();

    const global = document.createElement("label");
    global.className = "global-toggle";
    const toggle = document.createElement("input");
    toggle.type = "checkbox";
    toggle.checked = tree.globalEnabled;
    toggle.addEventListener("change", () => cb.onGlobal(toggle.checked));
    global.appendChild(toggle);
    global.appendChild(document.createTextNode(" Enable simulation"));
    root.appendChild(global);

    for (const s of tree.symptoms) root.appendChild(symptomCard(s, cb));
}

export function renderDisabledPanel(root: HTMLElement, message: string, onRetry: () => void): void {
    root.replaceChildren();
    const box = document.createElement("div");
    box.className = "panel-error";
    box.textContent = message;
    const retry = document.createElement("button");
    retry.textContent = "Retry";
    retry.addEventListener("click", onRetry);
    box.appendChild(document.createElement("br"));
    box.appendChild(retry);
    root.appendChild(box);
}
