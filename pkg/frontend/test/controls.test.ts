import assert from "node:assert/strict";
import { test } from "node:test";

import {
    applyProfileDoc,
    buildControls,
    setEnabled,
    setParam,
    toProfileDoc,
} from "../src/controls.js";
import type { SymptomsDoc } from "../src/types.js";

const FIXTURE: SymptomsDoc = {
    symptoms: [
        {
            name: "hyperopia",
            label: "Hyperopia",
            eye_tracking: false,
            temporal: false,
            params: [{ name: "cpd", kind: "float", min: 0.01, max: 30, default: 5, unit: "cycles/degree" }],
            neutral: { cpd: 30 },
        },
        {
            name: "color_vision_deficiency",
            label: "CVD",
            eye_tracking: false,
            temporal: false,
            params: [
                { name: "type", kind: "enum", default: "deutan", choices: ["protan", "deutan", "tritan", "mono"] },
                { name: "severity", kind: "float", min: 0, max: 100, default: 100 },
            ],
            neutral: { severity: 0 },
        },
        {
            name: "futuristic",
            label: "From the future",
            eye_tracking: false,
            temporal: false,
            params: [{ name: "waveform", kind: "spline", default: [0, 1] }],
            neutral: {},
        },
    ],
};

test("slider bounds come from the schema", () => {
    const tree = buildControls(FIXTURE);
    const cpd = tree.symptoms[0].params[0];
    assert.equal(cpd.kind, "slider");
    assert.equal(cpd.min, 0.01);
    assert.equal(cpd.max, 30);
    assert.equal(cpd.value, 5);
    assert.ok((cpd.step ?? 0) > 0);
});

test("enum becomes a selector with the schema choices", () => {
    const tree = buildControls(FIXTURE);
    const kind = tree.symptoms[1].params[0];
    assert.equal(kind.kind, "select");
    assert.deepEqual(kind.choices, ["protan", "deutan", "tritan", "mono"]);
});

test("unknown parameter kind renders read-only with a warning", () => {
    const tree = buildControls(FIXTURE);
    const exotic = tree.symptoms[2].params[0];
    assert.equal(exotic.kind, "readonly");
    assert.match(exotic.warning ?? "", /spline/);
    // edits are refused
    const after = setParam(tree, "futuristic", "waveform", [9, 9]);
    assert.deepEqual(after.symptoms[2].params[0].value, [0, 1]);
});

test("empty schema produces an empty panel without crashing", () => {
    const tree = buildControls({ symptoms: [] });
    assert.equal(tree.symptoms.length, 0);
    const doc = toProfileDoc(tree, "empty", 0);
    assert.deepEqual(doc.symptoms, []);
});

test("setParam clamps to schema-legal values", () => {
    const tree = buildControls(FIXTURE);
    const high = setParam(tree, "hyperopia", "cpd", 999);
    assert.equal(high.symptoms[0].params[0].value, 30);
    const low = setParam(tree, "hyperopia", "cpd", -4);
    assert.equal(low.symptoms[0].params[0].value, 0.01);
    const bogus = setParam(tree, "color_vision_deficiency", "type", "xray");
    assert.equal(bogus.symptoms[1].params[0].value, "protan"); // first legal choice
});

test("profile round trip restores toggles and values", () => {
    let tree = buildControls(FIXTURE);
    tree = setEnabled(tree, "hyperopia", true);
    tree = setParam(tree, "hyperopia", "cpd", 7.5);
    tree = setParam(tree, "color_vision_deficiency", "severity", 40);
    const doc = toProfileDoc(tree, "roundtrip", 3);

    const fresh = buildControls(FIXTURE);
    const result = applyProfileDoc(fresh, doc);
    assert.deepEqual(result.errors, []);
    assert.equal(result.tree.symptoms[0].enabled, true);
    assert.equal(result.tree.symptoms[0].params[0].value, 7.5);
    assert.equal(result.tree.symptoms[1].enabled, false);
    assert.equal(result.tree.symptoms[1].params[1].value, 40);
});

test("malformed documents leave the panel unchanged", () => {
    const tree = buildControls(FIXTURE);
    const before = JSON.stringify(tree);
    const badVersion = applyProfileDoc(tree, { ...toProfileDoc(tree, "x", 0), format_version: 9 });
    assert.ok(badVersion.errors.length > 0);
    const unknown = applyProfileDoc(tree, {
        format_version: 1,
        name: "x",
        seed: 0,
        notes: "",
        global_enabled: true,
        symptoms: [{ type: "xray", enabled: true, params: {} }],
    });
    assert.ok(unknown.errors[0].includes("xray"));
    assert.equal(JSON.stringify(tree), before);
});

test("toggling a symptom off keeps its parameter values", () => {
    let tree = buildControls(FIXTURE);
    tree = setEnabled(tree, "hyperopia", true);
    tree = setParam(tree, "hyperopia", "cpd", 2.5);
    tree = setEnabled(tree, "hyperopia", false);
    assert.equal(tree.symptoms[0].params[0].value, 2.5);
});
