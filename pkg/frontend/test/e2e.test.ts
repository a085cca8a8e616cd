// End-to-end against the real render service: schema fidelity of the
// control bounds, profile save/load round trip, and gaze-driven scotoma
// tracking measured on the rendered pixels.

import assert from "node:assert/strict";
import { after, before, test } from "node:test";

import { ServiceClient } from "../src/client.js";
import {
    applyProfileDoc,
    buildControls,
    setEnabled,
    setParam,
    toProfileDoc,
    type ControlTree,
    type ParamControl,
} from "../src/controls.js";
import { pointerToGaze } from "../src/gaze.js";
import { decodePpm, diffCentroid, encodePpm, flatGray } from "./ppm.js";
import { startService, type RunningService } from "./service.js";

let service: RunningService;
let client: ServiceClient;

before(async () => {
    service = await startService();
    client = new ServiceClient(service.base);
});

after(() => {
    service.stop();
});

test("every control's bounds equal the /symptoms schema", async () => {
    const schema = await client.symptoms();
    assert.equal(schema.symptoms.length, 18);
    const tree = buildControls(schema);
    for (const symptom of schema.symptoms) {
        const control = tree.symptoms.find((s) => s.name === symptom.name);
        assert.ok(control, symptom.name);
        for (const param of symptom.params) {
            const pc: ParamControl | undefined = control.params.find((c) => c.name === param.name);
            assert.ok(pc, `${symptom.name}.${param.name}`);
            if (param.kind === "float" || param.kind === "int" || param.kind === "vec2") {
                assert.equal(pc.min, param.min, `${symptom.name}.${param.name} min`);
                assert.equal(pc.max, param.max, `${symptom.name}.${param.name} max`);
            }
            if (param.kind === "enum") {
                assert.deepEqual(pc.choices, param.choices);
            }
        }
    }
});

test("slider values are schema-legal: the service never rejects them", async () => {
    const schema = await client.symptoms();
    let tree = buildControls(schema);
    // drag everything to out-of-range values; the model must clamp
    for (const s of tree.symptoms) {
        tree = setEnabled(tree, s.name, true);
        for (const p of s.params) {
            if (p.kind === "slider" || p.kind === "int-slider") {
                tree = setParam(tree, s.name, p.name, (p.max ?? 1) * 1000);
            }
        }
    }
    const image = Buffer.from(encodePpm(flatGray(64, 48, 128))).toString("base64");
    const result = await client.render({
        image_b64: image,
        profile: toProfileDoc(tree, "stress", 1),
        gaze: [0.5, 0.5],
        time: 0.0,
        format: "ppm",
    });
    assert.ok(result.bytes.length > 0);
});

test("saving then loading a profile restores all controls", async () => {
    const schema = await client.symptoms();
    let tree = buildControls(schema);
    tree = setEnabled(tree, "hyperopia", true);
    tree = setParam(tree, "hyperopia", "cpd", 4.25);
    tree = setEnabled(tree, "color_vision_deficiency", true);
    tree = setParam(tree, "color_vision_deficiency", "type", "tritan");
    tree = setParam(tree, "color_vision_deficiency", "severity", 62);
    tree = setEnabled(tree, "retinopathy", true);
    tree = setParam(tree, "retinopathy", "density", 321);
    tree = setParam(tree, "retinopathy", "centering", true);
    tree = setParam(tree, "in_filling", "position", [0.25, -0.5]);

    await client.putProfile("panel_e2e", toProfileDoc(tree, "panel_e2e", 7));
    const names = await client.profileNames();
    assert.ok(names.includes("panel_e2e"));

    const doc = await client.getProfile("panel_e2e");
    const restored = applyProfileDoc(buildControls(schema), doc);
    assert.deepEqual(restored.errors, []);

    const flatten = (t: ControlTree) =>
        t.symptoms.map((s) => ({
            name: s.name,
            enabled: s.enabled,
            params: s.params.map((p) => ({ name: p.name, value: p.value })),
        }));
    assert.deepEqual(flatten(restored.tree), flatten(tree));
});

test("loading a preset activates its symptoms", async () => {
    const schema = await client.symptoms();
    const doc = await client.getProfile("p4_blur_dark_center");
    const result = applyProfileDoc(buildControls(schema), doc);
    assert.deepEqual(result.errors, []);
    const enabled = result.tree.symptoms.filter((s) => s.enabled).map((s) => s.name);
    assert.deepEqual(enabled.sort(), ["foveal_darkness", "hyperopia"]);
});

test("mouse drag moves the rendered scotoma with the pointer", async () => {
    const schema = await client.symptoms();
    let tree = buildControls(schema);
    tree = setEnabled(tree, "foveal_darkness", true);
    tree = setParam(tree, "foveal_darkness", "size", 0.3);
    tree = setParam(tree, "foveal_darkness", "fade", 0.0);
    tree = setParam(tree, "foveal_darkness", "opacity", 1.0);
    const profile = toProfileDoc(tree, "scotoma", 0);

    const width = 200;
    const height = 150;
    const source = flatGray(width, height, 64);
    const imageB64 = Buffer.from(encodePpm(source)).toString("base64");
    // the viewport shows the image 1:1, so pointer pixels == image pixels
    const viewport = { left: 0, top: 0, width, height };
    const pointer = [
        { x: 60, y: 60 },
        { x: 100, y: 80 },
        { x: 140, y: 90 },
    ];

    const centers: { x: number; y: number }[] = [];
    for (const p of pointer) {
        const gaze = pointerToGaze(p.x, p.y, viewport);
        const result = await client.render({
            image_b64: imageB64,
            profile,
            gaze: [gaze.x, gaze.y],
            time: 0,
            format: "ppm",
        });
        const rendered = decodePpm(result.bytes);
        const centroid = diffCentroid(source, rendered);
        assert.ok(centroid.mass > 0, "scotoma not visible");
        centers.push({ x: centroid.x, y: centroid.y });
    }
    for (let i = 1; i < pointer.length; i++) {
        const dx = centers[i].x - centers[i - 1].x;
        const dy = centers[i].y - centers[i - 1].y;
        const px = pointer[i].x - pointer[i - 1].x;
        const py = pointer[i].y - pointer[i - 1].y;
        assert.ok(Math.abs(dx - px) <= 5, `dx ${dx} vs pointer ${px}`);
        assert.ok(Math.abs(dy - py) <= 5, `dy ${dy} vs pointer ${py}`);
    }
});
