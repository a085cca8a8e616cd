import base64
import json
import struct
import zlib

import numpy as np
import pytest
from starlette.testclient import TestClient

from visim.frame import decode_image, encode_image
from visim.profiles import dumps, shipped_presets, to_document, Profile
from visim.pipeline import SymptomStack
from visim.symptoms import Hyperopia
from visim.service import create_app

from conftest import textured_frame


@pytest.fixture
def client(tmp_path):
    app = create_app(profile_dir=str(tmp_path / "profiles"))
    with TestClient(app) as c:
        yield c


def b64_image(frame, fmt="png"):
    return base64.b64encode(encode_image(frame, fmt)).decode("ascii")


def empty_profile_doc():
    return {"format_version": 1, "name": "empty", "seed": 0, "notes": "", "symptoms": []}


def blur_profile_doc(cpd=5.0):
    return {
        "format_version": 1,
        "name": "blur",
        "seed": 3,
        "notes": "",
        "symptoms": [{"type": "hyperopia", "enabled": True, "params": {"cpd": cpd}}],
    }


def test_symptoms_schema(client):
    r = client.get("/symptoms")
    assert r.status_code == 200
    doc = r.json()
    assert len(doc["symptoms"]) == 18
    by_name = {s["name"]: s for s in doc["symptoms"]}
    cvd = by_name["color_vision_deficiency"]
    type_param = next(p for p in cvd["params"] if p["name"] == "type")
    assert set(type_param["choices"]) == {"protan", "deutan", "tritan", "mono"}
    cpd = next(p for p in by_name["hyperopia"]["params"] if p["name"] == "cpd")
    assert (cpd["min"], cpd["max"]) == (0.01, 30.0)
    density = next(p for p in by_name["retinopathy"]["params"] if p["name"] == "density")
    assert (density["min"], density["max"]) == (0, 2500)
    assert by_name["central_vision_loss"]["eye_tracking"] is True
    assert by_name["hyperopia"]["eye_tracking"] is False


def test_render_empty_stack_returns_input_pixels(client):
    f = textured_frame(40, 30)
    r = client.post(
        "/render",
        json={"image_b64": b64_image(f), "profile": empty_profile_doc(), "gaze": [0.5, 0.5]},
    )
    assert r.status_code == 200
    assert r.headers["content-type"] == "image/png"
    out = decode_image(r.content)
    assert np.array_equal(out.to_u8_srgb(), f.to_u8_srgb())


def test_render_deterministic_bytes(client):
    f = textured_frame(48, 36)
    body = {
        "image_b64": b64_image(f),
        "profile": blur_profile_doc(),
        "gaze": [0.4, 0.6],
        "time": 0.25,
    }
    r1 = client.post("/render", json=body)
    r2 = client.post("/render", json=body)
    assert r1.status_code == r2.status_code == 200
    assert r1.content == r2.content


def test_render_ppm_format(client):
    f = textured_frame(16, 16)
    r = client.post(
        "/render",
        json={"image_b64": b64_image(f), "profile": empty_profile_doc(), "format": "ppm"},
    )
    assert r.status_code == 200
    assert r.content.startswith(b"P6")
    assert r.headers["content-type"].startswith("image/x-portable-pixmap")


def test_render_validation_report(client):
    f = textured_frame(16, 16)
    r = client.post(
        "/render", json={"image_b64": b64_image(f), "profile": blur_profile_doc(cpd=100.0)}
    )
    assert r.status_code == 400
    doc = r.json()
    assert "0.01" in json.dumps(doc) and "30" in json.dumps(doc)


def test_render_unknown_profile_name(client):
    f = textured_frame(8, 8)
    r = client.post("/render", json={"image_b64": b64_image(f), "profile_name": "nope"})
    assert r.status_code == 404


def test_render_missing_image(client):
    r = client.post("/render", json={"profile": empty_profile_doc()})
    assert r.status_code == 400


def test_render_bad_base64(client):
    r = client.post("/render", json={"image_b64": "!!!", "profile": empty_profile_doc()})
    assert r.status_code == 400


def test_render_oversized_image_413(client):
    # A tiny PNG whose header claims 9000x4000 (36 MP): rejected from the
    # header, before any decode.
    ihdr = struct.pack(">II", 9000, 4000) + bytes([8, 2, 0, 0, 0])
    chunk = b"IHDR" + ihdr
    png = (
        b"\x89PNG\r\n\x1a\n"
        + struct.pack(">I", len(ihdr))
        + chunk
        + struct.pack(">I", zlib.crc32(chunk))
    )
    r = client.post(
        "/render",
        json={"image_b64": base64.b64encode(png).decode(), "profile": empty_profile_doc()},
    )
    assert r.status_code == 413


def test_session_render_and_reuse(client):
    f = textured_frame(32, 24)
    s = client.post("/session", json={"seed": 11, "image_b64": b64_image(f)})
    assert s.status_code == 200
    sid = s.json()["id"]
    assert s.json()["seed"] == 11

    body = {"session": sid, "profile": blur_profile_doc(), "gaze": [0.5, 0.5], "time": 0.0}
    r1 = client.post("/render", json=body)
    assert r1.status_code == 200
    # same render with the image inline and the same seed must be identical
    inline_profile = blur_profile_doc()
    inline_profile["seed"] = 11
    r2 = client.post(
        "/render",
        json={"image_b64": b64_image(f), "profile": inline_profile, "gaze": [0.5, 0.5], "time": 0.0},
    )
    assert r1.content == r2.content


def test_unknown_session_404(client):
    f = textured_frame(8, 8)
    r = client.post(
        "/render", json={"image_b64": b64_image(f), "profile": empty_profile_doc(), "session": "zzz"}
    )
    assert r.status_code == 404


def test_profiles_list_includes_presets(client):
    r = client.get("/profiles")
    names = r.json()["profiles"]
    for preset in shipped_presets():
        assert preset in names


def test_profile_put_get_round_trip(client):
    profile = Profile("custom", SymptomStack.of(("hyperopia", Hyperopia(cpd=4.0))), seed=9)
    doc = to_document(profile)
    r = client.put("/profiles/custom", json=doc)
    assert r.status_code == 200
    got = client.get("/profiles/custom")
    assert got.status_code == 200
    assert got.text == dumps(profile)
    assert "custom" in client.get("/profiles").json()["profiles"]


def test_profile_put_invalid_rejected(client):
    r = client.put("/profiles/bad", json=blur_profile_doc(cpd=100.0))
    assert r.status_code == 400
    assert "report" in r.json() or "0.01" in r.text


def test_profile_put_bad_name(client):
    r = client.put("/profiles/bad%20name", json=empty_profile_doc())
    assert r.status_code == 400


def test_profile_delete(client):
    client.put("/profiles/tmpthing", json=empty_profile_doc())
    assert client.delete("/profiles/tmpthing").status_code == 200
    assert client.get("/profiles/tmpthing").status_code == 404
    assert client.delete("/profiles/neverwas").status_code == 404
    assert client.delete("/profiles/p4_blur_dark_center").status_code == 403


def test_get_unknown_profile_404(client):
    assert client.get("/profiles/ghost").status_code == 404


def test_shipped_preset_fetch(client):
    r = client.get("/profiles/p4_blur_dark_center")
    assert r.status_code == 200
    doc = json.loads(r.text)
    assert {s["type"] for s in doc["symptoms"]} == {"hyperopia", "foveal_darkness"}
