"""Local render service: the HTTP boundary the interactive panel talks to.

Endpoints:
  GET  /symptoms            parameter schema for every symptom (the single
                            source the UI builds its sliders from)
  POST /render              profile + gaze + time + base64 image -> PNG
                            (or PPM with {"format": "ppm"})
  POST /session             create a session (seed, optional held frame)
  GET  /profiles            preset names (shipped + profile directory)
  GET  /profiles/{name}     profile document
  PUT  /profiles/{name}     store a profile document
  DELETE /profiles/{name}   remove a stored profile

Errors: 400 with the validation report for bad configs, 404 for unknown
names/sessions, 413 for images over the pixel budget. Loopback by default;
there is no authentication.
"""

from __future__ import annotations

import base64
import binascii
import json
import os
import re
import threading
import uuid
from dataclasses import dataclass, field

from starlette.applications import Starlette
from starlette.requests import Request
from starlette.responses import JSONResponse, PlainTextResponse, Response
from starlette.routing import Route

from .frame import Frame, decode_image, encode_image, peek_dimensions
from .geometry import DEFAULT_GEOMETRY
from .pipeline import SymptomStack, validate, render
from .profiles import Profile, ProfileError, dumps, from_document, loads, shipped_presets, to_document
from .symptoms import RenderContext, schema

__all__ = ["create_app", "MAX_PIXELS", "PROFILE_DIR_ENV"]

MAX_PIXELS = 32_000_000
PROFILE_DIR_ENV = "VISIM_PROFILE_DIR"
_NAME_RE = re.compile(r"^[A-Za-z0-9_.-]+$")


@dataclass
class _Session:
    seed: int
    frame: Frame | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)


class _ServiceState:
    def __init__(self, profile_dir: str | None):
        self.profile_dir = profile_dir or os.environ.get(PROFILE_DIR_ENV) or os.path.expanduser(
            "~/.visim/profiles"
        )
        self.sessions: dict[str, _Session] = {}
        self.presets = shipped_presets()

    def profile_path(self, name: str) -> str:
        return os.path.join(self.profile_dir, f"{name}.json")

    def list_profiles(self) -> list[str]:
        names = set(self.presets)
        if os.path.isdir(self.profile_dir):
            for fn in os.listdir(self.profile_dir):
                if fn.endswith(".json"):
                    names.add(fn[:-5])
        return sorted(names)

    def load_profile(self, name: str) -> Profile | None:
        path = self.profile_path(name)
        if os.path.isfile(path):
            with open(path, "r", encoding="utf-8") as f:
                return loads(f.read())
        return self.presets.get(name)


def _bad_request(detail) -> JSONResponse:
    body = detail if isinstance(detail, dict) else {"error": str(detail)}
    return JSONResponse(body, status_code=400)


def create_app(profile_dir: str | None = None) -> Starlette:
    state = _ServiceState(profile_dir)

    async def get_symptoms(request: Request) -> JSONResponse:
        return JSONResponse(schema())

    async def post_session(request: Request) -> JSONResponse:
        try:
            body = json.loads(await request.body() or b"{}")
        except json.JSONDecodeError as e:
            return _bad_request(f"malformed JSON: {e}")
        seed = int(body.get("seed", 0))
        session = _Session(seed=seed)
        if "image_b64" in body:
            frame, err = _decode_b64_image(body["image_b64"])
            if err is not None:
                return err
            session.frame = frame
        sid = uuid.uuid4().hex
        state.sessions[sid] = session
        return JSONResponse({"id": sid, "seed": seed})

    async def post_render(request: Request) -> Response:
        try:
            body = json.loads(await request.body() or b"{}")
        except json.JSONDecodeError as e:
            return _bad_request(f"malformed JSON: {e}")

        session = None
        if "session" in body:
            session = state.sessions.get(body["session"])
            if session is None:
                return JSONResponse({"error": "unknown session"}, status_code=404)

        # frame source: inline image, or the frame held by the session
        frame: Frame | None = None
        if "image_b64" in body:
            frame, err = _decode_b64_image(body["image_b64"])
            if err is not None:
                return err
        elif session is not None and session.frame is not None:
            frame = session.frame
        if frame is None:
            return _bad_request("no image: pass image_b64 or a session holding a frame")

        # profile: inline document or stored name
        try:
            if "profile" in body:
                profile = from_document(body["profile"])
            elif "profile_name" in body:
                profile = state.load_profile(body["profile_name"])
                if profile is None:
                    return JSONResponse({"error": f"unknown profile {body['profile_name']!r}"}, status_code=404)
            else:
                return _bad_request("no profile: pass profile or profile_name")
        except ProfileError as e:
            report = _report_for_error(body.get("profile"))
            if report is not None:
                return JSONResponse({"error": str(e), "report": report}, status_code=400)
            return _bad_request(str(e))

        gaze = body.get("gaze", [0.5, 0.5])
        try:
            gx = min(max(float(gaze[0]), 0.0), 1.0)
            gy = min(max(float(gaze[1]), 0.0), 1.0)
        except (TypeError, ValueError, IndexError):
            return _bad_request("gaze must be [x, y] in [0,1]")
        time_s = float(body.get("time", 0.0))
        seed = session.seed if session is not None else profile.seed

        ctx = RenderContext(
            gaze=(gx * (frame.width - 1), gy * (frame.height - 1)),
            time=time_s,
            geometry=DEFAULT_GEOMETRY,
            seed=seed,
        )
        if session is not None:
            with session.lock:
                out = render(frame, profile.stack, ctx)
        else:
            out = render(frame, profile.stack, ctx)

        fmt = str(body.get("format", "png")).lower()
        if fmt not in ("png", "ppm"):
            return _bad_request(f"unsupported format {fmt!r}")
        media = "image/png" if fmt == "png" else "image/x-portable-pixmap"
        return Response(encode_image(out, fmt), media_type=media)

    async def get_profiles(request: Request) -> JSONResponse:
        return JSONResponse({"profiles": state.list_profiles()})

    async def get_profile(request: Request) -> Response:
        name = request.path_params["name"]
        try:
            profile = state.load_profile(name)
        except ProfileError as e:
            return _bad_request(str(e))
        if profile is None:
            return JSONResponse({"error": f"unknown profile {name!r}"}, status_code=404)
        return PlainTextResponse(dumps(profile), media_type="application/json")

    async def put_profile(request: Request) -> Response:
        name = request.path_params["name"]
        if not _NAME_RE.match(name):
            return _bad_request("profile names may use letters, digits, dot, dash, underscore")
        try:
            doc = json.loads(await request.body())
        except json.JSONDecodeError as e:
            return _bad_request(f"malformed JSON: {e}")
        try:
            profile = from_document(doc)
        except ProfileError as e:
            report = _report_for_error(doc)
            if report is not None:
                return JSONResponse({"error": str(e), "report": report}, status_code=400)
            return _bad_request(str(e))
        os.makedirs(state.profile_dir, exist_ok=True)
        stored = Profile(name=name, stack=profile.stack, seed=profile.seed, notes=profile.notes)
        with open(state.profile_path(name), "w", encoding="utf-8") as f:
            f.write(dumps(stored))
        return JSONResponse({"stored": name})

    async def delete_profile(request: Request) -> Response:
        name = request.path_params["name"]
        path = state.profile_path(name)
        if os.path.isfile(path):
            os.remove(path)
            return JSONResponse({"deleted": name})
        if name in state.presets:
            return JSONResponse({"error": f"{name!r} is a shipped preset"}, status_code=403)
        return JSONResponse({"error": f"unknown profile {name!r}"}, status_code=404)

    routes = [
        Route("/symptoms", get_symptoms, methods=["GET"]),
        Route("/render", post_render, methods=["POST"]),
        Route("/session", post_session, methods=["POST"]),
        Route("/profiles", get_profiles, methods=["GET"]),
        Route("/profiles/{name}", get_profile, methods=["GET"]),
        Route("/profiles/{name}", put_profile, methods=["PUT"]),
        Route("/profiles/{name}", delete_profile, methods=["DELETE"]),
    ]
    app = Starlette(routes=routes)
    app.state.service = state
    _mount_panel(app)
    return app


def _decode_b64_image(data_b64: str):
    try:
        raw = base64.b64decode(data_b64, validate=True)
    except (binascii.Error, ValueError):
        return None, _bad_request("image_b64 is not valid base64")
    dims = peek_dimensions(raw)
    if dims is not None and dims[0] * dims[1] > MAX_PIXELS:
        return None, JSONResponse(
            {"error": f"image exceeds {MAX_PIXELS} pixels"}, status_code=413
        )
    try:
        frame = decode_image(raw)
    except Exception as e:
        return None, _bad_request(f"cannot decode image: {e}")
    if frame.width * frame.height > MAX_PIXELS:
        return None, JSONResponse(
            {"error": f"image exceeds {MAX_PIXELS} pixels"}, status_code=413
        )
    return frame, None


def _report_for_error(doc) -> dict | None:
    """Best-effort validation report for a rejected inline profile."""
    if not isinstance(doc, dict):
        return None
    try:
        from .pipeline import StackEntry
        from .symptoms.registry import REGISTRY

        entries = []
        for item in doc.get("symptoms", []):
            kind = item.get("type")
            if kind in REGISTRY:
                cfg = REGISTRY[kind].config_cls.from_params(item.get("params", {}))
                entries.append(StackEntry(kind, bool(item.get("enabled", True)), cfg))
        report = validate(SymptomStack(tuple(entries), True))
        return report.to_dict()
    except Exception:
        return None


def _mount_panel(app: Starlette) -> None:
    """Serve the operator panel at /ui when its build output exists."""
    from starlette.staticfiles import StaticFiles

    here = os.path.dirname(os.path.abspath(__file__))
    candidates = [
        os.path.join(os.path.dirname(os.path.dirname(here)), "frontend", "dist"),
        os.path.join(here, "panel"),
    ]
    for path in candidates:
        if os.path.isdir(path):
            app.mount("/ui", StaticFiles(directory=path, html=True), name="ui")
            return
