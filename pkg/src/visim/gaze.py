"""Gaze supply: pluggable sources (pointer, scripted path, text stream) and
a constant-velocity Kalman smoother.

Record format shared by scripted files and streams, one sample per line:

    t_seconds x_norm y_norm valid(0|1)

with '.' as the decimal separator. Coordinates are normalized to [0, 1]^2.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace

from .errors import ParameterError, SequencingError

__all__ = [
    "GazeSample",
    "SmootherState",
    "smooth",
    "parse_record",
    "format_record",
    "FixedSource",
    "MousePointerSource",
    "ScriptedPathSource",
    "StreamSource",
    "GazeProvider",
    "STREAM_TIMEOUT",
]

# Defaults: acceleration noise in normalized units/s^2; measurement noise of
# ~2.5 cm on a ~35 cm-wide screen, i.e. 0.07 normalized.
PROCESS_NOISE = 0.5
MEASUREMENT_STD = 0.07

STREAM_TIMEOUT = 0.5


@dataclass(frozen=True)
class GazeSample:
    t: float
    x: float
    y: float
    valid: bool = True


@dataclass(frozen=True)
class _Axis:
    pos: float
    vel: float
    p00: float
    p01: float
    p11: float


@dataclass(frozen=True)
class SmootherState:
    """Per-axis position/velocity estimate with its error covariance."""

    process_noise: float = PROCESS_NOISE
    measurement_std: float = MEASUREMENT_STD
    t: float | None = None
    ax: _Axis | None = None
    ay: _Axis | None = None

    def covariance(self) -> list[list[float]]:
        a = self.ax or _Axis(0, 0, 0, 0, 0)
        return [[a.p00, a.p01], [a.p01, a.p11]]

    def estimate(self) -> tuple[float, float]:
        if self.ax is None:
            return (0.5, 0.5)
        return (self.ax.pos, self.ay.pos)


def _predict(a: _Axis, dt: float, q: float) -> _Axis:
    pos = a.pos + a.vel * dt
    p00 = a.p00 + 2 * dt * a.p01 + dt * dt * a.p11 + q * dt**4 / 4.0
    p01 = a.p01 + dt * a.p11 + q * dt**3 / 2.0
    p11 = a.p11 + q * dt * dt
    return _Axis(pos, a.vel, p00, p01, p11)


def _update(a: _Axis, z: float, r: float) -> _Axis:
    s = a.p00 + r
    if s <= 0:
        return _Axis(z, a.vel, 0.0, 0.0, a.p11)
    k0 = a.p00 / s
    k1 = a.p01 / s
    innov = z - a.pos
    return _Axis(
        a.pos + k0 * innov,
        a.vel + k1 * innov,
        (1 - k0) * a.p00,
        (1 - k0) * a.p01,
        a.p11 - k1 * a.p01,
    )


def smooth(state: SmootherState, sample: GazeSample) -> tuple[SmootherState, GazeSample]:
    """One predict/update step per axis. Invalid samples predict only;
    timestamps must be non-decreasing."""
    if state.t is not None and sample.t < state.t:
        raise SequencingError(f"gaze sample at t={sample.t} after t={state.t}")
    if state.ax is None:
        r = state.measurement_std**2
        init = lambda z: _Axis(z, 0.0, r, 0.0, 1.0)
        if not sample.valid:
            # nothing to seed from yet
            return replace(state, t=sample.t), GazeSample(sample.t, 0.5, 0.5, False)
        new = replace(state, t=sample.t, ax=init(sample.x), ay=init(sample.y))
        return new, GazeSample(sample.t, sample.x, sample.y, True)

    dt = sample.t - state.t
    q = state.process_noise**2
    ax = _predict(state.ax, dt, q)
    ay = _predict(state.ay, dt, q)
    if sample.valid:
        r = state.measurement_std**2
        ax = _update(ax, sample.x, r)
        ay = _update(ay, sample.y, r)
    new = replace(state, t=sample.t, ax=ax, ay=ay)
    return new, GazeSample(sample.t, ax.pos, ay.pos, sample.valid)


# ---------------------------------------------------------------------------
# Record parsing
# ---------------------------------------------------------------------------

def parse_record(line: str) -> GazeSample:
    parts = line.split()
    if len(parts) != 4:
        raise ParameterError(f"gaze record needs 4 fields, got {line!r}")
    t, x, y = float(parts[0]), float(parts[1]), float(parts[2])
    valid = parts[3] not in ("0", "0.0")
    return GazeSample(t, x, y, valid)


def format_record(s: GazeSample) -> str:
    return f"{s.t:.6f} {s.x:.6f} {s.y:.6f} {1 if s.valid else 0}"


# ---------------------------------------------------------------------------
# Sources: each answers poll(now) -> GazeSample
# ---------------------------------------------------------------------------

class FixedSource:
    """A constant gaze point."""

    def __init__(self, x: float, y: float):
        self.x = float(x)
        self.y = float(y)

    def poll(self, now: float) -> GazeSample:
        return GazeSample(now, self.x, self.y, True)


class MousePointerSource:
    """Pointer-driven gaze: feed pixel positions from the host's event loop;
    poll returns the latest position normalized to the screen."""

    def __init__(self, screen_width_px: int, screen_height_px: int):
        if screen_width_px <= 0 or screen_height_px <= 0:
            raise ParameterError("screen dimensions must be positive")
        self.w = screen_width_px
        self.h = screen_height_px
        self._latest: tuple[float, float] | None = None

    def feed(self, px: float, py: float) -> None:
        self._latest = (px / self.w, py / self.h)

    def poll(self, now: float) -> GazeSample:
        if self._latest is None:
            return GazeSample(now, 0.5, 0.5, False)
        x, y = self._latest
        return GazeSample(now, min(max(x, 0.0), 1.0), min(max(y, 0.0), 1.0), True)


class ScriptedPathSource:
    """Waypoint playback: linear interpolation between records; holds the
    first point before the script and the last one after it ends."""

    def __init__(self, records: list[GazeSample]):
        if not records:
            raise ParameterError("scripted path needs at least one record")
        self.records = sorted(records, key=lambda r: r.t)

    @classmethod
    def from_file(cls, path) -> "ScriptedPathSource":
        records = []
        with open(path, "r", encoding="ascii") as f:
            for line in f:
                line = line.strip()
                if line and not line.startswith("#"):
                    records.append(parse_record(line))
        return cls(records)

    def poll(self, now: float) -> GazeSample:
        rs = self.records
        if now <= rs[0].t:
            r = rs[0]
            return GazeSample(now, r.x, r.y, r.valid)
        if now >= rs[-1].t:
            r = rs[-1]
            return GazeSample(now, r.x, r.y, r.valid)
        for a, b in zip(rs, rs[1:]):
            if a.t <= now <= b.t:
                span = b.t - a.t
                f = 0.0 if span == 0 else (now - a.t) / span
                return GazeSample(
                    now, a.x + f * (b.x - a.x), a.y + f * (b.y - a.y), a.valid and b.valid
                )
        r = rs[-1]
        return GazeSample(now, r.x, r.y, r.valid)


class StreamSource:
    """Latest-value mailbox fed by newline-delimited records (TCP or stdin).
    A single producer thread writes, the render loop polls; no backlog is
    kept. Samples go invalid when the stream is silent for STREAM_TIMEOUT
    seconds of record time."""

    def __init__(self):
        self._lock = threading.Lock()
        self._latest: GazeSample | None = None

    def feed_line(self, line: str) -> None:
        sample = parse_record(line)
        with self._lock:
            self._latest = sample

    def start_reader(self, fileobj) -> threading.Thread:
        def run():
            for line in fileobj:
                line = line.strip()
                if line:
                    try:
                        self.feed_line(line)
                    except ParameterError:
                        continue

        th = threading.Thread(target=run, daemon=True)
        th.start()
        return th

    @classmethod
    def connect_tcp(cls, host: str, port: int) -> "StreamSource":
        import socket

        src = cls()
        sock = socket.create_connection((host, port))
        src.start_reader(sock.makefile("r", encoding="ascii"))
        return src

    def poll(self, now: float) -> GazeSample:
        with self._lock:
            latest = self._latest
        if latest is None:
            return GazeSample(now, 0.5, 0.5, False)
        stale = (now - latest.t) > STREAM_TIMEOUT
        return GazeSample(now, latest.x, latest.y, latest.valid and not stale)


class GazeProvider:
    """A source plus the smoother. Switching sources re-seeds the smoother
    from the new source's first sample, so a switch never jumps farther than
    the true position difference."""

    def __init__(self, source, process_noise: float = PROCESS_NOISE, measurement_std: float = MEASUREMENT_STD):
        self._source = source
        self._params = (process_noise, measurement_std)
        self._state = SmootherState(process_noise, measurement_std)

    @property
    def source(self):
        return self._source

    def switch(self, source) -> None:
        self._source = source
        self._state = SmootherState(*self._params)

    def sample(self, now: float) -> GazeSample:
        raw = self._source.poll(now)
        self._state, est = smooth(self._state, raw)
        return est
