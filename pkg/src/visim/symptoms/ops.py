"""The symptom filters. Each is a pure function (frame, ctx, config) -> Frame.

Conventions shared by every filter:
  - the documented neutral parameters return the input frame object itself,
    so neutrality is bit-exact by construction;
  - pixels outside an effect's support are copied, never resampled;
  - size-like parameters are fractions of max(width, height);
  - all randomness is derived from ctx.seed, all motion from ctx.time.
"""

from __future__ import annotations

import math
from functools import lru_cache

import cv2
import numpy as np

from ..frame import Frame
from ..kernels import bilinear_gather, blur_array, gaussian_blur, smoothstep, warp
from ..noise import NoiseField, _splitmix64
from .configs import (
    Cataract,
    CentralLoss,
    ContrastSens,
    Cvd,
    DetailLoss,
    Distortion,
    DoubleVision,
    FlickeringStars,
    FovealDarkness,
    Glare,
    Hyperopia,
    InFilling,
    MetamorphOverlay,
    MetamorphPoint,
    Nystagmus,
    PeripheralLoss,
    Retinopathy,
    Teichopsia,
)
from .context import RenderContext
from .cvd_data import cvd_matrix

__all__ = [
    "central_vision_loss",
    "hyperopia",
    "cvd",
    "contrast_sensitivity",
    "metamorph_pointwise",
    "nystagmus",
    "retinopathy",
    "teichopsia",
    "metamorph_overlay",
    "glare",
    "peripheral_vision_loss",
    "cataracts",
    "in_filling",
    "double_vision",
    "distortion",
    "foveal_darkness",
    "flickering_stars",
    "detail_loss",
    "floater_draw_list",
]

_F32 = np.float32


def mix_seed(seed: int, tag: int) -> int:
    """Derive an independent sub-seed for one consumer of the session seed."""
    state = (seed ^ (tag * 0x9E3779B97F4A7C15)) & ((1 << 64) - 1)
    _, out = _splitmix64(state)
    return out


def _full_screen(w: int, h: int) -> float:
    return float(max(w, h))


def _pixel_axes(w: int, h: int) -> tuple[np.ndarray, np.ndarray]:
    """Continuous pixel-center coordinates along each axis."""
    xs = np.arange(w, dtype=_F32) + _F32(0.5)
    ys = np.arange(h, dtype=_F32) + _F32(0.5)
    return xs, ys


def _lod_resample(frame: Frame, lod_map: np.ndarray) -> Frame:
    """Resample the pixels with positive LOD from the frame's mip pyramid;
    every other pixel is copied bit-exactly (pixels at LOD 0 resolve to
    their own exact value, so writing the whole bounding box is safe)."""
    rows = np.nonzero((lod_map > 1e-6).any(axis=1))[0]
    if rows.size == 0:
        return frame
    cols = np.nonzero((lod_map > 1e-6).any(axis=0))[0]
    y0, y1 = int(rows[0]), int(rows[-1]) + 1
    x0, x1 = int(cols[0]), int(cols[-1]) + 1
    tile = frame.pyramid().resample_tile(x0, y0, lod_map[y0:y1, x0:x1])
    out = frame.data.copy()
    out[y0:y1, x0:x1] = np.clip(tile, 0.0, 1.0)
    return Frame(out)


# ---------------------------------------------------------------------------
# Field loss family
# ---------------------------------------------------------------------------

def central_vision_loss(frame: Frame, ctx: RenderContext, cfg: CentralLoss) -> Frame:
    """Elliptical acuity loss at the gaze: coarsest mip level in the center,
    easing to the untouched source at the ellipse boundary."""
    if cfg.size <= 0:
        return frame
    h, w = frame.height, frame.width
    gx, gy = ctx.gaze_clamped(w, h)
    size_px = cfg.size * _full_screen(w, h)
    a = size_px / 2.0           # semi-major, horizontal
    b = 0.75 * a                # 4:3 ellipse
    x0 = max(int(math.floor(gx - a)), 0)
    x1 = min(int(math.ceil(gx + a)) + 1, w)
    y0 = max(int(math.floor(gy - b)), 0)
    y1 = min(int(math.ceil(gy + b)) + 1, h)
    if x0 >= x1 or y0 >= y1:
        return frame
    xs = np.arange(x0, x1, dtype=_F32) + _F32(0.5)
    ys = np.arange(y0, y1, dtype=_F32) + _F32(0.5)
    rx = (xs - _F32(gx)) / _F32(a)
    ry = (ys - _F32(gy)) / _F32(b)
    r = np.sqrt(rx[None, :] ** 2 + ry[:, None] ** 2)
    lod = frame.pyramid().coarsest * (1.0 - smoothstep(r))
    if not (lod > 1e-6).any():
        return frame
    tile = frame.pyramid().resample_tile(x0, y0, lod)
    out = frame.data.copy()
    out[y0:y1, x0:x1] = np.clip(tile, 0.0, 1.0)
    return Frame(out)


def peripheral_vision_loss(frame: Frame, ctx: RenderContext, cfg: PeripheralLoss) -> Frame:
    """Tunnel vision: source inside a circular tunnel at the gaze, easing to
    the coarsest mip level outside. size=1 keeps the whole screen sharp."""
    if cfg.size >= 1.0:
        return frame
    h, w = frame.height, frame.width
    gx, gy = ctx.gaze_clamped(w, h)
    radius = cfg.size * _full_screen(w, h) / 2.0
    xs, ys = _pixel_axes(w, h)
    r = np.sqrt((xs[None, :] - _F32(gx)) ** 2 + (ys[:, None] - _F32(gy)) ** 2)
    coarsest = frame.pyramid().coarsest
    lod = coarsest * smoothstep((r - radius) / max(radius, 1.0))
    return _lod_resample(frame, lod)


def foveal_darkness(frame: Frame, ctx: RenderContext, cfg: FovealDarkness) -> Frame:
    """Mid-gray disk at the gaze; fade moves the falloff start toward the
    center (fade=0 hard edge, fade=1 linear from the very center)."""
    if cfg.opacity <= 0 or cfg.size <= 0:
        return frame
    h, w = frame.height, frame.width
    gx, gy = ctx.gaze_clamped(w, h)
    radius = cfg.size * _full_screen(w, h) / 2.0
    xs, ys = _pixel_axes(w, h)
    r = np.sqrt((xs[None, :] - _F32(gx)) ** 2 + (ys[:, None] - _F32(gy)) ** 2)
    inside = r < radius
    if not inside.any():
        return frame
    flat_end = (1.0 - cfg.fade) * radius
    falloff = max(cfg.fade * radius, 1e-9)
    ramp = np.where(r < flat_end, 1.0, np.clip((radius - r) / falloff, 0.0, 1.0))
    alpha = (cfg.opacity * ramp).astype(_F32)[..., None]
    out = frame.data.copy()
    out[inside] = out[inside] + alpha[inside] * (_F32(0.5) - out[inside])
    return Frame(np.clip(out, 0.0, 1.0))


def in_filling(frame: Frame, ctx: RenderContext, cfg: InFilling) -> Frame:
    """A disk whose interior is filled from the surrounding texture: every
    inside pixel takes the value found radially outward on a ring at 1.1x
    the disk radius, so content inside visually disappears."""
    h, w = frame.height, frame.width
    radius = cfg.size * _full_screen(w, h)
    if radius <= 0:
        return frame
    gx, gy = ctx.gaze_clamped(w, h)
    cx = min(max(gx + cfg.position[0] * w, 0.0), float(w - 1))
    cy = min(max(gy + cfg.position[1] * h, 0.0), float(h - 1))
    xs, ys = _pixel_axes(w, h)
    dx = xs[None, :] - _F32(cx)
    dy = ys[:, None] - _F32(cy)
    rho = np.sqrt(dx**2 + dy**2)
    mask = rho < radius
    if not mask.any():
        return frame
    theta = np.arctan2(np.broadcast_to(dy, rho.shape)[mask], np.broadcast_to(dx, rho.shape)[mask])
    ring = _F32(1.1 * radius)
    sx = _F32(cx) + ring * np.cos(theta, dtype=_F32)
    sy = _F32(cy) + ring * np.sin(theta, dtype=_F32)
    out = frame.data.copy()
    out[mask] = np.clip(bilinear_gather(frame.data, sx, sy), 0.0, 1.0)
    return Frame(out)


def distortion(frame: Frame, ctx: RenderContext, cfg: Distortion) -> Frame:
    """Vortex pull toward the gaze: source radii inside `radius` are remapped
    by a power curve controlled by suction; `noise` jitters the sample
    coordinates; `inner_radius` is occluded with mid gray."""
    if cfg.suction <= 0 and cfg.noise <= 0 and cfg.inner_radius <= 0:
        return frame
    h, w = frame.height, frame.width
    gx, gy = ctx.gaze_clamped(w, h)
    full = _full_screen(w, h)
    radius = cfg.radius * full
    inner = cfg.inner_radius * full
    out = frame.data.copy()
    if radius > 0 and (cfg.suction > 0 or cfg.noise > 0):
        xs, ys = _pixel_axes(w, h)
        dx = np.broadcast_to(xs[None, :] - _F32(gx), (h, w))
        dy = np.broadcast_to(ys[:, None] - _F32(gy), (h, w))
        r = np.sqrt(dx**2 + dy**2)
        mask = r < radius
        if mask.any():
            rm = r[mask]
            safe = np.maximum(rm, _F32(1e-6))
            r_s = _F32(radius) * (rm / _F32(radius)) ** _F32(1.0 + 4.0 * cfg.suction)
            scale = r_s / safe
            sx = _F32(gx) + dx[mask] * scale
            sy = _F32(gy) + dy[mask] * scale
            if cfg.noise > 0:
                jitter = _F32(cfg.noise * 2.0)
                nf_x = NoiseField(mix_seed(ctx.seed, 11), base_frequency=1.0)
                nf_y = NoiseField(mix_seed(ctx.seed, 12), base_frequency=1.0)
                u = sx / _F32(32.0)
                v = sy / _F32(32.0)
                sx = sx + jitter * nf_x.grid(u, v)
                sy = sy + jitter * nf_y.grid(u, v)
            out[mask] = np.clip(bilinear_gather(frame.data, sx, sy), 0.0, 1.0)
    if inner > 0:
        xs, ys = _pixel_axes(w, h)
        r_in = np.sqrt((xs[None, :] - _F32(gx)) ** 2 + (ys[:, None] - _F32(gy)) ** 2)
        out[r_in < inner] = _F32(0.5)
    return Frame(out)


# ---------------------------------------------------------------------------
# Optics / color family
# ---------------------------------------------------------------------------

def hyperopia(frame: Frame, ctx: RenderContext, cfg: Hyperopia) -> Frame:
    """Acuity-driven Gaussian blur: sigma = pixels_per_degree / (2 * cpd).
    The top of the range (30 cpd, normal acuity) is the documented neutral
    and applies no blur at all."""
    if cfg.cpd >= 30.0:
        return frame
    sigma = ctx.geometry.pixels_per_degree() / (2.0 * cfg.cpd)
    return gaussian_blur(frame, sigma)


def cvd(frame: Frame, ctx: RenderContext, cfg: Cvd) -> Frame:
    """Color vision deficiency via severity-interpolated 3x3 matrices in
    linear RGB; severity 0 is the identity."""
    if cfg.severity <= 0:
        return frame
    m = cvd_matrix(cfg.type, cfg.severity).astype(_F32)
    h, w = frame.height, frame.width
    flat = frame.data.reshape(-1, 3) @ m.T
    return Frame(np.clip(flat.reshape(h, w, 3), 0.0, 1.0))


def contrast_sensitivity(frame: Frame, ctx: RenderContext, cfg: ContrastSens) -> Frame:
    """Brightness/contrast/gamma, applied per channel:
    v -> clamp((v - 0.5) * (1 + contrast) + 0.5 + brightness) ** max(gamma, 0.01)."""
    if cfg.brightness == 0 and cfg.contrast == 0 and cfg.gamma == 1:
        return frame
    scale = _F32(1.0 + cfg.contrast)
    offset = _F32(0.5 + cfg.brightness) - _F32(0.5) * scale
    v = frame.data * scale
    v += offset
    np.clip(v, 0.0, 1.0, out=v)
    g = max(cfg.gamma, 0.01)
    if g != 1.0:
        cv2.pow(v, g, dst=v)
        np.clip(v, 0.0, 1.0, out=v)
    return Frame(v)


def glare(frame: Frame, ctx: RenderContext, cfg: Glare) -> Frame:
    """Bloom: bright content above `threshold` is blurred and added back,
    so light areas glow into their surroundings."""
    if cfg.intensity <= 0 or cfg.threshold >= 1.0:
        return frame
    h, w = frame.height, frame.width
    mask = np.clip((frame.data - _F32(cfg.threshold)) / _F32(1.0 - cfg.threshold), 0.0, None)
    sigma = cfg.blur * 0.02 * w
    blurred = blur_array(mask, sigma) if sigma > 0 else mask
    out = frame.data + _F32(cfg.intensity) * blurred
    return Frame(np.clip(out, 0.0, 1.0))


def cataracts(frame: Frame, ctx: RenderContext, cfg: Cataract) -> Frame:
    """Two stages: contrast/brightness collapse toward light gray, then a
    frosted-glass displacement from a seeded noise field."""
    if cfg.severity <= 0 and cfg.frosting <= 0:
        return frame
    h, w = frame.height, frame.width
    data = frame.data
    if cfg.severity > 0:
        data = data + _F32(0.6 * cfg.severity) * (_F32(0.65) - data)
    if cfg.frosting > 0:
        amp = _F32(cfg.frosting * 0.01 * min(w, h))
        scale = _F32(6.0 / min(w, h))
        xs, ys = _pixel_axes(w, h)
        u = np.broadcast_to(xs[None, :] * scale, (h, w))
        v = np.broadcast_to(ys[:, None] * scale, (h, w))
        nf_x = NoiseField(mix_seed(ctx.seed, 21), octaves=2)
        nf_y = NoiseField(mix_seed(ctx.seed, 22), octaves=2)
        map_x = np.broadcast_to(xs[None, :] - _F32(0.5), (h, w)) + amp * nf_x.grid(u, v)
        map_y = np.broadcast_to(ys[:, None] - _F32(0.5), (h, w)) + amp * nf_y.grid(u, v)
        data = warp(np.ascontiguousarray(data), map_x, map_y)
    return Frame(np.clip(data, 0.0, 1.0))


def detail_loss(frame: Frame, ctx: RenderContext, cfg: DetailLoss) -> Frame:
    """Mosaic pixelation: box-average the image into a cluster grid (given
    count along the larger axis, aspect-scaled on the other) and bilinearly
    interpolate between cluster centers. A grid finer than the pixels is a
    no-op."""
    h, w = frame.height, frame.width
    clusters = int(cfg.clusters)
    if clusters >= max(w, h):
        return frame
    if w >= h:
        nx = clusters
        ny = max(1, round(clusters * h / w))
    else:
        ny = clusters
        nx = max(1, round(clusters * w / h))
    bx = (np.arange(nx + 1, dtype=np.int64) * w) // nx
    by = (np.arange(ny + 1, dtype=np.int64) * h) // ny

    sums = np.add.reduceat(frame.data, bx[:-1], axis=1)
    sums = np.add.reduceat(sums, by[:-1], axis=0)
    counts = np.diff(bx)[None, :, None] * np.diff(by)[:, None, None]
    grid = (sums / counts).astype(_F32)

    centers_x = ((bx[:-1] + bx[1:]) / 2.0).astype(_F32)
    centers_y = ((by[:-1] + by[1:]) / 2.0).astype(_F32)
    xs, ys = _pixel_axes(w, h)

    def lerp_axis(values, centers, coords, axis):
        idx = np.clip(np.searchsorted(centers, coords), 1, len(centers) - 1) if len(centers) > 1 else None
        if idx is None:
            return np.repeat(values, len(coords), axis=axis)
        c0 = centers[idx - 1]
        c1 = centers[idx]
        t = np.clip((coords - c0) / np.maximum(c1 - c0, 1e-9), 0.0, 1.0).astype(_F32)
        lo = np.take(values, idx - 1, axis=axis)
        hi = np.take(values, idx, axis=axis)
        shape = [1, 1, 1]
        shape[axis] = len(coords)
        t = t.reshape(shape)
        return lo + t * (hi - lo)

    wide = lerp_axis(grid, centers_x, xs, axis=1)
    out = lerp_axis(wide, centers_y, ys, axis=0)
    return Frame(np.clip(out, 0.0, 1.0))


# ---------------------------------------------------------------------------
# Displacement family
# ---------------------------------------------------------------------------

def _shift_columns(data: np.ndarray, offset: float) -> np.ndarray:
    """Horizontal shift by `offset` pixels to the right, clamp-to-edge."""
    h, w = data.shape[:2]
    if float(offset) == int(offset):
        idx = np.clip(np.arange(w) - int(offset), 0, w - 1)
        return data[:, idx]
    xs, ys = _pixel_axes(w, h)
    map_x = np.broadcast_to(xs[None, :] - _F32(0.5) - _F32(offset), (h, w))
    map_y = np.broadcast_to(ys[:, None] - _F32(0.5), (h, w))
    return warp(data, map_x, map_y)


def nystagmus(frame: Frame, ctx: RenderContext, cfg: Nystagmus) -> Frame:
    """Sawtooth horizontal jerk: the frame rises to `amplitude` percent of
    the width over `speed` seconds, then snaps back. speed=0 means no
    motion."""
    amp_px = cfg.amplitude / 100.0 * frame.width
    if amp_px <= 0 or cfg.speed <= 0:
        return frame
    phase = math.fmod(ctx.time / cfg.speed, 1.0)
    if phase < 0:
        phase += 1.0
    offset = amp_px * phase
    if offset == 0:
        return frame
    return Frame(np.clip(_shift_columns(frame.data, offset), 0.0, 1.0))


def double_vision(frame: Frame, ctx: RenderContext, cfg: DoubleVision) -> Frame:
    """Two copies at +/- displacement, each at 50 percent opacity."""
    d = cfg.displacement * _full_screen(frame.width, frame.height)
    if d <= 0:
        return frame
    left = _shift_columns(frame.data, -d)
    right = _shift_columns(frame.data, d)
    return Frame(np.clip(_F32(0.5) * left + _F32(0.5) * right, 0.0, 1.0))


def metamorph_pointwise(frame: Frame, ctx: RenderContext, cfg: MetamorphPoint) -> Frame:
    """Straight lines bend near the gaze: a horizontal and a vertical band
    through the gaze displace pixels perpendicular to the line, strongest at
    the line and at the gaze, zero at the band edges."""
    if cfg.strength <= 0:
        return frame
    h, w = frame.height, frame.width
    gx, gy = ctx.gaze_clamped(w, h)
    half_band = 0.02 * h
    peak = cfg.strength * 0.01 * h
    along_x = 0.25 * w
    along_y = 0.25 * h

    xs, ys = _pixel_axes(w, h)
    px = np.broadcast_to(xs[None, :], (h, w))
    py = np.broadcast_to(ys[:, None], (h, w))
    bump = lambda t: 1.0 - smoothstep(t)

    # perpendicular displacement from the horizontal line (moves content in y)
    dy = peak * bump(np.abs(py - _F32(gy)) / _F32(half_band)) * bump(np.abs(px - _F32(gx)) / _F32(along_x))
    # ... and from the vertical line (moves content in x)
    dx = peak * bump(np.abs(px - _F32(gx)) / _F32(half_band)) * bump(np.abs(py - _F32(gy)) / _F32(along_y))

    mask = (dx > 1e-6) | (dy > 1e-6)
    if not mask.any():
        return frame
    out = frame.data.copy()
    sampled = bilinear_gather(frame.data, px[mask] - dx[mask], py[mask] - dy[mask])
    out[mask] = np.clip(sampled, 0.0, 1.0)
    return Frame(out)


def metamorph_overlay(frame: Frame, ctx: RenderContext, cfg: MetamorphOverlay) -> Frame:
    """Whole-screen wavy displacement: horizontal offset driven by a sine
    over y, vertical offset by the symmetric sine over x, drifting with
    time at `speed`."""
    h, w = frame.height, frame.width
    amp_px = cfg.amplitude * 0.05 * min(w, h)
    if amp_px <= 0:
        return frame
    xs, ys = _pixel_axes(w, h)
    two_pi = 2.0 * math.pi
    dx_rows = amp_px * np.sin(two_pi * (cfg.frequency * 10.0 * ys / h + cfg.speed * ctx.time))
    dy_cols = amp_px * np.sin(two_pi * (cfg.frequency * 10.0 * xs / w + cfg.speed * ctx.time))
    map_x = (xs[None, :] - _F32(0.5)) - dx_rows[:, None].astype(_F32)
    map_y = (ys[:, None] - _F32(0.5)) - dy_cols[None, :].astype(_F32)
    out = warp(frame.data, np.ascontiguousarray(map_x), np.ascontiguousarray(map_y))
    return Frame(np.clip(out, 0.0, 1.0))


# ---------------------------------------------------------------------------
# Overlay family
# ---------------------------------------------------------------------------

def floater_draw_list(ctx: RenderContext, cfg: Retinopathy, width: int, height: int):
    """Deterministic floater sprites for one render: centers, radii and the
    per-blob noise offsets. Exposed separately so tests can count and
    geometry-check the draw list without rasterizing."""
    n = int(cfg.density)
    rng = np.random.default_rng(mix_seed(ctx.seed, 31))
    unit_xy = rng.random((n, 2))
    unit_r = rng.random(n)
    angles = rng.random(n) * 2.0 * math.pi
    noise_off = rng.random((n, 2)) * 512.0
    base = 0.01 * min(width, height) / 4.0
    radii = (2.0 + 10.0 * unit_r) * base * cfg.floater_size

    t = ctx.time
    if cfg.centering:
        gx, gy = ctx.gaze[0], ctx.gaze[1]
        circle = cfg.circle_radius * _full_screen(width, height)
        dist = np.sqrt(unit_xy[:, 0]) * circle
        theta = angles + cfg.speed * 0.4 * t
        cx = gx + dist * np.cos(theta)
        cy = gy + dist * np.sin(theta)
    else:
        margin = float(np.max(radii)) if n else 0.0
        vel = cfg.speed * 0.03 * min(width, height)
        span_x = width + 2 * margin
        span_y = height + 2 * margin
        cx = np.mod(unit_xy[:, 0] * span_x + vel * np.cos(angles) * t, span_x) - margin
        cy = np.mod(unit_xy[:, 1] * span_y + vel * np.sin(angles) * t, span_y) - margin
    return cx, cy, radii, noise_off


def retinopathy(frame: Frame, ctx: RenderContext, cfg: Retinopathy) -> Frame:
    """Floaters: noise-shaped dots with radial falloff, black or white,
    drifting with `speed`; optionally confined to a circle that follows the
    gaze."""
    if cfg.density <= 0 or cfg.opacity <= 0:
        return frame
    h, w = frame.height, frame.width
    gx, gy = ctx.gaze_clamped(w, h)
    ctx = ctx.with_gaze(gx, gy)
    cx, cy, radii, noise_off = floater_draw_list(ctx, cfg, w, h)
    color = _F32(0.0 if cfg.color == "black" else 1.0)
    nf = NoiseField(mix_seed(ctx.seed, 32))
    out = frame.data.copy()
    for i in range(len(radii)):
        r = float(radii[i])
        x0 = int(math.floor(cx[i] - r))
        x1 = int(math.ceil(cx[i] + r)) + 1
        y0 = int(math.floor(cy[i] - r))
        y1 = int(math.ceil(cy[i] + r)) + 1
        x0c, x1c = max(x0, 0), min(x1, w)
        y0c, y1c = max(y0, 0), min(y1, h)
        if x0c >= x1c or y0c >= y1c:
            continue
        xs = np.arange(x0c, x1c, dtype=_F32) + 0.5 - _F32(cx[i])
        ys = np.arange(y0c, y1c, dtype=_F32) + 0.5 - _F32(cy[i])
        rho = np.sqrt(xs[None, :] ** 2 + ys[:, None] ** 2) / _F32(r)
        radial = 1.0 - smoothstep(rho)
        shape = 0.5 + 0.5 * nf.grid(
            xs[None, :] / _F32(r) * 1.5 + _F32(noise_off[i, 0]),
            ys[:, None] / _F32(r) * 1.5 + _F32(noise_off[i, 1]),
        )
        alpha = (_F32(cfg.opacity) * radial * shape)[..., None]
        patch = out[y0c:y1c, x0c:x1c]
        patch += alpha * (color - patch)
    return Frame(np.clip(out, 0.0, 1.0))


def _hsv_to_rgb(hue: float) -> tuple[float, float, float]:
    """Saturated bright color for a hue in [0, 1)."""
    i = int(hue * 6.0) % 6
    f = hue * 6.0 - math.floor(hue * 6.0)
    q = 1.0 - f
    return [(1, f, 0), (q, 1, 0), (0, 1, f), (0, q, 1), (f, 0, 1), (1, 0, q)][i]


def teichopsia(frame: Frame, ctx: RenderContext, cfg: Teichopsia) -> Frame:
    """Scintillating fortification arc to the right of the gaze: a zig-zag
    polyline whose segment colors cycle through hues with a 1 s period,
    blended at `strength`."""
    if cfg.strength <= 0:
        return frame
    h, w = frame.height, frame.width
    gx, gy = ctx.gaze_clamped(w, h)
    arc_r = 0.15 * w
    thickness = max(2.0, 0.012 * w)
    n_seg = 24
    angles = np.linspace(-math.pi / 3, math.pi / 3, n_seg + 1)
    radii = arc_r * (1.0 + 0.08 * np.where(np.arange(n_seg + 1) % 2 == 0, 1.0, -1.0))
    px = gx + radii * np.cos(angles)
    py = gy + radii * np.sin(angles)

    out = frame.data.copy()
    half = thickness / 2.0
    for k in range(n_seg):
        ax, ay, bx_, by_ = px[k], py[k], px[k + 1], py[k + 1]
        x0 = max(int(math.floor(min(ax, bx_) - half)), 0)
        x1 = min(int(math.ceil(max(ax, bx_) + half)) + 1, w)
        y0 = max(int(math.floor(min(ay, by_) - half)), 0)
        y1 = min(int(math.ceil(max(ay, by_) + half)) + 1, h)
        if x0 >= x1 or y0 >= y1:
            continue
        xs = np.arange(x0, x1, dtype=_F32) + 0.5
        ys = np.arange(y0, y1, dtype=_F32) + 0.5
        ex, ey = bx_ - ax, by_ - ay
        seg_len2 = max(ex * ex + ey * ey, 1e-9)
        tpar = ((xs[None, :] - ax) * ex + (ys[:, None] - ay) * ey) / seg_len2
        tpar = np.clip(tpar, 0.0, 1.0)
        dist = np.sqrt((xs[None, :] - (ax + tpar * ex)) ** 2 + (ys[:, None] - (ay + tpar * ey)) ** 2)
        fall = np.clip(1.0 - (dist / half) ** 2, 0.0, None)
        alpha = (_F32(cfg.strength) * fall)[..., None].astype(_F32)
        hue = (ctx.time + 0.13 * k) % 1.0
        color = np.array(_hsv_to_rgb(hue), dtype=_F32)
        patch = out[y0:y1, x0:x1]
        patch += alpha * (color - patch)
    return Frame(np.clip(out, 0.0, 1.0))


@lru_cache(maxsize=16)
def _flicker_schedule(seed: int):
    """Spawn times (exponential gaps at 4/s), unit positions and unit radii
    for the flicker spots; cycles after _FLICKER_HORIZON seconds."""
    rng = np.random.default_rng(mix_seed(seed, 41))
    n = 4096
    gaps = rng.exponential(1.0 / 4.0, n)
    times = np.cumsum(gaps)
    pos = rng.random((n, 2))
    unit_r = 1.0 - rng.random(n)  # in (0, 1]
    return times, pos, unit_r


_FLICKER_LIFETIME = 0.5
_FLICKER_HORIZON = 900.0


def flickering_stars(frame: Frame, ctx: RenderContext, cfg: FlickeringStars) -> Frame:
    """Short-lived spots (4/s, 0.5 s lifetime) where detail drops: inside a
    live spot the image is resampled at LOD 3, eased back to 0 at the spot
    edge by `fade`."""
    if cfg.radius <= 0:
        return frame
    h, w = frame.height, frame.width
    times, pos, unit_r = _flicker_schedule(ctx.seed)
    t = math.fmod(ctx.time, _FLICKER_HORIZON)
    live = np.nonzero((times <= t) & (t < times + _FLICKER_LIFETIME))[0]
    if live.size == 0:
        return frame
    max_r = cfg.radius * _full_screen(w, h)
    lod_map = np.zeros((h, w), dtype=_F32)
    for i in live:
        r = max(unit_r[i] * max_r, 1.0)
        cx = pos[i, 0] * w
        cy = pos[i, 1] * h
        x0 = max(int(math.floor(cx - r)), 0)
        x1 = min(int(math.ceil(cx + r)) + 1, w)
        y0 = max(int(math.floor(cy - r)), 0)
        y1 = min(int(math.ceil(cy + r)) + 1, h)
        if x0 >= x1 or y0 >= y1:
            continue
        xs = np.arange(x0, x1, dtype=_F32) + 0.5 - _F32(cx)
        ys = np.arange(y0, y1, dtype=_F32) + 0.5 - _F32(cy)
        rho = np.sqrt(xs[None, :] ** 2 + ys[:, None] ** 2) / _F32(r)
        edge_ramp = np.clip(rho, 0.0, 1.0)
        lod = np.where(rho <= 1.0, 3.0 * (1.0 - cfg.fade * edge_ramp), 0.0)
        region = lod_map[y0:y1, x0:x1]
        np.maximum(region, lod, out=region)
    return _lod_resample(frame, lod_map)
