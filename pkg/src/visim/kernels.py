"""Pixel kernels shared by the symptom filters: separable Gaussian blur,
box-filtered mip pyramids with fractional level-of-detail sampling, and
bilinear warps.

cv2 provides the inner loops; the contracts here (kernel truncation,
normalization, clamp-to-edge, ceil-halved pyramid dimensions) are what the
tests pin down, against independent reference implementations.
"""

from __future__ import annotations

import math

import cv2
import numpy as np

from .errors import ParameterError
from .frame import Frame

_F32 = np.float32

__all__ = [
    "gaussian_kernel",
    "gaussian_blur",
    "blur_array",
    "MipPyramid",
    "build_pyramid",
    "downsample_lod",
    "bilinear_gather",
    "warp",
    "smoothstep",
]


def smoothstep(t: np.ndarray) -> np.ndarray:
    """Hermite ease 3t^2 - 2t^3, clamped to [0, 1]."""
    t = np.clip(t, 0.0, 1.0)
    return t * t * (3.0 - 2.0 * t)


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Normalized 1-D Gaussian, truncated at radius ceil(3*sigma)."""
    if not math.isfinite(sigma) or sigma < 0:
        raise ParameterError(f"sigma must be finite and >= 0, got {sigma!r}")
    if sigma == 0:
        return np.array([1.0], dtype=np.float32)
    radius = math.ceil(3.0 * sigma)
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(x * x) / (2.0 * sigma * sigma))
    k /= k.sum()
    return k.astype(np.float32)


def blur_array(data: np.ndarray, sigma: float) -> np.ndarray:
    """Separable clamp-to-edge Gaussian over a (h, w[, c]) float32 array."""
    k = gaussian_kernel(sigma)
    if k.size == 1:
        return data
    return cv2.sepFilter2D(data, -1, k, k, borderType=cv2.BORDER_REPLICATE)


def gaussian_blur(frame: Frame, sigma: float) -> Frame:
    """Gaussian blur of a frame; sigma=0 returns the input unchanged."""
    if not math.isfinite(sigma) or sigma < 0:
        raise ParameterError(f"sigma must be finite and >= 0, got {sigma!r}")
    if sigma == 0:
        return frame
    out = blur_array(frame.data, sigma)
    np.clip(out, 0.0, 1.0, out=out)
    return Frame(out)


def bilinear_gather(data: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Exact bilinear lookup at continuous coords (pixel centers at i+0.5),
    clamp-to-edge. Returns one rgb triple per coordinate."""
    h, w = data.shape[:2]
    xf = np.asarray(xs, dtype=np.float32) - 0.5
    yf = np.asarray(ys, dtype=np.float32) - 0.5
    x0 = np.floor(xf).astype(np.int64)
    y0 = np.floor(yf).astype(np.int64)
    tx = (xf - x0).astype(np.float32)[..., None]
    ty = (yf - y0).astype(np.float32)[..., None]
    x0c = np.clip(x0, 0, w - 1)
    x1c = np.clip(x0 + 1, 0, w - 1)
    y0c = np.clip(y0, 0, h - 1)
    y1c = np.clip(y0 + 1, 0, h - 1)
    top = data[y0c, x0c] * (1.0 - tx) + data[y0c, x1c] * tx
    bot = data[y1c, x0c] * (1.0 - tx) + data[y1c, x1c] * tx
    return top * (1.0 - ty) + bot * ty


def warp(data: np.ndarray, map_x: np.ndarray, map_y: np.ndarray) -> np.ndarray:
    """Backward warp: out(x, y) = bilinear(data, map_x, map_y), clamp-to-edge.

    Maps are in pixel-index coordinates (cv2 convention: integer = pixel
    center), so map_x = x, map_y = y is the identity.
    """
    return cv2.remap(
        data,
        np.ascontiguousarray(map_x, dtype=np.float32),
        np.ascontiguousarray(map_y, dtype=np.float32),
        cv2.INTER_LINEAR,
        borderMode=cv2.BORDER_REPLICATE,
    )


class MipPyramid:
    """Box-filtered mip chain over a frame; level L is ceil(w/2^L) x ceil(h/2^L),
    down to 1x1. Supports bilinear sampling at real-valued LOD: fractional
    levels blend the two adjacent pyramid levels."""

    def __init__(self, frame: Frame):
        levels = [frame.data]
        while max(levels[-1].shape[:2]) > 1:
            h, w = levels[-1].shape[:2]
            nh, nw = (h + 1) // 2, (w + 1) // 2
            levels.append(cv2.resize(levels[-1], (nw, nh), interpolation=cv2.INTER_AREA))
        self.levels = levels
        self.base_width = frame.width
        self.base_height = frame.height
        self._atlas = None

    @property
    def coarsest(self) -> int:
        return len(self.levels) - 1

    def _sample_level(self, level: int, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        lv = self.levels[level]
        lh, lw = lv.shape[:2]
        # Ratio mapping keeps pixel centers aligned across ceil-sized levels.
        sx = np.asarray(xs, dtype=np.float32) * np.float32(lw / self.base_width)
        sy = np.asarray(ys, dtype=np.float32) * np.float32(lh / self.base_height)
        return bilinear_gather(lv, sx, sy)

    def sample(self, xs, ys, lod) -> np.ndarray:
        """Sample at base-image coords (pixel centers at i+0.5) and LOD.
        LOD beyond the coarsest level clamps; lod=0 at a pixel center
        reproduces the source pixel exactly."""
        xs = np.atleast_1d(np.asarray(xs, dtype=np.float32))
        ys = np.atleast_1d(np.asarray(ys, dtype=np.float32))
        lods = np.broadcast_to(np.atleast_1d(np.asarray(lod, dtype=np.float32)), xs.shape)
        lods = np.clip(lods, 0.0, float(self.coarsest))
        l0 = np.floor(lods).astype(np.int64)
        frac = (lods - l0).astype(np.float32)

        out = np.empty(xs.shape + (3,), dtype=np.float32)
        for level in np.unique(l0):
            m = l0 == level
            lo = self._sample_level(int(level), xs[m], ys[m])
            f = frac[m][..., None]
            if int(level) < self.coarsest and np.any(f > 0):
                hi = self._sample_level(int(level) + 1, xs[m], ys[m])
                out[m] = lo * (1.0 - f) + hi * f
            else:
                out[m] = lo
        return out


    def _atlas_tables(self):
        """All levels packed into one image (1 px replicated padding between
        blocks) plus per-level scale/offset lookup tables, so a whole
        variable-LOD region resolves with two remap calls."""
        if self._atlas is not None:
            return self._atlas
        n = len(self.levels)
        aw = self.base_width + 2
        heights = [lv.shape[0] + 2 for lv in self.levels]
        atlas = np.empty((sum(heights), aw, 3), dtype=np.float32)
        y_starts = np.zeros(n, dtype=np.float32)
        xscale = np.zeros(n, dtype=np.float32)
        yscale = np.zeros(n, dtype=np.float32)
        xmax = np.zeros(n, dtype=np.float32)
        ymax = np.zeros(n, dtype=np.float32)
        y = 0
        for i, lv in enumerate(self.levels):
            lh, lw = lv.shape[:2]
            padded = cv2.copyMakeBorder(lv, 1, 1, 1, aw - lw - 1, cv2.BORDER_REPLICATE)
            atlas[y : y + lh + 2] = padded
            y_starts[i] = y + 1
            xscale[i] = lw / self.base_width
            yscale[i] = lh / self.base_height
            xmax[i] = lw - 1
            ymax[i] = lh - 1
            y += lh + 2
        self._atlas = (atlas, y_starts, xscale, yscale, xmax, ymax)
        return self._atlas

    def resample_tile(self, x0: int, y0: int, lod_tile: np.ndarray) -> np.ndarray:
        """Values for the rectangle starting at base pixel (x0, y0), sampled
        at the per-pixel LOD in lod_tile. Pixels with lod 0 come back
        bit-exact. Equivalent to sample() per pixel, vectorized via the
        level atlas; both adjacent-level lookups ride one remap call."""
        atlas, y_starts, xscale, yscale, xmax, ymax = self._atlas_tables()
        th, tw = lod_tile.shape
        lmax = self.coarsest
        lods = np.clip(lod_tile, 0.0, float(lmax)).astype(np.float32)
        l0 = lods.astype(np.int32)
        frac = (lods - l0)[..., None]
        bx = (np.arange(tw, dtype=_F32) + _F32(x0) + _F32(0.5))[None, :]
        by = (np.arange(th, dtype=_F32) + _F32(y0) + _F32(0.5))[:, None]
        blend = bool(np.any(frac > 0))

        def fill_maps(levels, sx, sy):
            np.multiply(bx, xscale.take(levels), out=sx)
            sx -= _F32(0.5)
            np.clip(sx, 0.0, xmax.take(levels), out=sx)
            sx += _F32(1.0)  # atlas x padding
            np.multiply(by, yscale.take(levels), out=sy)
            sy -= _F32(0.5)
            np.clip(sy, 0.0, ymax.take(levels), out=sy)
            sy += y_starts.take(levels)

        rows = 2 * th if blend else th
        sx = np.empty((rows, tw), dtype=_F32)
        sy = np.empty((rows, tw), dtype=_F32)
        fill_maps(l0, sx[:th], sy[:th])
        if blend:
            fill_maps(np.minimum(l0 + 1, lmax), sx[th:], sy[th:])
        looked = cv2.remap(atlas, sx, sy, cv2.INTER_LINEAR, borderMode=cv2.BORDER_REPLICATE)
        lo = looked[:th]
        if blend:
            hi = looked[th:]
            hi -= lo
            hi *= frac
            lo += hi
        return lo


def build_pyramid(frame: Frame) -> MipPyramid:
    return MipPyramid(frame)


def downsample_lod(frame: Frame, lod: float):
    """Bind a pyramid sampler at a fixed LOD; returns sample(x, y) -> rgb."""
    if not math.isfinite(lod) or lod < 0:
        raise ParameterError(f"lod must be finite and >= 0, got {lod!r}")
    pyr = MipPyramid(frame)

    def sample(x, y):
        return pyr.sample(x, y, lod)

    return sample
