"""Raster frames: linear-light float RGB in [0,1], with PNG/PPM IO.

All filtering happens in linear light; 8-bit sRGB exists only at the IO
boundary. Blur and bloom applied in gamma space distort brightness, which
is why conversion happens on load/save and nowhere else.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = [
    "Frame",
    "srgb_to_linear",
    "linear_to_srgb",
    "load_image",
    "save_image",
    "decode_image",
    "encode_png",
]


def srgb_to_linear(u: np.ndarray) -> np.ndarray:
    """IEC 61966-2-1 decode, elementwise, float in [0,1]."""
    u = np.asarray(u, dtype=np.float32)
    return np.where(u <= 0.04045, u / 12.92, ((u + 0.055) / 1.055) ** 2.4).astype(np.float32)


def linear_to_srgb(v: np.ndarray) -> np.ndarray:
    """IEC 61966-2-1 encode, elementwise, float in [0,1]."""
    v = np.clip(np.asarray(v, dtype=np.float32), 0.0, 1.0)
    return np.where(v <= 0.0031308, v * 12.92, 1.055 * v ** (1 / 2.4) - 0.055).astype(np.float32)


@dataclass(frozen=True)
class Frame:
    """A width x height raster of linear RGB triples in [0,1].

    `data` is a (height, width, 3) float32 array. Operations never mutate
    a Frame; they return new ones. Channel values stay clamped to [0,1].
    """

    data: np.ndarray

    def __post_init__(self):
        d = self.data
        if not isinstance(d, np.ndarray) or d.ndim != 3 or d.shape[2] != 3:
            raise ParameterError("frame data must be a (h, w, 3) array")
        if d.shape[0] < 1 or d.shape[1] < 1:
            raise ParameterError("frame must be at least 1x1")
        if d.dtype != np.float32:
            object.__setattr__(self, "data", d.astype(np.float32))

    def pyramid(self):
        """Mip pyramid of this frame, built lazily and cached (frames are
        immutable by convention: filters copy, never write back)."""
        pyr = getattr(self, "_pyr", None)
        if pyr is None:
            from .kernels import MipPyramid

            pyr = MipPyramid(self)
            object.__setattr__(self, "_pyr", pyr)
        return pyr

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @staticmethod
    def full(width: int, height: int, value=0.0) -> "Frame":
        """Uniform frame; `value` is a scalar or an (r, g, b) triple."""
        data = np.empty((height, width, 3), dtype=np.float32)
        data[:] = np.asarray(value, dtype=np.float32)
        return Frame(np.clip(data, 0.0, 1.0))

    @staticmethod
    def from_array(arr: np.ndarray) -> "Frame":
        """Wrap an array, clamping into [0,1]."""
        return Frame(np.clip(np.asarray(arr, dtype=np.float32), 0.0, 1.0))

    def to_u8_srgb(self) -> np.ndarray:
        """Quantize to 8-bit sRGB (the only lossy step in the pipeline)."""
        return np.round(linear_to_srgb(self.data) * 255.0).astype(np.uint8)

    @staticmethod
    def from_u8_srgb(u8: np.ndarray) -> "Frame":
        return Frame(srgb_to_linear(u8.astype(np.float32) / 255.0))

    def same_pixels(self, other: "Frame") -> bool:
        """Bit-level equality of pixel data."""
        return self.data.shape == other.data.shape and np.array_equal(self.data, other.data)


# ---------------------------------------------------------------------------
# IO: PNG via Pillow, PPM (P6) as a dependency-free fallback.
# ---------------------------------------------------------------------------

def _encode_ppm(frame: Frame) -> bytes:
    u8 = frame.to_u8_srgb()
    header = f"P6\n{frame.width} {frame.height}\n255\n".encode("ascii")
    return header + u8.tobytes()


def _decode_ppm(data: bytes) -> Frame:
    # Minimal P6 reader: whitespace/comment tolerant header, raw 8-bit payload.
    if not data.startswith(b"P6"):
        raise ValueError("not a P6 ppm")
    fields = []
    pos = 2
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] != b"\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        fields.append(int(data[start:pos]))
    pos += 1  # single whitespace after maxval
    w, h, maxval = fields
    if maxval != 255:
        raise ValueError("only 8-bit ppm supported")
    payload = data[pos : pos + w * h * 3]
    if len(payload) != w * h * 3:
        raise ValueError("truncated ppm payload")
    u8 = np.frombuffer(payload, dtype=np.uint8).reshape(h, w, 3)
    return Frame.from_u8_srgb(u8)


def encode_png(frame: Frame) -> bytes:
    from PIL import Image

    buf = io.BytesIO()
    Image.fromarray(frame.to_u8_srgb(), mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def peek_dimensions(data: bytes) -> tuple[int, int] | None:
    """Width/height from the header alone, without decoding the pixels.
    Supports PNG and P6 PPM; returns None for anything else."""
    if data[:8] == b"\x89PNG\r\n\x1a\n" and len(data) >= 24:
        w = int.from_bytes(data[16:20], "big")
        h = int.from_bytes(data[20:24], "big")
        return w, h
    if data[:2] == b"P6":
        fields = []
        pos = 2
        try:
            while len(fields) < 2:
                while data[pos : pos + 1].isspace():
                    pos += 1
                if data[pos : pos + 1] == b"#":
                    while data[pos : pos + 1] != b"\n":
                        pos += 1
                    continue
                start = pos
                while not data[pos : pos + 1].isspace():
                    pos += 1
                fields.append(int(data[start:pos]))
        except (IndexError, ValueError):
            return None
        return fields[0], fields[1]
    return None


def decode_image(data: bytes) -> Frame:
    """Decode PNG (or any Pillow-readable format) or PPM bytes."""
    if data[:2] == b"P6":
        return _decode_ppm(data)
    from PIL import Image

    with Image.open(io.BytesIO(data)) as im:
        rgb = im.convert("RGB")
        return Frame.from_u8_srgb(np.asarray(rgb, dtype=np.uint8))


def encode_image(frame: Frame, fmt: str) -> bytes:
    fmt = fmt.lower().lstrip(".")
    if fmt == "ppm":
        return _encode_ppm(frame)
    if fmt == "png":
        return encode_png(frame)
    raise ValueError(f"unsupported image format: {fmt}")


def load_image(path: str | os.PathLike) -> Frame:
    with open(path, "rb") as f:
        return decode_image(f.read())


def save_image(frame: Frame, path: str | os.PathLike) -> None:
    fmt = os.path.splitext(str(path))[1].lstrip(".").lower() or "png"
    with open(path, "wb") as f:
        f.write(encode_image(frame, fmt))
