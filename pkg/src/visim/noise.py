"""Seeded 2-D gradient noise.

The permutation table is built from the seed with splitmix64 driving a
Fisher-Yates shuffle, all in exact integer arithmetic, so the same seed
yields the same field on every platform (and in any other implementation
that follows the same construction).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ParameterError

__all__ = ["NoiseField", "permutation_from_seed"]

_MASK64 = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z = z ^ (z >> 31)
    return state, z


@lru_cache(maxsize=64)
def permutation_from_seed(seed: int) -> tuple[int, ...]:
    """256-entry permutation: Fisher-Yates over [0..255], swaps drawn
    from splitmix64(seed). Pure integer math, platform independent."""
    perm = list(range(256))
    state = seed & _MASK64
    for i in range(255, 0, -1):
        state, out = _splitmix64(state)
        j = out % (i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return tuple(perm)


# 8 gradient directions; diagonal and axis-aligned unit-ish vectors.
_GRAD_X = np.array([1, -1, 1, -1, 1, -1, 0, 0], dtype=np.float32)
_GRAD_Y = np.array([1, 1, -1, -1, 0, 0, 1, -1], dtype=np.float32)


@lru_cache(maxsize=64)
def _tables(seed: int) -> tuple[np.ndarray, np.ndarray]:
    perm = np.array(permutation_from_seed(seed), dtype=np.int64)
    doubled = np.concatenate([perm, perm])
    return doubled, perm


def _fade(t: np.ndarray) -> np.ndarray:
    return t * t * t * (t * (t * 6.0 - 15.0) + 10.0)


def _grad_dot(h: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    g = h & 7
    return _GRAD_X[g] * x + _GRAD_Y[g] * y


def _noise2(seed: int, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Single-octave gradient noise over arrays; zero on lattice points."""
    p, _ = _tables(seed)
    ui = np.floor(u).astype(np.int64)
    vi = np.floor(v).astype(np.int64)
    uf = (u - ui).astype(np.float32)
    vf = (v - vi).astype(np.float32)
    xi = ui & 255
    yi = vi & 255

    aa = p[p[xi] + yi]
    ab = p[p[xi] + ((yi + 1) & 255)]
    ba = p[p[(xi + 1) & 255] + yi]
    bb = p[p[(xi + 1) & 255] + ((yi + 1) & 255)]

    su = _fade(uf)
    sv = _fade(vf)
    n00 = _grad_dot(aa, uf, vf)
    n10 = _grad_dot(ba, uf - 1.0, vf)
    n01 = _grad_dot(ab, uf, vf - 1.0)
    n11 = _grad_dot(bb, uf - 1.0, vf - 1.0)
    nx0 = n00 + su * (n10 - n00)
    nx1 = n01 + su * (n11 - n01)
    return nx0 + sv * (nx1 - nx0)


@dataclass(frozen=True)
class NoiseField:
    """Deterministic multi-octave noise; value(x, y, t) is in [-1, 1]."""

    seed: int
    octaves: int = 1
    base_frequency: float = 1.0

    def __post_init__(self):
        if self.octaves < 1:
            raise ParameterError("octaves must be >= 1")
        if not (self.base_frequency > 0) or not np.isfinite(self.base_frequency):
            raise ParameterError("base_frequency must be positive and finite")

    def value(self, x: float, y: float, t: float = 0.0) -> float:
        return float(self.grid(np.float32(x), np.float32(y), t))

    def grid(self, xs: np.ndarray, ys: np.ndarray, t: float = 0.0) -> np.ndarray:
        """Vectorized evaluation; xs/ys broadcast together. `t` slides the
        sample domain diagonally, animating the field."""
        u = np.asarray(xs, dtype=np.float32) * np.float32(self.base_frequency) + np.float32(t)
        v = np.asarray(ys, dtype=np.float32) * np.float32(self.base_frequency) + np.float32(t)
        total = np.zeros(np.broadcast(u, v).shape, dtype=np.float32)
        amp = np.float32(1.0)
        norm = np.float32(0.0)
        for octave in range(self.octaves):
            scale = np.float32(1 << octave)
            total += amp * _noise2(self.seed, u * scale, v * scale)
            norm += amp
            amp *= np.float32(0.5)
        return np.clip(total / norm, -1.0, 1.0)
