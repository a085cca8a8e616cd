"""Assessment artifacts: an inverted Amsler grid sized from the viewing
geometry (one cell per degree of visual angle), a letter-triplet contrast
chart with log-stepped Weber contrast, and letterboxed display of externally
supplied test plates.

Letters come from a built-in 5x7 pixel font (the ten Sloan letters) scaled
by integer factors, so charts are deterministic and free of font
dependencies.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import cv2
import numpy as np

from .errors import SpecError
from .frame import Frame, load_image
from .geometry import DEFAULT_GEOMETRY, ViewingGeometry

__all__ = [
    "Annotation",
    "AmslerSpec",
    "render_amsler",
    "ContrastChartSpec",
    "ContrastChart",
    "render_contrast_chart",
    "display_plate",
    "annotations_to_json",
    "annotations_from_json",
    "SLOAN_LETTERS",
]

_F32 = np.float32

SLOAN_LETTERS = "CDHKNORSVZ"

_GLYPHS = {
    "C": [" ### ", "#   #", "#    ", "#    ", "#    ", "#   #", " ### "],
    "D": ["#### ", "#   #", "#   #", "#   #", "#   #", "#   #", "#### "],
    "H": ["#   #", "#   #", "#   #", "#####", "#   #", "#   #", "#   #"],
    "K": ["#   #", "#  # ", "# #  ", "##   ", "# #  ", "#  # ", "#   #"],
    "N": ["#   #", "##  #", "# # #", "#  ##", "#   #", "#   #", "#   #"],
    "O": [" ### ", "#   #", "#   #", "#   #", "#   #", "#   #", " ### "],
    "R": ["#### ", "#   #", "#   #", "#### ", "# #  ", "#  # ", "#   #"],
    "S": [" ####", "#    ", "#    ", " ### ", "    #", "    #", "#### "],
    "V": ["#   #", "#   #", "#   #", "#   #", "#   #", " # # ", "  #  "],
    "Z": ["#####", "    #", "   # ", "  #  ", " #   ", "#    ", "#####"],
}


def _glyph_mask(letter: str, scale: int) -> np.ndarray:
    rows = _GLYPHS[letter]
    bits = np.array([[c == "#" for c in row] for row in rows], dtype=bool)
    return np.kron(bits, np.ones((scale, scale), dtype=bool))


# ---------------------------------------------------------------------------
# Amsler grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Annotation:
    label: str
    points: tuple[tuple[float, float], ...]  # normalized [0,1]^2


@dataclass(frozen=True)
class AmslerSpec:
    geometry: ViewingGeometry = DEFAULT_GEOMETRY
    grid_extent_degrees: int = 10       # cells on each side of the center
    line_width_px: int = 2
    annotations: tuple[Annotation, ...] = ()


def amsler_cell_pitch(geometry: ViewingGeometry) -> int:
    """One grid cell subtends exactly 1 degree: pitch = round(px/deg)."""
    return int(round(geometry.pixels_per_degree()))


def render_amsler(spec: AmslerSpec) -> Frame:
    """Inverted Amsler grid: white lines on black, central fixation dot,
    annotation polylines overlaid in mid gray."""
    g = spec.geometry
    w, h = g.screen_width_px, g.screen_height_px
    cell = amsler_cell_pitch(g)
    half_span = spec.grid_extent_degrees * cell
    if 2 * half_span + spec.line_width_px > min(w, h):
        raise SpecError(
            f"grid ({2 * half_span}px at {cell}px/cell) does not fit the {w}x{h} screen"
        )
    img = np.zeros((h, w, 3), dtype=_F32)
    cx, cy = w // 2, h // 2
    lw = spec.line_width_px
    lo = lw // 2
    hi = lw - lo
    for k in range(-spec.grid_extent_degrees, spec.grid_extent_degrees + 1):
        x = cx + k * cell
        img[cy - half_span : cy + half_span + 1, x - lo : x + hi] = 1.0
        y = cy + k * cell
        img[y - lo : y + hi, cx - half_span : cx + half_span + 1] = 1.0
    # fixation dot
    dot_r = max(2, cell // 5)
    ys, xs = np.mgrid[0:h, 0:w]
    img[(xs - cx) ** 2 + (ys - cy) ** 2 <= dot_r**2] = 1.0
    for ann in spec.annotations:
        pts = np.array(
            [[p[0] * (w - 1), p[1] * (h - 1)] for p in ann.points], dtype=np.int32
        )
        if len(pts) >= 2:
            cv2.polylines(img, [pts], isClosed=False, color=(0.5, 0.5, 0.5), thickness=3)
        elif len(pts) == 1:
            cv2.circle(img, tuple(pts[0]), 3, (0.5, 0.5, 0.5), -1)
    return Frame(np.clip(img, 0.0, 1.0))


def annotations_to_json(annotations) -> str:
    doc = {
        "polylines": [
            {"label": a.label, "points": [[float(x), float(y)] for x, y in a.points]}
            for a in annotations
        ]
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def annotations_from_json(text: str) -> tuple[Annotation, ...]:
    doc = json.loads(text)
    return tuple(
        Annotation(str(item.get("label", "")), tuple((float(x), float(y)) for x, y in item["points"]))
        for item in doc.get("polylines", [])
    )


# ---------------------------------------------------------------------------
# Contrast chart
# ---------------------------------------------------------------------------

BACKGROUND = 0.5


@dataclass(frozen=True)
class ContrastChartSpec:
    triplets: int = 8
    contrast_step: float = 0.15         # log10 units per triplet
    letter_height_px: int = 42
    seed: int = 0


@dataclass(frozen=True)
class ContrastChart:
    frame: Frame
    triplets_rendered: int
    letters: tuple[str, ...]            # one 3-letter group per rendered triplet
    contrasts: tuple[float, ...]        # Weber contrast magnitude per triplet


def triplet_contrast(k: int, step: float) -> float:
    """Weber contrast magnitude of triplet k: 10^(-k*step) of full."""
    return 10.0 ** (-k * step)


def render_contrast_chart(spec: ContrastChartSpec) -> ContrastChart:
    """Rows of letter triplets on mid gray, two triplets per row, each
    triplet one log step lower in contrast. Stops early once the linear
    letter/background difference falls below one 8-bit step, reporting how
    many triplets were actually drawn."""
    if spec.triplets < 1:
        raise SpecError("need at least one triplet")
    scale = max(1, spec.letter_height_px // 7)
    gw, gh = 5 * scale, 7 * scale
    gap = 2 * scale
    margin = 4 * scale
    triplet_w = 3 * gw + 2 * gap
    rows = spec.triplets
    width = margin * 2 + triplet_w
    height = margin * 2 + rows * gh + (rows - 1) * 2 * gap

    img = np.full((height, width, 3), _F32(BACKGROUND), dtype=_F32)
    rng = np.random.default_rng(spec.seed)
    letters: list[str] = []
    contrasts: list[float] = []
    rendered = 0
    for k in range(spec.triplets):
        contrast = triplet_contrast(k, spec.contrast_step)
        if BACKGROUND * contrast < 1.0 / 255.0:
            break
        value = _F32(BACKGROUND * (1.0 - contrast))
        x0 = margin
        y0 = margin + k * (gh + 2 * gap)
        group = "".join(rng.choice(list(SLOAN_LETTERS), size=3, replace=False))
        for j, letter in enumerate(group):
            mask = _glyph_mask(letter, scale)
            x = x0 + j * (gw + gap)
            region = img[y0 : y0 + gh, x : x + gw]
            region[mask] = value
        letters.append(group)
        contrasts.append(contrast)
        rendered += 1
    return ContrastChart(Frame(img), rendered, tuple(letters), tuple(contrasts))


# ---------------------------------------------------------------------------
# Test plates
# ---------------------------------------------------------------------------

def display_plate(path: str | os.PathLike, width: int, height: int) -> Frame:
    """Letterbox an externally supplied plate image on neutral gray. Images
    that fit are centered without any resampling; oversized plates are
    area-downscaled preserving aspect ratio."""
    plate = load_image(path)
    pw, ph = plate.width, plate.height
    data = plate.data
    if pw > width or ph > height:
        ratio = min(width / pw, height / ph)
        nw, nh = max(1, int(pw * ratio)), max(1, int(ph * ratio))
        data = cv2.resize(plate.data, (nw, nh), interpolation=cv2.INTER_AREA)
        pw, ph = nw, nh
    canvas = np.full((height, width, 3), _F32(0.5), dtype=_F32)
    x0 = (width - pw) // 2
    y0 = (height - ph) // 2
    canvas[y0 : y0 + ph, x0 : x0 + pw] = data
    return Frame(np.clip(canvas, 0.0, 1.0))
