"""Per-render context shared by all symptom filters."""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..geometry import DEFAULT_GEOMETRY, ViewingGeometry

__all__ = ["RenderContext"]


@dataclass(frozen=True)
class RenderContext:
    """Everything a filter may read besides the frame and its own config:
    gaze position (pixels), session-relative time, viewing geometry and the
    session seed. Filters are pure functions of (frame, ctx, config)."""

    gaze: tuple[float, float] = (0.0, 0.0)
    time: float = 0.0
    geometry: ViewingGeometry = DEFAULT_GEOMETRY
    seed: int = 0

    def gaze_clamped(self, width: int, height: int) -> tuple[float, float]:
        """Gaze forced into frame bounds; filters anchor to this."""
        gx = min(max(self.gaze[0], 0.0), float(width - 1))
        gy = min(max(self.gaze[1], 0.0), float(height - 1))
        return gx, gy

    def with_gaze(self, gx: float, gy: float) -> "RenderContext":
        return replace(self, gaze=(gx, gy))
