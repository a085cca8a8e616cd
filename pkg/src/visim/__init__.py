"""visim: deterministic, gaze-contingent vision-impairment simulation.

Frames are linear-light float RGB; symptom filters are pure functions
composed by the pipeline; profiles persist filter stacks; a CLI and a local
HTTP service expose batch rendering and the interactive panel.
"""


def _tune_allocator():
    # The render loop allocates and frees tens of MB per frame. With glibc
    # defaults those blocks are mmap'd and returned to the OS on free, so
    # every frame pays the page-fault cost again. Raising the thresholds
    # keeps the buffers on the heap for reuse. Best effort: silently skipped
    # off glibc.
    try:
        import ctypes

        libc = ctypes.CDLL("libc.so.6")
        libc.mallopt(-1, 512 * 1024 * 1024)  # M_TRIM_THRESHOLD
        libc.mallopt(-3, 512 * 1024 * 1024)  # M_MMAP_THRESHOLD
    except Exception:
        pass


_tune_allocator()

from .errors import ParameterError, SequencingError, SpecError
from .frame import Frame, load_image, save_image
from .geometry import DEFAULT_GEOMETRY, ViewingGeometry
from .noise import NoiseField
from .kernels import MipPyramid, build_pyramid, downsample_lod, gaussian_blur
from .pipeline import SessionState, StackEntry, SymptomStack, ValidationReport, render, validate
from .symptoms import RenderContext, schema, symptom_names

__version__ = "0.1.0"

__all__ = [
    "ParameterError",
    "SequencingError",
    "SpecError",
    "Frame",
    "load_image",
    "save_image",
    "ViewingGeometry",
    "DEFAULT_GEOMETRY",
    "NoiseField",
    "MipPyramid",
    "build_pyramid",
    "downsample_lod",
    "gaussian_blur",
    "SymptomStack",
    "StackEntry",
    "SessionState",
    "ValidationReport",
    "render",
    "validate",
    "RenderContext",
    "schema",
    "symptom_names",
    "__version__",
]
