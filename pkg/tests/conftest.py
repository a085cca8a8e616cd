import numpy as np
import pytest

from visim import Frame


def checkerboard(w: int, h: int, pitch: int = 1, lo: float = 0.0, hi: float = 1.0) -> Frame:
    ys, xs = np.mgrid[0:h, 0:w]
    cells = ((xs // pitch) + (ys // pitch)) % 2
    data = np.where(cells[..., None] == 0, np.float32(lo), np.float32(hi))
    return Frame(np.broadcast_to(data, (h, w, 3)).astype(np.float32))


def random_frame(w: int, h: int, seed: int = 0) -> Frame:
    rng = np.random.default_rng(seed)
    return Frame(rng.random((h, w, 3), dtype=np.float32))


def textured_frame(w: int, h: int, seed: int = 7) -> Frame:
    """Smooth gradients plus fine structure; a stand-in for a natural image."""
    rng = np.random.default_rng(seed)
    ys, xs = np.mgrid[0:h, 0:w].astype(np.float32)
    base = 0.5 + 0.25 * np.sin(xs / 17.0) * np.cos(ys / 23.0)
    detail = 0.2 * rng.random((h, w), dtype=np.float32)
    mono = np.clip(base + detail, 0.0, 1.0)
    data = np.stack([mono, np.roll(mono, 3, axis=1), np.roll(mono, 5, axis=0)], axis=-1)
    return Frame(data.astype(np.float32))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_runtest_logreport(report):
    # One visible PASS/FAIL line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        verdict = "PASS" if report.passed else "FAIL"
        print(f"\nACCEPTANCE {verdict}: {name}", flush=True)
