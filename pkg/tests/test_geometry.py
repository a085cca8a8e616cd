import math

import pytest
from hypothesis import given, strategies as st

from visim import DEFAULT_GEOMETRY, ParameterError, ViewingGeometry


def trig_ppd(distance_m: float, pitch_m: float) -> float:
    # independent oracle: on-screen span of 1 degree divided by pixel pitch
    return 2.0 * distance_m * math.tan(math.radians(0.5)) / pitch_m


def test_default_geometry_ppd():
    # 27" 2560x1440 at 60 cm
    assert DEFAULT_GEOMETRY.pixels_per_degree() == pytest.approx(44.94524184081779, abs=1e-9)
    assert DEFAULT_GEOMETRY.pixels_per_degree() == pytest.approx(44.9, abs=0.1)


def test_rejects_nonpositive_fields():
    for kwargs in (
        {"pixel_pitch": 0.0},
        {"viewing_distance": -1.0},
        {"screen_width_px": 0},
        {"pixel_pitch": float("nan")},
    ):
        with pytest.raises(ParameterError):
            ViewingGeometry(**kwargs)


@given(
    distance=st.floats(0.2, 2.0),
    pitch_mm=st.floats(0.05, 0.5),
)
def test_ppd_matches_trig_oracle(distance, pitch_mm):
    g = ViewingGeometry(pixel_pitch=pitch_mm / 1000.0, viewing_distance=distance)
    assert g.pixels_per_degree() == pytest.approx(trig_ppd(distance, pitch_mm / 1000.0), rel=1e-12)
    assert g.pixels_per_degree() > 0


@given(distance=st.floats(0.2, 2.0))
def test_ppd_linear_in_distance(distance):
    g1 = ViewingGeometry(viewing_distance=distance)
    g2 = ViewingGeometry(viewing_distance=2.0 * distance)
    assert g2.pixels_per_degree() == pytest.approx(2.0 * g1.pixels_per_degree(), rel=1e-12)
