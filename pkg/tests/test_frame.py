import io

import numpy as np
import pytest

from visim import Frame, ParameterError
from visim.frame import (
    decode_image,
    encode_image,
    encode_png,
    linear_to_srgb,
    load_image,
    save_image,
    srgb_to_linear,
)

from conftest import random_frame


def test_frame_shape_and_clamp():
    f = Frame.from_array(np.array([[[2.0, -1.0, 0.5]]]))
    assert f.width == 1 and f.height == 1
    assert f.data[0, 0].tolist() == [1.0, 0.0, 0.5]


def test_frame_rejects_bad_shapes():
    with pytest.raises(ParameterError):
        Frame(np.zeros((4, 4)))
    with pytest.raises(ParameterError):
        Frame(np.zeros((0, 4, 3), dtype=np.float32))


def test_srgb_round_trip():
    v = np.linspace(0.0, 1.0, 1001, dtype=np.float32)
    back = srgb_to_linear(linear_to_srgb(v))
    assert np.abs(back - v).max() < 1e-6
    assert linear_to_srgb(np.float32(0.0)) == 0.0
    assert abs(float(linear_to_srgb(np.float32(1.0))) - 1.0) < 1e-6


def test_u8_quantization_round_trip():
    u8 = np.arange(256, dtype=np.uint8).reshape(16, 16)
    img = np.stack([u8, u8.T, np.flipud(u8)], axis=-1)
    f = Frame.from_u8_srgb(img)
    assert np.array_equal(f.to_u8_srgb(), img)


@pytest.mark.parametrize("fmt", ["png", "ppm"])
def test_image_io_round_trip(tmp_path, fmt):
    f = random_frame(23, 17, seed=3)
    path = tmp_path / f"img.{fmt}"
    save_image(f, path)
    g = load_image(path)
    assert g.width == 23 and g.height == 17
    # lossless at the 8-bit boundary
    assert np.array_equal(g.to_u8_srgb(), f.to_u8_srgb())


def test_encode_decode_bytes():
    f = random_frame(8, 5, seed=1)
    for fmt in ("png", "ppm"):
        data = encode_image(f, fmt)
        g = decode_image(data)
        assert np.array_equal(g.to_u8_srgb(), f.to_u8_srgb())


def test_png_bytes_deterministic():
    f = random_frame(31, 9, seed=2)
    assert encode_png(f) == encode_png(f)


def test_decode_garbage_raises():
    with pytest.raises(Exception):
        decode_image(b"this is not an image")


def test_ppm_header_with_comment():
    f = Frame.full(2, 2, 0.5)
    raw = encode_image(f, "ppm")
    commented = raw.replace(b"P6\n", b"P6\n# comment\n", 1)
    g = decode_image(commented)
    assert np.array_equal(g.to_u8_srgb(), f.to_u8_srgb())
