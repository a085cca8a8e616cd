import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.ndimage import correlate1d

from visim import Frame, MipPyramid, ParameterError, downsample_lod, gaussian_blur
from visim.kernels import gaussian_kernel, smoothstep

from conftest import checkerboard, random_frame

# Hand-evaluated normalized 7-tap Gaussian (sigma=1, radius ceil(3*1)=3) and
# its clamp-to-edge convolution with [0,0,1,0,0]; frozen from the
# brute-force oracle below.
ORACLE_KERNEL_S1 = [
    0.004433048,
    0.054005583,
    0.242036229,
    0.399050280,
    0.242036229,
    0.054005583,
    0.004433048,
]
ORACLE_BLUR_IMPULSE = [0.054005583, 0.242036229, 0.399050280, 0.242036229, 0.054005583]


def oracle_conv_row(row, sigma):
    """Brute-force clamp-to-edge correlation with the truncated kernel."""
    import math

    r = math.ceil(3 * sigma)
    k = [math.exp(-i * i / (2 * sigma * sigma)) for i in range(-r, r + 1)]
    s = sum(k)
    k = [v / s for v in k]
    n = len(row)
    out = []
    for j in range(n):
        acc = 0.0
        for m in range(-r, r + 1):
            acc += k[m + r] * row[min(max(j - m, 0), n - 1)]
        out.append(acc)
    return out


def test_kernel_shape_and_normalization():
    k = gaussian_kernel(1.0)
    assert len(k) == 7
    assert np.abs(np.asarray(k, dtype=np.float64) - ORACLE_KERNEL_S1).max() < 1e-6
    for sigma in (0.3, 1.7, 5.0):
        k = gaussian_kernel(sigma)
        assert len(k) == 2 * int(np.ceil(3 * sigma)) + 1
        assert abs(float(np.sum(k, dtype=np.float64)) - 1.0) < 1e-6


def test_blur_sigma_zero_is_bit_exact():
    f = random_frame(9, 7)
    out = gaussian_blur(f, 0.0)
    assert out.same_pixels(f)


def test_blur_uniform_stays_uniform():
    f = Frame.full(33, 21, 0.5)
    out = gaussian_blur(f, 5.0)
    assert np.abs(out.data - 0.5).max() < 1e-6


def test_blur_impulse_matches_oracle():
    row = np.zeros((1, 5, 3), dtype=np.float32)
    row[0, 2, :] = 1.0
    out = gaussian_blur(Frame(row), 1.0)
    got = out.data[0, :, 0].astype(np.float64)
    assert np.abs(got - ORACLE_BLUR_IMPULSE).max() < 1e-6
    # and the frozen values came from the brute-force oracle
    assert np.abs(np.asarray(oracle_conv_row([0, 0, 1, 0, 0], 1.0)) - ORACLE_BLUR_IMPULSE).max() < 1e-9


def test_blur_matches_scipy_reference():
    f = random_frame(24, 31, seed=5)
    sigma = 2.3
    k = np.asarray(gaussian_kernel(sigma), dtype=np.float64)
    ref = correlate1d(f.data.astype(np.float64), k, axis=0, mode="nearest")
    ref = correlate1d(ref, k, axis=1, mode="nearest")
    out = gaussian_blur(f, sigma)
    assert np.abs(out.data - ref).max() < 2e-6


def test_blur_preserves_constant_mean():
    f = Frame.full(40, 40, 0.5)
    out = gaussian_blur(f, 3.0)
    assert abs(float(out.data.mean()) - 0.5) < 1e-6


def test_blur_rejects_bad_sigma():
    f = Frame.full(4, 4, 0.1)
    for sigma in (float("nan"), float("inf"), -1.0):
        with pytest.raises(ParameterError):
            gaussian_blur(f, sigma)


@settings(max_examples=25, deadline=None)
@given(sigma=st.floats(0.1, 4.0), seed=st.integers(0, 1000))
def test_blur_output_within_input_range(sigma, seed):
    f = random_frame(16, 12, seed=seed)
    out = gaussian_blur(f, sigma)
    assert out.data.min() >= f.data.min() - 1e-6
    assert out.data.max() <= f.data.max() + 1e-6


# ---------------------------------------------------------------------------
# Mip pyramid
# ---------------------------------------------------------------------------

def test_pyramid_level_dimensions():
    p = MipPyramid(random_frame(37, 21))
    w, h = 37, 21
    for lv in p.levels:
        assert lv.shape[1] == w and lv.shape[0] == h
        w, h = (w + 1) // 2, (h + 1) // 2
    assert p.levels[-1].shape[:2] == (1, 1)


def test_sample_lod0_is_exact_at_pixel_centers():
    f = random_frame(13, 9, seed=2)
    p = MipPyramid(f)
    xs, ys = np.meshgrid(np.arange(13) + 0.5, np.arange(9) + 0.5)
    got = p.sample(xs.ravel(), ys.ravel(), 0.0).reshape(9, 13, 3)
    assert np.array_equal(got, f.data)


def test_sample_lod1_box_average():
    # 2x2 frame with rows [0,0] and [1,1]: level 1 is the mean 0.5
    data = np.zeros((2, 2, 3), dtype=np.float32)
    data[1, :, :] = 1.0
    p = MipPyramid(Frame(data))
    v = p.sample(np.array([1.0]), np.array([1.0]), 1.0)
    assert np.abs(v - 0.5).max() < 1e-7


def test_uniform_any_lod():
    p = MipPyramid(Frame.full(16, 16, 0.25))
    for lod in (0.0, 0.5, 1.7, 3.0, 10.0, 99.0):
        v = p.sample(np.array([8.0]), np.array([8.0]), lod)
        assert np.abs(v - 0.25).max() < 1e-6


def test_lod_clamps_to_coarsest():
    f = checkerboard(16, 16)
    p = MipPyramid(f)
    a = p.sample(np.array([8.0]), np.array([8.0]), float(p.coarsest))
    b = p.sample(np.array([8.0]), np.array([8.0]), float(p.coarsest) + 5.0)
    assert np.array_equal(a, b)


def test_coarsest_level_is_global_box_mean():
    f = checkerboard(64, 64)
    p = MipPyramid(f)
    assert np.abs(p.levels[-1][0, 0] - f.data.mean(axis=(0, 1))).max() < 1e-5


def test_fractional_lod_blends_adjacent_levels():
    f = checkerboard(8, 8)
    p = MipPyramid(f)
    v0 = p.sample(np.array([4.0]), np.array([4.0]), 1.0)
    v1 = p.sample(np.array([4.0]), np.array([4.0]), 2.0)
    vm = p.sample(np.array([4.0]), np.array([4.0]), 1.5)
    assert np.abs(vm - 0.5 * (v0 + v1)).max() < 1e-6


def test_downsample_lod_sampler():
    f = random_frame(10, 10, seed=3)
    sampler = downsample_lod(f, 0.0)
    v = sampler(np.array([2.5]), np.array([7.5]))
    assert np.array_equal(v[0], f.data[7, 2])
    with pytest.raises(ParameterError):
        downsample_lod(f, -1.0)


def test_smoothstep_endpoints():
    assert smoothstep(np.float32(-1.0)) == 0.0
    assert smoothstep(np.float32(0.0)) == 0.0
    assert smoothstep(np.float32(1.0)) == 1.0
    assert smoothstep(np.float32(2.0)) == 1.0
    assert smoothstep(np.float32(0.5)) == pytest.approx(0.5)
