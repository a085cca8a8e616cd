import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from visim import NoiseField, ParameterError
from visim.noise import permutation_from_seed


def test_permutation_is_a_permutation():
    for seed in (0, 1, 42, 2**63):
        perm = permutation_from_seed(seed)
        assert sorted(perm) == list(range(256))


def test_permutation_depends_on_seed():
    assert permutation_from_seed(1) != permutation_from_seed(2)


def test_permutation_construction_pinned():
    # Golden prefixes locking the splitmix64 + Fisher-Yates construction,
    # captured from the first verified run; a change here breaks every
    # stored seed's noise field.
    assert permutation_from_seed(0)[:8] == (99, 179, 124, 78, 196, 203, 221, 113)
    assert permutation_from_seed(1)[:8] == (86, 84, 62, 52, 122, 157, 182, 140)
    assert permutation_from_seed(42)[:8] == (203, 217, 124, 199, 53, 101, 223, 240)


def test_lattice_points_are_zero():
    nf = NoiseField(seed=7, octaves=1, base_frequency=0.25)
    # x * base_frequency integer => lattice point
    for x, y in [(0, 0), (4, 8), (-4, 12), (40, -16)]:
        assert nf.value(x, y, t=0.0) == pytest.approx(0.0, abs=1e-7)


def test_determinism_same_inputs():
    nf1 = NoiseField(seed=99, octaves=3, base_frequency=2.0)
    nf2 = NoiseField(seed=99, octaves=3, base_frequency=2.0)
    xs = np.linspace(-3, 3, 50)
    ys = np.linspace(-2, 5, 50)
    a = nf1.grid(xs, ys, t=1.25)
    b = nf2.grid(xs, ys, t=1.25)
    assert np.array_equal(a, b)


def test_seed_decorrelation():
    xs, ys = np.meshgrid(np.linspace(0.05, 9.95, 100), np.linspace(0.05, 9.95, 100))
    a = NoiseField(seed=1).grid(xs, ys)
    b = NoiseField(seed=2).grid(xs, ys)
    frac_diff = np.mean(a != b)
    assert frac_diff >= 0.99


def test_time_animates():
    nf = NoiseField(seed=5)
    xs, ys = np.meshgrid(np.linspace(0.3, 7.7, 32), np.linspace(0.3, 7.7, 32))
    assert not np.array_equal(nf.grid(xs, ys, t=0.0), nf.grid(xs, ys, t=0.37))


@settings(max_examples=50)
@given(
    seed=st.integers(0, 2**32),
    x=st.floats(-100, 100),
    y=st.floats(-100, 100),
    t=st.floats(0, 10),
    octaves=st.integers(1, 4),
)
def test_range_bounded(seed, x, y, t, octaves):
    nf = NoiseField(seed=seed, octaves=octaves, base_frequency=1.7)
    v = nf.value(x, y, t)
    assert -1.0 <= v <= 1.0


def test_invalid_field_params():
    with pytest.raises(ParameterError):
        NoiseField(seed=0, octaves=0)
    with pytest.raises(ParameterError):
        NoiseField(seed=0, base_frequency=0.0)
