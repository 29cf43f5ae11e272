import numpy as np
import pytest

from antsel import derive_stream, row_norms_sq, row_subset, sample_channel


def test_same_stream_reproduces_sequence():
    a = derive_stream(42, 0).gen.random(100)
    b = derive_stream(42, 0).gen.random(100)
    assert np.array_equal(a, b)


def test_distinct_streams_are_uncorrelated():
    a = derive_stream(42, 0).gen.random(10_000)
    b = derive_stream(42, 1).gen.random(10_000)
    corr = np.corrcoef(a, b)[0, 1]
    assert abs(corr) < 0.03


def test_stream_feeds_channel_sampler():
    h = sample_channel(derive_stream(7, 5), 4, 2)
    assert h.shape == (4, 2) and np.iscomplexobj(h)


def test_seed_validation():
    with pytest.raises(ValueError):
        derive_stream(-1, 0)
    with pytest.raises(ValueError):
        derive_stream(0, 2**64)


def test_unit_entry_second_moment():
    # |h|^2 averaged over 1e5 scalar draws should be 1 within 2%
    rng = derive_stream(1, 0)
    draws = np.array([sample_channel(rng, 1, 1)[0, 0] for _ in range(100_000)])
    assert abs(np.mean(np.abs(draws) ** 2) - 1.0) < 0.02
    # real part: mean 0 within 0.01, variance 1/2 within 0.02
    assert abs(draws.real.mean()) < 0.01
    assert abs(draws.real.var() - 0.5) < 0.02


def test_channel_shape_and_errors():
    assert sample_channel(derive_stream(3, 1), 128, 8).shape == (128, 8)
    with pytest.raises(ValueError):
        sample_channel(derive_stream(3, 2), 0, 4)


def test_row_subset_basic():
    h = np.arange(6, dtype=complex).reshape(3, 2)
    sub = row_subset(h, [0, 2])
    assert np.array_equal(sub, h[[0, 2]])
    assert np.array_equal(row_subset(h, range(3)), h)


def test_row_subset_errors():
    h = np.zeros((3, 2), dtype=complex)
    with pytest.raises(ValueError):
        row_subset(h, [5])
    with pytest.raises(ValueError):
        row_subset(h, [1, 1])


def test_row_subset_composition():
    h = sample_channel(derive_stream(9, 0), 10, 3)
    once = row_subset(row_subset(h, [2, 7]), [0])
    direct = row_subset(h, [2])
    assert np.array_equal(once, direct)


def test_row_norms_against_elementwise_sum():
    h = sample_channel(derive_stream(9, 1), 128, 8)
    norms = row_norms_sq(h)
    manual = np.array([sum(abs(h[i, j]) ** 2 for j in range(8)) for i in range(128)])
    assert np.allclose(norms, manual, atol=1e-12)


def test_row_norms_simple_values():
    h = np.array([[1.0, 0.0], [0.0, 2.0], [0.0, 0.0]], dtype=complex)
    assert np.allclose(row_norms_sq(h), [1.0, 4.0, 0.0])
