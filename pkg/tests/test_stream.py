import numpy as np
import pytest
from scipy import stats

from hkntk.noise.stream import BLOCK, NoiseParams, StreamHandle, derive_stream, draw

ORIENTED = NoiseParams(0.048, 0.05)


def test_same_seed_same_draws():
    a = derive_stream(42, 3).draws(ORIENTED, 1000)
    b = derive_stream(42, 3).draws(ORIENTED, 1000)
    assert np.array_equal(a, b)


def test_runs_are_independent_streams():
    a = derive_stream(42, 0).draws(ORIENTED, 100)
    b = derive_stream(42, 1).draws(ORIENTED, 100)
    c = derive_stream(43, 0).draws(ORIENTED, 100)
    assert not np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_run_streams_are_uncorrelated():
    a = derive_stream(42, 0).draws(ORIENTED, 10 ** 5)
    b = derive_stream(42, 1).draws(ORIENTED, 10 ** 5)
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.02
    assert abs(np.corrcoef(a[:-1], a[1:])[0, 1]) < 0.02


@pytest.mark.parametrize("sizes", [[1] * 10 + [BLOCK], [7, BLOCK - 3, 5000], [3 * BLOCK]])
def test_draws_do_not_depend_on_request_sizes(sizes):
    total = sum(sizes)
    whole = derive_stream(5, 0).draws(ORIENTED, total)
    s = derive_stream(5, 0)
    parts = np.concatenate([s.draws(ORIENTED, k) for k in sizes])
    assert np.array_equal(whole, parts)
    assert s.counter == total


def test_draws_stay_in_support():
    xi = derive_stream(1, 0).draws(ORIENTED, 100000)
    assert xi.min() >= -0.048
    assert xi.max() <= 0.05


def test_mean_and_uniformity():
    xi = derive_stream(2, 0).draws(ORIENTED, 100000)
    assert xi.mean() == pytest.approx(ORIENTED.mean, abs = 5e-4)
    res = stats.kstest(xi, "uniform", args = (-0.048, 0.098))
    assert res.pvalue > 1e-3


def test_degenerate_noise_is_zero_but_counts():
    s = derive_stream(0, 0)
    xi = s.draws(NoiseParams(0.0, 0.0), 10)
    assert np.array_equal(xi, np.zeros(10))
    assert s.counter == 10


def test_draw_returns_float():
    s = derive_stream(0, 0)
    v = draw(s, ORIENTED)
    assert isinstance(v, float)
    assert s.counter == 1


def test_noise_params():
    assert NoiseParams(0.05, 0.05).neutral
    assert NoiseParams(0.0, 0.0).degenerate
    assert NoiseParams(0.048, 0.05).mean == pytest.approx(0.001)
    with pytest.raises(ValueError):
        NoiseParams(0.06, 0.05)
    with pytest.raises(ValueError):
        NoiseParams(-0.01, 0.05)


@pytest.mark.parametrize("seed,run", [(-1, 0), (2 ** 64, 0), (0, -1), (1.5, 0)])
def test_stream_handle_validation(seed, run):
    with pytest.raises(ValueError):
        StreamHandle(seed, run)
