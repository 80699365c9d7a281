import math

import pytest

from hkntk.noise.stream import derive_stream
from hkntk.walk.walk import (Increments, WalkParams, first_passage_time,
    merge_walk_time, sample_walks, survival_curve, survival_slope,
    two_sided_exit, wald_check, walk_report, weighted_walk_time)


def _first(xi, rule):
    S = 0.0
    for t, x in enumerate(xi, 1):
        prev, S = S, S + x
        if rule(prev, x, S):
            return t, prev, S
    return None


def test_walk_params_validation():
    assert WalkParams(0.048, 0.05).mu == pytest.approx(0.001)
    with pytest.raises(ValueError):
        WalkParams(0.05, 0.048)
    with pytest.raises(ValueError):
        WalkParams(0.0, 0.05, a = 0.0)
    with pytest.raises(ValueError):
        WalkParams(0.0, 0.05, c = -0.1)
    with pytest.raises(ValueError):
        WalkParams(0.0, 0.05, v1_size = 0)


def test_first_passage_matches_the_draws():
    p = WalkParams(0.02, 0.05, c = 0.3)
    xi = derive_stream(9, 0).draws(p.noise, 50000)
    t, _, S = _first(xi, lambda prev, x, cur: cur > 0.3)
    s = first_passage_time(p, derive_stream(9, 0), 50000)
    assert not s.censored
    assert s.t == t
    assert s.value == S
    assert 0 < s.overshoot <= 0.05


def test_consecutive_walks_consume_exact_draws():
    p = WalkParams(0.0, 0.05, c = 0.2)
    xi = derive_stream(2, 0).draws(p.noise, 1000)
    reader = Increments(derive_stream(2, 0), p.noise)
    a = first_passage_time(p, reader, 1000)
    b = first_passage_time(p, reader, 1000)
    t, _, _ = _first(xi[a.t:], lambda prev, x, cur: cur > 0.2)
    assert b.t == t


def test_censored_passage():
    s = first_passage_time(WalkParams(0.05, 0.05, c = 100.0), derive_stream(0, 0), 500)
    assert s.censored
    assert s.t == 500
    assert s.overshoot is None


def test_zero_level_passage_takes_one_step():
    ss = sample_walks("passage", WalkParams(0.0, 0.05, c = 0.0), 0, 50)
    assert all(s.t == 1 for s in ss)


def test_weighted_walk():
    p = WalkParams(0.05, 0.05, alpha = 2.5)
    xi = derive_stream(4, 0).draws(p.noise, 10000)
    hit = _first(xi, lambda prev, x, cur: prev + 2.5 * x >= 0)
    s = weighted_walk_time(p, derive_stream(4, 0), 10000)
    if hit is None:
        assert s.censored and s.t == 10000
    else:
        t, prev, _ = hit
        assert s.t == t
        assert s.value == prev + 2.5 * xi[t - 1]
    with pytest.raises(ValueError):
        weighted_walk_time(WalkParams(0.05, 0.05, alpha = 1.0), derive_stream(0, 0))
    with pytest.raises(ValueError):
        weighted_walk_time(WalkParams(0.04, 0.05, alpha = 2.0), derive_stream(0, 0))


def test_merge_walk_of_a_singleton_is_a_passage():
    p = WalkParams(0.0, 0.05, v1_size = 1)
    xi = derive_stream(6, 0).draws(p.noise, 10000)
    t, _, _ = _first(xi, lambda prev, x, cur: prev + x >= 0.25)
    assert merge_walk_time(p, derive_stream(6, 0), 1.25, 1.0, 10000).t == t


def test_two_sided_exit():
    s = two_sided_exit(WalkParams(0.0, 0.05, a = 0.1, b = 0.1), derive_stream(1, 0))
    assert s.side == "high"
    assert s.value > 0.1
    with pytest.raises(ValueError):
        two_sided_exit(WalkParams(0.0, 0.0, a = 0.1, b = 0.1), derive_stream(1, 0))
    with pytest.raises(ValueError):
        two_sided_exit(WalkParams(0.05, 0.05, a = 0.1), derive_stream(1, 0))


def test_wald_identity():
    report = wald_check(WalkParams(0.0, 0.05, c = 0.05), derive_stream(0, 0), 4000)
    assert report["sample_count"] == 4000
    assert report["censored"] == 0
    assert abs(report["relative_gap"]) < 0.03
    lo, hi = report["ci95"]
    assert lo < report["relative_gap"] < hi
    with pytest.raises(ValueError):
        wald_check(WalkParams(0.05, 0.05, c = 0.1), derive_stream(0, 0), 10)


def test_survival_curve():
    t, p = survival_curve([1, 2, 2, 3])
    assert list(t) == [1, 2, 3]
    assert list(p) == [1.0, 0.75, 0.25]
    t, p = survival_curve([1, 2, 5], [False, False, True])
    assert list(t) == [1, 2]
    assert p[1] == pytest.approx(2 / 3.0)
    t, p = survival_curve([5], [True])
    assert t.shape[0] == 0


def test_survival_slope_of_a_power_law():
    # P(T >= 2^k) = 2^-k for k = 0..10
    samples = []
    for k in range(10):
        samples += [2 ** k] * 2 ** (9 - k)
    samples.append(2 ** 10)
    assert survival_slope(samples) == pytest.approx(-1.0)
    assert math.isnan(survival_slope([1, 2]))


def test_sample_walks_and_report():
    p = WalkParams(0.0, 0.05, c = 0.1)
    ss = sample_walks("passage", p, 3, 200)
    assert ss[5] == first_passage_time(p, derive_stream(3, 5))
    report = walk_report(p, ss, bound = 4.0)
    assert report["sample_count"] == 200
    assert report["censor_fraction"] == 0.0
    assert report["ci95"][0] < report["mean"] < report["ci95"][1]
    assert report["survival_curve"][0][1] == 1.0
    with pytest.raises(ValueError):
        sample_walks("levy", p, 0, 1)
