# Random walks driven by the noise streams
# Author: hkntk developers

# S_t = xi(1) + ... + xi(t) with xi uniform on [-delta1, delta2]. Partial sums
# are accumulated left to right, so a walk and an episode fed the same stream
# see the same increments in the same order.

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats

from ..config import DEF_HORIZON
from ..noise.stream import NoiseParams, derive_stream

# first and largest number of increments scanned at once
MIN_CHUNK = 256
MAX_CHUNK = 4096


@dataclass
class WalkParams:
    """
    @abstract         Increment law and thresholds of the walks.
    @param delta1     Increments lie on [-delta1, delta2] [float]
    @param delta2     Upper increment bound [float]
    @param alpha      Terminal weight of the weighted walk, > 1 [float]
    @param a          Lower exit level -a of the two-sided walk, > 0 [float]
    @param b          Upper exit level b of the two-sided walk, > 0 [float]
    @param c          First-passage level of S_t; c = 0 is the limiting case [float]
    @param v1_size    Size of the noisy agent's cluster in the merge walk [int]
    """
    delta1: float = 0.0
    delta2: float = 0.0
    alpha: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    c: Optional[float] = None
    v1_size: int = 1

    def __post_init__(self):
        self.noise = NoiseParams(float(self.delta1), float(self.delta2))
        for name in ("a", "b"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ValueError("threshold %s must be positive, got %r" % (name, v))
        if self.c is not None and not self.c >= 0:
            raise ValueError("threshold c must be non-negative, got %r" % self.c)
        if isinstance(self.v1_size, bool) or int(self.v1_size) != self.v1_size \
                or self.v1_size < 1:
            raise ValueError("v1_size must be an integer >= 1, got %r" % (self.v1_size,))
        self.v1_size = int(self.v1_size)

    @property
    def mu(self):
        return self.noise.mean


@dataclass
class WalkSample:
    """
    @abstract        One stopped (or censored) walk.
    @param t         Stopping step, or the number of simulated steps if censored [int]
    @param censored  Horizon reached before the stopping rule fired [bool]
    @param value     Walk value at t (S_t, Q_t or R_t) [float]
    @param overshoot Amount by which the level was exceeded, first-passage walk only [float]
    @param side      "low" or "high", two-sided walk only [str]
    """
    t: int
    censored: bool
    value: float
    overshoot: Optional[float] = None
    side: Optional[str] = None


class Increments:
    """Sequential reader over the draws of one stream; unused draws are kept."""
    def __init__(self, stream, noise):
        self.stream = stream
        self.noise = noise
        self._pending = np.empty(0)

    def take(self, k):
        if self._pending.shape[0] >= k:
            out, self._pending = self._pending[:k], self._pending[k:]
            return out
        more = self.stream.draws(self.noise, k - self._pending.shape[0])
        out = np.concatenate((self._pending, more))
        self._pending = np.empty(0)
        return out

    def give_back(self, xi):
        if xi.shape[0]:
            self._pending = np.concatenate((xi, self._pending))


def _reader(stream, noise):
    return stream if isinstance(stream, Increments) else Increments(stream, noise)

def _scan(reader, horizon, hit):
    """
    @abstract        Walk until hit(prev, xi, cur) holds for some step.
    @param reader    Increment source [Increments]
    @param horizon   Maximum number of steps [int]
    @param hit       Vectorized stopping rule on S_{t-1}, xi(t) and S_t [callable]
    @return          A tuple (t, S_{t-1}, xi(t), S_t, censored) [tuple]
    """
    S = 0.0
    t = 0
    size = MIN_CHUNK
    while t < horizon:
        xi = reader.take(min(size, horizon - t))
        path = np.cumsum(np.concatenate(([S], xi)))
        idx = np.flatnonzero(hit(path[:-1], xi, path[1:]))
        if idx.shape[0]:
            k = int(idx[0])
            reader.give_back(xi[k + 1:])
            return t + k + 1, path[k], xi[k], path[k + 1], False
        S = path[-1]
        t += xi.shape[0]
        size = min(size * 2, MAX_CHUNK)
    return t, np.nan, np.nan, S, True

def _horizon(horizon):
    if int(horizon) != horizon or horizon < 1:
        raise ValueError("horizon must be an integer >= 1, got %r" % (horizon,))
    return int(horizon)

def first_passage_time(params, stream, horizon = DEF_HORIZON):
    """
    @abstract        First t >= 1 with S_t > c.
    @param params    Walk parameters with c set [WalkParams]
    @param stream    Noise stream [StreamHandle or Increments]
    @param horizon   Maximum number of steps [int]
    @return          Sample with value S_T and overshoot S_T - c [WalkSample]
    """
    if params.c is None:
        raise ValueError("first passage needs the level c")
    c = params.c
    t, _, _, S, cens = _scan(_reader(stream, params.noise), _horizon(horizon),
                             lambda prev, xi, cur: cur > c)
    return WalkSample(t, cens, float(S), None if cens else float(S - c))

def _weighted(reader, weight, level, horizon):
    t, prev, xi, _, cens = _scan(reader, horizon,
                                 lambda prev, xi, cur: prev + weight * xi >= level)
    value = np.nan if cens else prev + weight * xi
    return WalkSample(t, cens, float(value))

def weighted_walk_time(params, stream, horizon = DEF_HORIZON):
    """
    @abstract        First t with Q_t = S_{t-1} + alpha*xi(t) >= 0,
                     for symmetric increments (delta1 = delta2 > 0).
    @param params    Walk parameters with alpha > 1 [WalkParams]
    @return          Sample with value Q_T [WalkSample]
    """
    if params.alpha is None or not params.alpha > 1:
        raise ValueError("weighted walk needs alpha > 1, got %r" % (params.alpha,))
    if not params.noise.neutral or params.noise.degenerate:
        raise ValueError("weighted walk needs symmetric increments delta1 = delta2 > 0")
    return _weighted(_reader(stream, params.noise), float(params.alpha), 0.0,
                     _horizon(horizon))

def merge_walk_time(params, stream, gap, epsilon, horizon = DEF_HORIZON):
    """
    @abstract        First t with R_t = S_{t-1} + |V1| xi(t) >= |V1| (gap - epsilon),
                     i.e. the step at which the noisy agent of an isolated
                     cluster of size |V1| comes within epsilon of the next cluster.
    @param params    Walk parameters, v1_size = |V1| [WalkParams]
    @param gap       Distance between the two cluster values [float]
    @param epsilon   Confidence threshold [float]
    @return          Sample with value R_T [WalkSample]
    """
    m = float(params.v1_size)
    return _weighted(_reader(stream, params.noise), m, m * (gap - epsilon),
                     _horizon(horizon))

def two_sided_exit(params, stream, horizon = DEF_HORIZON):
    """
    @abstract        First t with S_t < -a or S_t > b.
    @return          Sample with side "low" or "high" [WalkSample]
    """
    if params.a is None or params.b is None:
        raise ValueError("two-sided exit needs both levels a and b")
    if params.noise.degenerate:
        raise ValueError("two-sided exit needs non-degenerate increments")
    a, b = params.a, params.b
    t, _, _, S, cens = _scan(_reader(stream, params.noise), _horizon(horizon),
                             lambda prev, xi, cur: (cur < -a) | (cur > b))
    side = None if cens else ("high" if S > b else "low")
    return WalkSample(t, cens, float(S), side = side)

def wald_check(params, stream, sample_count, horizon = DEF_HORIZON):
    """
    @abstract             Monte Carlo check of E S_T = E xi * E T, T the first passage above c.
    @param params         Walk parameters with c set and delta1 < delta2 [WalkParams]
    @param stream         One stream, consumed walk after walk [StreamHandle]
    @param sample_count   Number of stopped walks [int]
    @return               Report dict: E_S_T, mu_E_T, relative_gap, ci95 of the
                          gap, sample_count, censored [dict]
    """
    mu = params.mu
    if mu <= 0:
        raise ValueError("Wald check needs oriented increments (delta1 < delta2)")
    if int(sample_count) != sample_count or sample_count < 2:
        raise ValueError("sample count must be an integer >= 2")
    reader = _reader(stream, params.noise)
    T = np.empty(sample_count)
    S = np.empty(sample_count)
    censored = 0
    for k in range(sample_count):
        s = first_passage_time(params, reader, horizon)
        T[k], S[k] = s.t, s.value
        censored += s.censored
    D = S - mu * T
    scale = mu * T.mean()
    z = stats.norm.ppf(0.975)
    half = z * D.std(ddof = 1) / math.sqrt(sample_count) / scale
    gap = D.mean() / scale
    return {
        "E_S_T": float(S.mean()),
        "mu_E_T": float(scale),
        "relative_gap": float(gap),
        "ci95": [float(gap - half), float(gap + half)],
        "sample_count": int(sample_count),
        "censored": int(censored),
    }

def survival_curve(samples, censored = None):
    """
    @abstract          Empirical P(T >= t) at every distinct uncensored value.
                       Censored samples count as survivors beyond all of them.
    @param samples     Stopping times [array_like]
    @param censored    Censoring flags, same length [array_like]
    @return            A tuple (t values, probabilities), both ascending in t [tuple]
    """
    samples = np.asarray(samples, dtype = float)
    if censored is None:
        censored = np.zeros(samples.shape[0], dtype = bool)
    censored = np.asarray(censored, dtype = bool)
    total = samples.shape[0]
    done = np.sort(samples[~censored])
    if total == 0 or done.shape[0] == 0:
        return np.empty(0), np.empty(0)
    values = np.unique(done)
    # number of uncensored samples strictly below each value
    below = np.searchsorted(done, values, side = "left")
    return values, (total - below) / float(total)

def survival_slope(samples, censored = None, tail_frac = 0.5):
    """
    @abstract         Slope of log10 P(T >= t) against log10 t over the upper
                      tail_frac of the curve; nan with fewer than 3 points.
    """
    t, p = survival_curve(samples, censored)
    keep = t > 0
    t, p = t[keep], p[keep]
    k = int(math.ceil(tail_frac * t.shape[0]))
    if k < 3:
        return float("nan")
    t, p = t[-k:], p[-k:]
    fit = stats.linregress(np.log10(t), np.log10(p))
    return float(fit.slope)

def sample_walks(kind, params, master_seed, sample_count, horizon = DEF_HORIZON,
                 gap = None, epsilon = None):
    """Run sample_count walks of one kind, walk k on stream (master_seed, k)."""
    res = []
    for k in range(sample_count):
        stream = derive_stream(master_seed, k)
        if kind == "passage":
            res.append(first_passage_time(params, stream, horizon))
        elif kind == "weighted":
            res.append(weighted_walk_time(params, stream, horizon))
        elif kind == "merge":
            res.append(merge_walk_time(params, stream, gap, epsilon, horizon))
        elif kind == "exit":
            res.append(two_sided_exit(params, stream, horizon))
        else:
            raise ValueError("unknown walk kind '%s'" % kind)
    return res

def walk_report(params, samples, bound = None):
    """
    @abstract         Summary of a set of walks.
    @param samples    Walk samples [list of WalkSample]
    @param bound      Analytic bound on the mean, or None [float]
    @return           Dict with params, sample_count, mean, ci95,
                      censor_fraction, bound, survival_curve [dict]
    """
    t = np.array([s.t for s in samples], dtype = float)
    cens = np.array([s.censored for s in samples], dtype = bool)
    n = t.shape[0]
    done = t[~cens]
    mean = float(done.mean()) if done.shape[0] else None
    ci = None
    if done.shape[0] >= 2:
        half = stats.norm.ppf(0.975) * done.std(ddof = 1) / math.sqrt(done.shape[0])
        ci = [mean - half, mean + half]
    xs, ps = survival_curve(t, cens)
    return {
        "params": {"delta1": params.delta1, "delta2": params.delta2,
                   "alpha": params.alpha, "a": params.a, "b": params.b,
                   "c": params.c, "v1_size": params.v1_size},
        "sample_count": int(n),
        "mean": mean,
        "ci95": ci,
        "censor_fraction": float(cens.mean()) if n else 0.0,
        "bound": bound,
        "survival_curve": [[float(a), float(b)] for a, b in zip(xs, ps)],
    }
