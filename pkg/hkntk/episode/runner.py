# Simulate one episode of the noisy HK model and detect its stopping times
# Author: hkntk developers

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .detect import diameter, leader_distance, merge_gap, merge_targets
from ..config import DEBUG, DEF_HORIZON
from ..core.hk import advance, require_divisive_init
from ..core.model import DivisiveInit, ModelParams
from ..noise.stream import NoiseParams
from ..utils.base import debug

RECORD_MODES = ("full", "metrics", "summary")

# draws fetched from the stream per refill
CHUNK = 4096


@dataclass
class EpisodeConfig:
    """
    @abstract            One episode: initial clusters, model, horizon and recording.
    @param init          Divisive initial condition [DivisiveInit]
    @param params        Model parameters [ModelParams]
    @param horizon       Maximum number of steps [int]
    @param record_mode   "full" (all states), "metrics" (per-step metrics) or
                         "summary" (stopping times only) [str]
    @param stop_after    Steps kept after every detector has fired; None runs
                         to the horizon [int]
    @param validate      Check the divisive condition before stepping [bool]
    """
    init: DivisiveInit
    params: ModelParams
    horizon: int = DEF_HORIZON
    record_mode: str = "full"
    stop_after: Optional[int] = None
    validate: bool = True
    noise: Optional[NoiseParams] = None

    def __post_init__(self):
        if int(self.horizon) != self.horizon or self.horizon < 1:
            raise ValueError("horizon must be an integer >= 1, got %r" % (self.horizon,))
        self.horizon = int(self.horizon)
        if self.record_mode not in RECORD_MODES:
            raise ValueError("record mode must be one of %s" % "|".join(RECORD_MODES))
        if self.stop_after is not None and self.stop_after < 0:
            raise ValueError("stop_after must be non-negative")
        derived = NoiseParams.from_model(self.params)
        if self.noise is None:
            self.noise = derived
        elif self.noise != derived:
            raise ValueError("noise parameters disagree with the model parameters")
        if self.init.n != self.params.n:
            raise ValueError("initial clusters hold %d agents, model expects %d"
                             % (self.init.n, self.params.n))


@dataclass
class StoppingRecord:
    """
    @abstract   First-hit times of one episode. A censored entry holds the
                number of simulated steps as a lower bound.
    """
    T: int
    T_censored: bool
    T_bar: List[int] = field(default_factory = list)
    T_bar_censored: List[bool] = field(default_factory = list)
    T_l: Optional[int] = None
    T_l_censored: bool = False
    steps: int = 0
    horizon: int = 0

    def to_dict(self):
        return {
            "T": self.T, "T_censored": self.T_censored,
            "T_bar": list(self.T_bar), "T_bar_censored": list(self.T_bar_censored),
            "T_l": self.T_l, "T_l_censored": self.T_l_censored,
            "steps": self.steps, "horizon": self.horizon,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["T"], d["T_censored"], list(d["T_bar"]), list(d["T_bar_censored"]),
                   d["T_l"], d["T_l_censored"], d["steps"], d["horizon"])

    def value(self, target = "T"):
        """(time, censored) of the stopping time named by target: T or T_l."""
        if target == "T":
            return self.T, self.T_censored
        if target == "T_l":
            if self.T_l is None:
                raise ValueError("episode has no leader")
            return self.T_l, self.T_l_censored
        raise ValueError("unknown stopping time '%s'" % target)

    def check_order(self):
        """List of broken ordering relations between uncensored entries."""
        bad = []
        done = [t for t, c in zip(self.T_bar, self.T_bar_censored) if not c]
        if any(b < a for a, b in zip(done, done[1:])):
            bad.append("T_bar not nondecreasing")
        if not self.T_censored and done and self.T < done[-1]:
            bad.append("T before last T_bar")
        if self.T_l is not None and not (self.T_censored or self.T_l_censored) \
                and self.T_l < self.T:
            bad.append("T_l before T")
        return bad


@dataclass
class Trajectory:
    """States x(0..T) and the draw xi(t) that produced x(t); xi[0] is nan."""
    params: ModelParams
    states: np.ndarray
    xi: np.ndarray

    def __len__(self):
        return self.states.shape[0]

    @property
    def leader(self):
        return self.params.leader


@dataclass
class Metrics:
    """Per-step t, d_V, d_V_A (nan without leader), x_noisy and xi."""
    t: np.ndarray
    d_V: np.ndarray
    d_V_A: np.ndarray
    x_noisy: np.ndarray
    xi: np.ndarray


class _Recorder:
    """Growable column store, doubled on demand."""
    def __init__(self, width, capacity):
        self.width = width
        self.size = 0
        self.buf = np.empty((max(capacity, 16), width))

    def append(self, row):
        if self.size == self.buf.shape[0]:
            grown = np.empty((self.buf.shape[0] * 2, self.width))
            grown[:self.size] = self.buf
            self.buf = grown
        self.buf[self.size] = row
        self.size += 1

    def data(self):
        return self.buf[:self.size].copy()


def run_episode(config, stream):
    """
    @abstract        Simulate the noisy model for up to config.horizon steps.
    @param config    Episode configuration [EpisodeConfig]
    @param stream    Noise stream owned by this episode [StreamHandle]
    @return          A tuple (Trajectory | Metrics | None, StoppingRecord); the
                     first element follows config.record_mode [tuple]
    """
    params = config.params
    if config.validate:
        require_divisive_init(config.init, params)

    eps = params.epsilon
    A = params.leader
    noisy = params.noisy_agent
    sign = params.sign
    horizon = config.horizon
    mode = config.record_mode

    x = config.init.expand().x.copy()
    targets = merge_targets(config.init.partition(), noisy, params.orientation)

    T = None
    T_bar = [None] * len(targets)
    T_l = None
    pending_merge = list(range(len(targets)))
    stop_at = None

    capacity = min(horizon + 1, 1 << 16)
    if mode == "full":
        rec = _Recorder(params.n + 1, capacity)
    elif mode == "metrics":
        rec = _Recorder(5, capacity)
    else:
        rec = None

    def detect(t, x, xi):
        nonlocal T, T_l, stop_at
        dv = diameter(x)
        if T is None and dv <= eps:
            T = t
        dva = np.nan
        if A is not None:
            dva = leader_distance(x, A)
            if T_l is None and dva <= eps:
                T_l = t
        for k in list(pending_merge):
            if merge_gap(x, targets[k], noisy, sign) <= eps:
                T_bar[k] = t
                pending_merge.remove(k)
        if rec is not None:
            if mode == "full":
                row = np.empty(params.n + 1)
                row[:-1] = x
                row[-1] = xi
                rec.append(row)
            else:
                rec.append((t, dv, dva, x[noisy], xi))
        if stop_at is None and config.stop_after is not None and T is not None \
                and not pending_merge and (A is None or T_l is not None):
            stop_at = t + config.stop_after

    detect(0, x, np.nan)
    t = 0
    chunk = np.empty(0)
    pos = 0
    while t < horizon and (stop_at is None or t < stop_at):
        if pos >= chunk.shape[0]:
            chunk = stream.draws(config.noise, CHUNK)
            pos = 0
        xi = chunk[pos]
        pos += 1
        x = advance(x, eps, A, noisy, sign * xi)
        t += 1
        detect(t, x, xi)

    record = StoppingRecord(
        T = t if T is None else T, T_censored = T is None,
        T_bar = [t if v is None else v for v in T_bar],
        T_bar_censored = [v is None for v in T_bar],
        T_l = None if A is None else (t if T_l is None else T_l),
        T_l_censored = A is not None and T_l is None,
        steps = t, horizon = horizon)
    if DEBUG:
        debug("[run_episode] run %d: %s" % (stream.run_index, record.to_dict()))

    if mode == "full":
        data = rec.data()
        return Trajectory(params, data[:, :-1], data[:, -1]), record
    if mode == "metrics":
        data = rec.data()
        return Metrics(data[:, 0].astype(np.int64), data[:, 1], data[:, 2],
                       data[:, 3], data[:, 4]), record
    return None, record
