# Domain types of the noisy HK model
# Author: hkntk developers

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

# token returned by neighbor_set() when the leader is in range
LEADER = "leader"

ORIENTATIONS = ("up", "down")


@dataclass
class OpinionState:
    """Opinion values x of the n agents at step t."""
    t: int
    x: np.ndarray

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype = float)
        if self.x.ndim != 1:
            raise ValueError("opinion vector must be one-dimensional")
        if self.t < 0:
            raise ValueError("step index must be non-negative, got %d" % self.t)

    @property
    def n(self):
        return self.x.shape[0]

    def is_finite(self):
        return bool(np.all(np.isfinite(self.x)))

    def copy(self):
        return OpinionState(self.t, self.x.copy())


@dataclass
class ModelParams:
    """
    @abstract             Parameters of the noise intervention model.
    @param n              Number of agents [int]
    @param epsilon        Confidence threshold [float]
    @param delta1         Lower noise bound, noise lies on [-delta1, delta2] [float]
    @param delta2         Upper noise bound [float]
    @param noisy_agent    0-based index of the agent receiving noise; defaults to
                          the lowest agent ("up") or the highest one ("down") [int]
    @param leader         Fixed opinion A of the leader, or None [float]
    @param orientation    "up": noise pushes the bottom agent upwards;
                          "down": the drawn noise is mirrored and applied to the
                          top agent, i.e. the support becomes [-delta2, delta1] [str]
    """
    n: int
    epsilon: float
    delta1: float = 0.0
    delta2: float = 0.0
    noisy_agent: Optional[int] = None
    leader: Optional[float] = None
    orientation: str = "up"

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be an integer >= 1, got %r" % (self.n,))
        self.n = int(self.n)
        self.epsilon = float(self.epsilon)
        self.delta1 = float(self.delta1)
        self.delta2 = float(self.delta2)
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise ValueError("epsilon must be a positive real, got %r" % self.epsilon)
        if not (0 <= self.delta1 <= self.delta2) or not math.isfinite(self.delta2):
            raise ValueError("noise bounds must satisfy 0 <= delta1 <= delta2, "
                             "got delta1=%r, delta2=%r" % (self.delta1, self.delta2))
        if self.orientation not in ORIENTATIONS:
            raise ValueError("orientation must be one of %s" % "|".join(ORIENTATIONS))
        if self.noisy_agent is None:
            self.noisy_agent = 0 if self.orientation == "up" else self.n - 1
        if not (0 <= self.noisy_agent < self.n):
            raise ValueError("noisy agent index %d out of range [0, %d)"
                             % (self.noisy_agent, self.n))
        if self.leader is not None:
            self.leader = float(self.leader)
            if not math.isfinite(self.leader):
                raise ValueError("leader opinion must be finite")

    @property
    def sign(self):
        """Sign applied to the drawn noise before it is added."""
        return 1.0 if self.orientation == "up" else -1.0

    @property
    def has_leader(self):
        return self.leader is not None

    @property
    def noise_free(self):
        return self.delta2 == 0.0


@dataclass(frozen = True)
class DivisiveInit:
    """Cluster values x*_1 < ... < x*_Nc and the cluster sizes."""
    cluster_values: Tuple[float, ...]
    cluster_sizes: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cluster_values",
                           tuple(float(v) for v in self.cluster_values))
        object.__setattr__(self, "cluster_sizes",
                           tuple(int(s) for s in self.cluster_sizes))

    @property
    def n(self):
        return sum(self.cluster_sizes)

    @property
    def n_clusters(self):
        return len(self.cluster_values)

    def expand(self):
        """OpinionState at t=0, lower clusters on lower indices."""
        x = np.repeat(np.asarray(self.cluster_values, dtype = float),
                      self.cluster_sizes)
        return OpinionState(0, x)

    def partition(self):
        """List of index arrays, one per cluster."""
        bounds = np.cumsum((0,) + self.cluster_sizes)
        return [np.arange(bounds[g], bounds[g + 1]) for g in range(self.n_clusters)]

    @classmethod
    def from_pairs(cls, pairs):
        """Build from [(value, size), ...] or [{"value":, "size":}, ...]."""
        values, sizes = [], []
        for p in pairs:
            if isinstance(p, dict):
                values.append(p["value"])
                sizes.append(p["size"])
            else:
                values.append(p[0])
                sizes.append(p[1])
        return cls(tuple(values), tuple(sizes))


@dataclass(frozen = True)
class Violation:
    """One failed inequality of a divisive initial condition."""
    rule: str
    message: str
