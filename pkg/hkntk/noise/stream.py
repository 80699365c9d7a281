# Seeded uniform noise streams
# Author: hkntk developers

# Every run owns a Philox (counter-based) generator keyed by
# SeedSequence(master_seed, spawn_key=(run_index,)), so a stream can be derived
# without touching any other stream. Uniforms are pulled in fixed blocks; the
# sequence does not depend on how callers slice their requests.

from dataclasses import dataclass

import numpy as np

BLOCK = 4096
MAX_SEED = 2 ** 64


@dataclass(frozen = True)
class NoiseParams:
    """Support [-delta1, delta2] of the uniform noise."""
    delta1: float = 0.0
    delta2: float = 0.0

    def __post_init__(self):
        if not (0 <= self.delta1 <= self.delta2):
            raise ValueError("noise bounds must satisfy 0 <= delta1 <= delta2, "
                             "got delta1=%r, delta2=%r" % (self.delta1, self.delta2))

    @property
    def width(self):
        return self.delta1 + self.delta2

    @property
    def mean(self):
        return (self.delta2 - self.delta1) / 2.0

    @property
    def neutral(self):
        return self.delta1 == self.delta2

    @property
    def degenerate(self):
        return self.width == 0.0

    @classmethod
    def from_model(cls, params):
        return cls(params.delta1, params.delta2)


class StreamHandle:
    """
    @abstract            Replayable source of uniforms for one run.
    @param master_seed   Experiment seed, 0 <= seed < 2**64 [int]
    @param run_index     Index of the run inside the experiment [int]
    """
    def __init__(self, master_seed, run_index):
        if int(master_seed) != master_seed or not (0 <= master_seed < MAX_SEED):
            raise ValueError("master seed must be an integer in [0, 2**64), got %r"
                             % (master_seed,))
        if int(run_index) != run_index or run_index < 0:
            raise ValueError("run index must be a non-negative integer, got %r"
                             % (run_index,))
        self.master_seed = int(master_seed)
        self.run_index = int(run_index)
        self.counter = 0
        ss = np.random.SeedSequence(self.master_seed, spawn_key = (self.run_index,))
        self._gen = np.random.Generator(np.random.Philox(ss))
        self._buf = np.empty(0)
        self._pos = 0

    def __repr__(self):
        return "StreamHandle(master_seed=%d, run_index=%d, counter=%d)" % (
            self.master_seed, self.run_index, self.counter)

    def uniforms(self, k):
        """Next k uniforms on [0, 1)."""
        out = np.empty(k)
        filled = 0
        while filled < k:
            if self._pos >= self._buf.shape[0]:
                self._buf = self._gen.random(BLOCK)
                self._pos = 0
            m = min(k - filled, self._buf.shape[0] - self._pos)
            out[filled:filled + m] = self._buf[self._pos:self._pos + m]
            self._pos += m
            filled += m
        self.counter += k
        return out

    def draws(self, params, k):
        """Next k noise values on [-delta1, delta2]."""
        u = self.uniforms(k)
        if params.degenerate:
            return np.zeros(k)
        xi = -params.delta1 + u * params.width
        # rounding of the affine map must not leave the closed support
        return np.minimum(xi, params.delta2)


def derive_stream(master_seed, run_index):
    """Stream of run `run_index`; (master_seed, run_index) fixes every draw."""
    return StreamHandle(master_seed, run_index)

def draw(stream, params):
    """One noise value on [-delta1, delta2]; advances the stream counter."""
    return float(stream.draws(params, 1)[0])
