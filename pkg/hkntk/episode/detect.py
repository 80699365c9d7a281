# Stopping-time detectors over recorded windows
# Author: hkntk developers

# A detector returns the first index of the window at which its condition
# holds, or None when the window ends first (censored).

import numpy as np

def _rows(window):
    states = np.asarray(window, dtype = float)
    if states.ndim == 1:
        states = states[None, :]
    return states

# The predicates below take one state (n,) or a window (steps, n); the online
# detectors of run_episode and the window detectors share them.

def diameter(states):
    """Opinion diameter d_V per row."""
    return states.max(axis = -1) - states.min(axis = -1)

def leader_distance(states, A):
    """d_V_A = max_i |x_i - A| per row."""
    return np.abs(states - A).max(axis = -1)

def merge_gap(states, members, noisy_agent, sign = 1.0):
    """Largest signed distance from the noisy agent to the members of a cluster."""
    return (sign * (states[..., members] - states[..., [noisy_agent]])).max(axis = -1)

def _first(hit):
    idx = np.flatnonzero(hit)
    return int(idx[0]) if idx.shape[0] else None

def detect_phi_consensus(window, epsilon):
    """
    @abstract        First index with opinion diameter d_V <= epsilon.
    @param window    Opinion rows, shape (steps, n) [array_like]
    @param epsilon   Confidence threshold [float]
    @return          Index into the window, or None if censored [int]
    """
    if len(window) == 0:
        return None
    states = _rows(window)
    return _first(diameter(states) <= epsilon)

def merge_targets(partition, noisy_agent, orientation = "up"):
    """Clusters the noisy agent has to reach, in the order it meets them."""
    home = None
    for g, idx in enumerate(partition):
        if noisy_agent in idx:
            home = g
            break
    if home is None:
        raise ValueError("noisy agent %d belongs to no cluster" % noisy_agent)
    if orientation == "up":
        return [partition[g] for g in range(home + 1, len(partition))]
    return [partition[g] for g in range(home - 1, -1, -1)]

def detect_merge(window, partition, noisy_agent, epsilon, orientation = "up"):
    """
    @abstract           First index at which the noisy agent lies within epsilon
                        below (above for "down") every member of each next cluster.
    @param window       Opinion rows, shape (steps, n) [array_like]
    @param partition    Index arrays of the initial clusters [list]
    @param noisy_agent  0-based index of the noisy agent [int]
    @param epsilon      Confidence threshold [float]
    @param orientation  "up" or "down" [str]
    @return             One entry per merge event: index, or None if censored [list]
    """
    targets = merge_targets(partition, noisy_agent, orientation)
    if len(window) == 0:
        return [None] * len(targets)
    states = _rows(window)
    sign = 1.0 if orientation == "up" else -1.0
    res = []
    for idx in targets:
        res.append(_first(merge_gap(states, idx, noisy_agent, sign) <= epsilon))
    return res

def detect_leader_capture(window, A, epsilon):
    """First index with max_i |x_i - A| <= epsilon, or None."""
    if len(window) == 0:
        return None
    states = _rows(window)
    return _first(leader_distance(states, A) <= epsilon)
