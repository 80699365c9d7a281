# Update rules and metrics of the HK bounded-confidence model
# Author: hkntk developers

# Neighborhoods use a closed comparison |x_j - x_i| <= epsilon with no
# tolerance band. Each average is taken relative to the smallest neighbor
# value, so a block of equal opinions maps onto itself bit for bit and agents
# sharing a neighbor set receive bitwise-identical values.

import numpy as np

from .model import LEADER, OpinionState, Violation
from ..errors import InitViolation, NonConvergenceError

def _as_array(state):
    return state.x if isinstance(state, OpinionState) else np.asarray(state, dtype = float)

def neighbor_mask(x, epsilon, leader = None):
    """
    @abstract        Neighbor relation of all agents.
    @param x         Opinion values [np.ndarray]
    @param epsilon   Confidence threshold [float]
    @param leader    Leader opinion or None [float]
    @return          Boolean matrix of shape (n, n) or (n, n + 1); the extra
                     column tells whether the leader is in range [np.ndarray]
    """
    xe = x if leader is None else np.append(x, leader)
    return np.abs(x[:, None] - xe[None, :]) <= epsilon

def hk_average(x, epsilon, leader = None):
    """Average of each agent over its neighbor set (leader included when in range)."""
    xe = x if leader is None else np.append(x, leader)
    adj = neighbor_mask(x, epsilon, leader)
    ref = np.where(adj, xe[None, :], np.inf).min(axis = 1)
    dev = np.where(adj, xe[None, :] - ref[:, None], 0.0).sum(axis = 1)
    return ref + dev / adj.sum(axis = 1)

def advance(x, epsilon, leader, noisy_agent, term):
    """One update on raw arrays; `term` is the signed noise added to the noisy agent."""
    y = hk_average(x, epsilon, leader)
    if term != 0.0:
        y[noisy_agent] += term
    return y

def neighbor_set(state, params, i):
    """
    @abstract        Neighbor set of agent i.
    @param state     Current opinions [OpinionState]
    @param params    Model parameters [ModelParams]
    @param i         0-based agent index [int]
    @return          Set of 0-based agent indices, plus LEADER when the
                     leader lies within epsilon [set]
    """
    x = _as_array(state)
    if isinstance(i, bool) or int(i) != i or not (0 <= i < x.shape[0]):
        raise ValueError("agent index %r out of range [0, %d)" % (i, x.shape[0]))
    i = int(i)
    nbrs = set(int(j) for j in np.flatnonzero(np.abs(x - x[i]) <= params.epsilon))
    if params.leader is not None and abs(params.leader - x[i]) <= params.epsilon:
        nbrs.add(LEADER)
    return nbrs

def step_noise_free(state, params):
    """Synchronous HK update; a configured leader joins the averages but never moves."""
    y = hk_average(state.x, params.epsilon, params.leader)
    return OpinionState(state.t + 1, y)

def step_noisy(state, params, xi):
    """
    @abstract        Noisy HK update: averaging, then the noise term on the noisy agent.
    @param state     Current opinions [OpinionState]
    @param params    Model parameters [ModelParams]
    @param xi        Noise draw on [-delta1, delta2]; mirrored for "down"
                     orientation before it is added [float]
    @return          Opinions at t + 1 [OpinionState]
    """
    xi = float(xi)
    if not (-params.delta1 <= xi <= params.delta2):
        raise ValueError("noise draw %r outside the support [%r, %r]"
                         % (xi, -params.delta1, params.delta2))
    y = advance(state.x, params.epsilon, params.leader, params.noisy_agent,
                params.sign * xi)
    return OpinionState(state.t + 1, y)

def d_V(state):
    """Opinion diameter max |x_i - x_j| over the agents (leader excluded)."""
    x = _as_array(state)
    return float(x.max() - x.min())

def d_V_A(state, A):
    """Largest distance of an agent to the leader opinion A."""
    x = _as_array(state)
    return float(np.abs(x - A).max())

def prefix_averages(z):
    """Averages of the first k entries, k = 1..len(z)."""
    z = np.asarray(z, dtype = float)
    return np.cumsum(z) / np.arange(1, z.shape[0] + 1)

def validate_divisive_init(init, params):
    """
    @abstract        Check a divisive initial condition (and leader position).
    @param init      Clusters [DivisiveInit]
    @param params    Model parameters [ModelParams]
    @return          A list of Violation records, empty if the condition holds [list]
    """
    res = []
    values, sizes = init.cluster_values, init.cluster_sizes
    if len(values) != len(sizes):
        res.append(Violation("cluster_shape", "%d cluster values but %d cluster sizes"
                             % (len(values), len(sizes))))
        return res
    if len(values) < 2:
        res.append(Violation("cluster_count",
                             "a divisive system needs at least 2 clusters, got %d" % len(values)))
    for g, v in enumerate(values):
        if not np.isfinite(v):
            res.append(Violation("cluster_value", "cluster %d value %r is not finite" % (g + 1, v)))
    for g, s in enumerate(sizes):
        if s < 1:
            res.append(Violation("cluster_size", "cluster %d has size %d" % (g + 1, s)))
    if sum(sizes) != params.n:
        res.append(Violation("agent_count", "cluster sizes sum to %d, expected n=%d"
                             % (sum(sizes), params.n)))
    for g in range(len(values) - 1):
        gap = values[g + 1] - values[g]
        if not gap > params.epsilon:
            res.append(Violation("cluster_gap",
                                 "gap %r between clusters %d and %d is not greater than epsilon %r"
                                 % (gap, g + 1, g + 2, params.epsilon)))
    if params.leader is not None and values:
        A = params.leader
        if params.orientation == "up" and not A > values[-1] + params.epsilon:
            res.append(Violation("leader_position",
                                 "leader %r must exceed top cluster %r + epsilon %r"
                                 % (A, values[-1], params.epsilon)))
        elif params.orientation == "down" and not A < values[0] - params.epsilon:
            res.append(Violation("leader_position",
                                 "leader %r must lie below bottom cluster %r - epsilon %r"
                                 % (A, values[0], params.epsilon)))
    return res

def require_divisive_init(init, params):
    violations = validate_divisive_init(init, params)
    if violations:
        raise InitViolation(violations)

def run_noise_free_to_fixed_point(state, params, max_steps = 10000):
    """
    @abstract          Iterate the noise-free update until the state repeats exactly.
    @param state       Initial opinions, any free-form state [OpinionState]
    @param params      Model parameters; noise settings are ignored [ModelParams]
    @param max_steps   Step budget [int]
    @return            A tuple (terminal OpinionState, number of changing steps) [tuple]
    """
    x = _as_array(state).copy()
    t0 = state.t if isinstance(state, OpinionState) else 0
    for steps in range(max_steps + 1):
        y = hk_average(x, params.epsilon, params.leader)
        if np.array_equal(x, y):
            return OpinionState(t0 + steps, x), steps
        x = y
    raise NonConvergenceError("no fixed point within %d steps" % max_steps)
