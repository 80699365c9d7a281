# Invariant checks on recorded trajectories
# Author: hkntk developers

from dataclasses import dataclass

import numpy as np

from .detect import merge_targets
from ..core.hk import advance


@dataclass
class Divergence:
    """First step where a replayed state differs from the recorded one."""
    step: int
    agent: int
    expected: float
    found: float


def replay_verify(traj):
    """
    @abstract      Re-apply the noisy update with the recorded draws.
    @param traj    Full trajectory [Trajectory]
    @return        None if every step matches bit for bit, else a Divergence
    """
    p = traj.params
    for t in range(1, len(traj)):
        y = advance(traj.states[t - 1], p.epsilon, p.leader, p.noisy_agent,
                    p.sign * traj.xi[t])
        if not np.array_equal(y, traj.states[t]):
            agent = int(np.flatnonzero(y != traj.states[t])[0])
            return Divergence(t, agent, float(y[agent]), float(traj.states[t, agent]))
    return None

def first_contact(traj, init):
    """
    @abstract     First step at which some member of the noisy agent's cluster
                  is within epsilon of some member of the next cluster; len(traj)
                  if it never happens. It equals the first merge time whenever
                  the noisy agent leads its cluster (delta1 = 0 or a singleton
                  cluster); otherwise it can come earlier.
    """
    p = traj.params
    part = init.partition()
    targets = merge_targets(part, p.noisy_agent, p.orientation)
    if not targets:
        return len(traj)
    home = [idx for idx in part if p.noisy_agent in idx][0]
    near = p.sign * traj.states[:, home]
    far = p.sign * traj.states[:, targets[0]]
    gap = far.min(axis = 1) - near.max(axis = 1)
    hit = np.flatnonzero(gap <= p.epsilon)
    return int(hit[0]) if hit.shape[0] else len(traj)

def check_cluster_rigidity(traj, init):
    """
    @abstract     Until the first contact between clusters the noisy agent's
                  clustermates share one value and all other clusters are frozen.
    @return       First violating step, or None
    """
    p = traj.params
    part = init.partition()
    stop = first_contact(traj, init)
    x0 = traj.states[0]
    for t in range(min(stop, len(traj))):
        row = traj.states[t]
        for idx in part:
            if p.noisy_agent in idx:
                rest = row[idx[idx != p.noisy_agent]]
                if rest.shape[0] and not np.all(rest == rest[0]):
                    return t
            elif not np.array_equal(row[idx], x0[idx]):
                return t
    return None

def check_drift_identity(traj, init, rtol = 1e-10):
    """
    @abstract     While its cluster is isolated the noisy agent sits at
                  x* + sign*(sum_{k<t} xi(k))/m + sign*xi(t), m the cluster size.
    @param rtol   Relative tolerance per step, accumulated over steps [float]
    @return       First violating step, or None
    """
    p = traj.params
    home = [idx for idx in init.partition() if p.noisy_agent in idx][0]
    m = home.shape[0]
    x_star = traj.states[0, p.noisy_agent]
    stop = min(first_contact(traj, init) + 1, len(traj))
    acc = 0.0
    for t in range(1, stop):
        expect = x_star + p.sign * acc / m + p.sign * traj.xi[t]
        found = traj.states[t, p.noisy_agent]
        tol = rtol * t * max(1.0, abs(expect))
        if abs(found - expect) > tol:
            return t
        acc += traj.xi[t]
    return None

def check_post_consensus(traj, T):
    """After consensus at T, every later diameter stays within delta2."""
    p = traj.params
    if T is None:
        return None
    for t in range(T + 1, len(traj)):
        row = traj.states[t]
        if row.max() - row.min() > p.delta2:
            return t
    return None

def check_leader_hold(traj, T_l):
    """After capture at T_l, max(d_V, d_V_A) stays within epsilon."""
    p = traj.params
    for t in range(T_l, len(traj)):
        row = traj.states[t]
        if max(row.max() - row.min(), np.abs(row - p.leader).max()) > p.epsilon:
            return t
    return None

def leader_envelope(traj, start):
    """
    @abstract      Contraction bound on |A - x_j(t)| for a non-noisy agent j.
                   While all agents and the leader stay mutual neighbors,
                   e(t+1) = n/(n+1) e(t) + |xi(t)|/(n+1); elsewhere the bound
                   restarts from the observed distance.
    @param traj    Full trajectory of a leader run [Trajectory]
    @param start   First step of the envelope, normally T_l + 1 [int]
    @return        A tuple (observed distances, envelope), both indexed from
                   start; the agent followed is the first non-noisy one [tuple]
    """
    p = traj.params
    n, A = p.n, p.leader
    j = 0 if p.noisy_agent != 0 else 1
    seen = np.abs(A - traj.states[start:, j])
    env = np.empty_like(seen)
    if seen.shape[0] == 0:
        return seen, env
    spread = np.maximum(traj.states.max(axis = 1), A) - np.minimum(traj.states.min(axis = 1), A)
    mutual = spread <= p.epsilon
    env[0] = seen[0]
    rate = n / (n + 1.0)
    for k in range(1, seen.shape[0]):
        s = start + k - 1
        if s >= 1 and mutual[s] and mutual[s - 1]:
            env[k] = rate * env[k - 1] + abs(traj.xi[s]) / (n + 1.0)
        else:
            env[k] = seen[k]
    return seen, env

def check_leader_envelope(traj, T_l, atol = 1e-9):
    """First step after T_l + 1 at which the envelope is exceeded, or None."""
    if traj.params.n < 2:
        return None
    start = T_l + 1
    seen, env = leader_envelope(traj, start)
    bad = np.flatnonzero(seen > env + atol)
    return int(start + bad[0]) if bad.shape[0] else None

def check_leader_band(traj, start, stop, slack = None):
    """
    @abstract      Tail-window check of the long-run leader band
                   d_V_A <= 2 delta2 + slack (slack defaults to delta2).
    @return        First violating step in [start, stop), or None
    """
    p = traj.params
    slack = p.delta2 if slack is None else slack
    bound = 2 * p.delta2 + slack
    stop = min(stop, len(traj))
    for t in range(start, stop):
        if np.abs(traj.states[t] - p.leader).max() > bound:
            return t
    return None

def check_merge_step(traj, T_bar, members):
    """
    @abstract        All members of the two merging groups are mutual neighbors
                     one step after the merge time.
    @param members   Indices of the merging agents [array_like]
    @return          True if the merge closed within epsilon [bool]
    """
    p = traj.params
    if T_bar + 1 >= len(traj):
        return False
    row = traj.states[T_bar + 1, np.asarray(members)]
    return bool(row.max() - row.min() <= p.epsilon)
