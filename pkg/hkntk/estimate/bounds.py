# Upper bounds on the expected stopping times
# Author: hkntk developers

import math

from ..core.hk import require_divisive_init

def _rate(params):
    if params.delta1 > params.delta2:
        raise ValueError("delta1 > delta2; normalize the orientation first")
    if params.delta1 == params.delta2:
        return None
    return 2.0 * params.n / (params.delta2 - params.delta1)

def consensus_time_bound(init, params):
    """
    @abstract        Bound on E T, T the first time with d_V <= epsilon:
                     2n/(delta2-delta1) * (x*_Nc - x*_1 + (Nc-1) delta2).
    @param init      Divisive initial condition [DivisiveInit]
    @param params    Model parameters [ModelParams]
    @return          The bound, math.inf for neutral noise [float]
    """
    require_divisive_init(init, params)
    rate = _rate(params)
    if rate is None:
        return math.inf
    values = init.cluster_values
    return rate * (values[-1] - values[0] + (init.n_clusters - 1) * params.delta2)

def leader_time_bound(init, params):
    """
    @abstract        Bound on E T_l, T_l the first time every agent is within
                     epsilon of the leader:
                     2n/(delta2-delta1) * (|A - x*_home| + epsilon + Nc delta2),
                     x*_home the cluster holding the noisy agent's end.
    @return          The bound, math.inf for neutral noise [float]
    """
    if params.leader is None:
        raise ValueError("leader bound needs a leader")
    require_divisive_init(init, params)
    rate = _rate(params)
    if rate is None:
        return math.inf
    home = init.cluster_values[0] if params.orientation == "up" else init.cluster_values[-1]
    dist = params.sign * (params.leader - home)
    return rate * (dist + params.epsilon + init.n_clusters * params.delta2)
