import math

import pytest

from hkntk.core.model import DivisiveInit, ModelParams
from hkntk.errors import InitViolation
from hkntk.estimate.bounds import consensus_time_bound, leader_time_bound

from conftest import preset_conf


def test_neutral_noise_has_no_finite_bound(fig1):
    assert consensus_time_bound(fig1.divisive_init(), fig1.model_params()) == math.inf


def test_consensus_bound_of_fig2(fig2):
    bound = consensus_time_bound(fig2.divisive_init(), fig2.model_params())
    assert bound == pytest.approx(31000)


def test_consensus_bound_of_two_clusters():
    init = DivisiveInit((0.0, 1.05), (3, 2))
    params = ModelParams(5, 1.0, 0.01, 0.05)
    assert consensus_time_bound(init, params) == pytest.approx(275)


def test_down_orientation_gives_the_same_bound():
    conf = preset_conf("fig2", orientation = "down")
    bound = consensus_time_bound(conf.divisive_init(), conf.model_params())
    assert bound == pytest.approx(31000)


def test_leader_bound_of_fig4(fig4):
    bound = leader_time_bound(fig4.divisive_init(), fig4.model_params())
    assert bound == pytest.approx(51600)


def test_leader_bound_below_the_clusters():
    init = DivisiveInit((0.0, 1.5, 3.0), (4, 4, 2))
    params = ModelParams(10, 1.0, 0.048, 0.05, leader = -1.01, orientation = "down")
    # |A - 3| + epsilon + 3 delta2
    assert leader_time_bound(init, params) == pytest.approx(10000 * (4.01 + 1 + 0.15))


def test_leader_bound_preconditions(fig2):
    with pytest.raises(ValueError):
        leader_time_bound(fig2.divisive_init(), fig2.model_params())
    init = DivisiveInit((0.0, 1.5, 3.0), (4, 4, 2))
    params = ModelParams(10, 1.0, 0.048, 0.05, leader = 4.0)
    with pytest.raises(InitViolation) as e:
        leader_time_bound(init, params)
    assert e.value.violations[0].rule == "leader_position"


def test_bounds_need_a_divisive_init():
    params = ModelParams(5, 1.0, 0.01, 0.05)
    with pytest.raises(InitViolation):
        consensus_time_bound(DivisiveInit((0.0, 0.5), (3, 2)), params)
