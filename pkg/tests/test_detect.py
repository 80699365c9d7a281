import numpy as np
import pytest

from hkntk.core.model import DivisiveInit, ModelParams
from hkntk.episode.detect import (detect_leader_capture, detect_merge,
    detect_phi_consensus, diameter, leader_distance, merge_gap, merge_targets)
from hkntk.episode.runner import EpisodeConfig, run_episode
from hkntk.noise.stream import derive_stream

from conftest import preset_episode


def test_phi_consensus():
    assert detect_phi_consensus([[0, 3], [0, 3], [0.2, 0.9]], 1.0) == 2
    assert detect_phi_consensus([[0, 3], [0, 2.5]], 1.0) is None
    assert detect_phi_consensus([[0, 0.5], [0, 3]], 1.0) == 0
    assert detect_phi_consensus([], 1.0) is None


def test_merge_on_synthetic_path():
    t = np.arange(12)
    window = np.column_stack((t * 0.125, np.full(12, 1.875)))
    partition = [np.array([0]), np.array([1])]
    assert detect_merge(window, partition, 0, 1.0) == [7]


def test_merge_at_start_and_censored():
    partition = [np.array([0]), np.array([1])]
    assert detect_merge([[0.0, 0.9]], partition, 0, 1.0) == [0]
    assert detect_merge([[0.0, 1.5], [0.1, 1.5]], partition, 0, 1.0) == [None]
    assert detect_merge([], partition, 0, 1.0) == [None]


def test_merge_needs_every_member():
    partition = [np.array([0]), np.array([1, 2])]
    window = [[0.25, 1.25, 1.5], [0.5, 1.25, 1.5]]
    assert detect_merge(window, partition, 0, 1.0) == [1]


def test_merge_targets_follow_orientation():
    partition = [np.arange(0, 4), np.arange(4, 8), np.arange(8, 10)]
    up = merge_targets(partition, 0, "up")
    down = merge_targets(partition, 9, "down")
    assert [g[0] for g in up] == [4, 8]
    assert [g[0] for g in down] == [4, 0]


def test_merge_down_orientation():
    partition = [np.array([0]), np.array([1])]
    window = [[0.0, 1.5], [0.0, 1.2], [0.0, 0.95]]
    assert detect_merge(window, partition, 1, 1.0, "down") == [2]


def test_leader_capture():
    window = [[0.0, 3.0], [2.5, 3.2], [3.1, 3.4]]
    assert detect_leader_capture(window, 4.01, 1.0) == 2
    assert detect_leader_capture(window[:2], 4.01, 1.0) is None
    assert detect_leader_capture([], 4.01, 1.0) is None


def test_row_predicates():
    rows = np.array([[0.0, 1.0, 3.0], [1.0, 1.5, 2.0]])
    assert np.array_equal(diameter(rows), [3.0, 1.0])
    assert diameter(rows[0]) == 3.0
    assert np.array_equal(leader_distance(rows, 2.5), [2.5, 1.5])
    assert np.array_equal(merge_gap(rows, [1, 2], 0), [3.0, 1.0])
    assert np.array_equal(merge_gap(rows, [0, 1], 2, -1.0), [3.0, 1.0])


def recorded_times(episode, seed):
    traj, rec = run_episode(episode, derive_stream(seed, 0))
    p = episode.params
    T = detect_phi_consensus(traj.states, p.epsilon)
    T_bar = detect_merge(traj.states, episode.init.partition(), p.noisy_agent,
                         p.epsilon, p.orientation)
    T_l = None if p.leader is None else detect_leader_capture(traj.states, p.leader, p.epsilon)
    return rec, T, T_bar, T_l


def online(t, censored):
    return None if censored else t


def test_window_detectors_agree_with_the_episode():
    init = DivisiveInit((0.0, 1.2), (1, 1))
    for orientation in ("up", "down"):
        params = ModelParams(2, 1.0, 0.0, 0.05, orientation = orientation)
        rec, T, T_bar, _ = recorded_times(EpisodeConfig(init, params, horizon = 5000), 1)
        assert not rec.T_censored
        assert T == rec.T
        assert T_bar == [rec.T_bar[0]]


@pytest.mark.parametrize("name", ["fig2", "fig4"])
def test_window_detectors_agree_on_presets(name):
    episode = preset_episode(name, horizon = 3000)
    rec, T, T_bar, T_l = recorded_times(episode, 5)
    assert T == online(rec.T, rec.T_censored)
    assert T_bar == [online(t, c) for t, c in zip(rec.T_bar, rec.T_bar_censored)]
    if episode.params.leader is not None:
        assert T_l == online(rec.T_l, rec.T_l_censored)
