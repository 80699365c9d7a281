import pytest

from hkntk.episode.presets import get_preset
from hkntk.episode.runner import EpisodeConfig
from hkntk.utils.runconf import parse_runconf


def preset_conf(name, **overrides):
    doc = get_preset(name)
    doc.update(overrides)
    return parse_runconf(doc)


def preset_episode(name, horizon = 10000, record_mode = "full", stop_after = None, **overrides):
    conf = preset_conf(name, **overrides)
    return EpisodeConfig(conf.divisive_init(), conf.model_params(), horizon = horizon,
                         record_mode = record_mode, stop_after = stop_after)


@pytest.fixture
def fig1():
    return preset_conf("fig1")


@pytest.fixture
def fig2():
    return preset_conf("fig2")


@pytest.fixture
def fig4():
    return preset_conf("fig4")
