# Run configurations of the four reference figures
# Author: hkntk developers

# The leader of fig3/fig4 is the fixed-opinion agent A = 4.01, kept outside the
# ten followers; the "11 agents" of those figures count it once.

import copy

from ..config import DEF_HORIZON

# steps written by `figure`, and by `simulate --preset` without --horizon
TRAJECTORY_HORIZON = 10000

_CLUSTERS = [
    {"value": 0.0, "size": 4},
    {"value": 1.5, "size": 4},
    {"value": 3.0, "size": 2},
]

_BASE = {
    "n": 10,
    "epsilon": 1.0,
    "delta1": 0.05,
    "delta2": 0.05,
    "clusters": _CLUSTERS,
    "leader": None,
    "seed": 0,
    "horizon": DEF_HORIZON,
    "runs": None,
    "output_dir": ".",
}

PRESETS = {
    "fig1": dict(_BASE),
    "fig2": dict(_BASE, delta1 = 0.048),
    "fig3": dict(_BASE, leader = 4.01),
    "fig4": dict(_BASE, leader = 4.01, delta1 = 0.048),
}

def preset_names():
    return sorted(PRESETS.keys())

def get_preset(name):
    """A deep copy of preset `name`; KeyError if unknown."""
    if name not in PRESETS:
        raise KeyError("unknown preset '%s', expected one of %s" %
                       (name, "|".join(preset_names())))
    return copy.deepcopy(PRESETS[name])
