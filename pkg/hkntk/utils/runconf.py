# JSON run configuration shared by the commands
# Author: hkntk developers

import json
import math
import sys
from dataclasses import dataclass
from typing import List, Optional

from .base import warn
from ..config import DEF_HORIZON, DEF_NPROC, DEF_OUT_DIR, DEF_SEED
from ..episode.presets import get_preset
from ..core.model import ORIENTATIONS, DivisiveInit, ModelParams
from ..errors import ConfigError
from ..noise.stream import MAX_SEED

REQUIRED_KEYS = ("n", "epsilon", "delta1", "delta2", "clusters")
OPTIONAL_KEYS = ("leader", "seed", "horizon", "runs", "output_dir")
EXTENSION_KEYS = ("orientation", "noisy_agent", "nproc", "horizons")
CLUSTER_KEYS = ("value", "size")


@dataclass
class RunConfigFile:
    """Validated content of a run configuration file."""
    n: int
    epsilon: float
    delta1: float
    delta2: float
    clusters: List[dict]
    leader: Optional[float] = None
    seed: int = DEF_SEED
    horizon: int = DEF_HORIZON
    runs: Optional[int] = None
    output_dir: str = DEF_OUT_DIR
    orientation: str = "up"
    noisy_agent: Optional[int] = None
    nproc: int = DEF_NPROC
    horizons: Optional[List[int]] = None

    def model_params(self):
        return ModelParams(self.n, self.epsilon, self.delta1, self.delta2,
                           noisy_agent = self.noisy_agent, leader = self.leader,
                           orientation = self.orientation)

    def divisive_init(self):
        return DivisiveInit.from_pairs(self.clusters)

    def to_dict(self):
        """Plain dict; extension keys only appear when set away from their default."""
        doc = {
            "n": self.n, "epsilon": self.epsilon,
            "delta1": self.delta1, "delta2": self.delta2,
            "clusters": [{"value": c["value"], "size": c["size"]} for c in self.clusters],
            "leader": self.leader, "seed": self.seed, "horizon": self.horizon,
            "runs": self.runs, "output_dir": self.output_dir,
        }
        if self.orientation != "up":
            doc["orientation"] = self.orientation
        if self.noisy_agent is not None:
            doc["noisy_agent"] = self.noisy_agent
        if self.nproc != DEF_NPROC:
            doc["nproc"] = self.nproc
        if self.horizons is not None:
            doc["horizons"] = list(self.horizons)
        return doc


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)

def _is_real(v):
    return (isinstance(v, (int, float)) and not isinstance(v, bool)
            and math.isfinite(v))

def _int(doc, key, low, path = None):
    v = doc[key]
    if not _is_int(v) or v < low:
        raise ConfigError(path or key, "expected an integer >= %d, got %r" % (low, v))
    return v

def _real(doc, key, path = None):
    v = doc[key]
    if not _is_real(v):
        raise ConfigError(path or key, "expected a finite number, got %r" % (v,))
    return float(v)

def _clusters(items):
    if not isinstance(items, list) or not items:
        raise ConfigError("clusters", "expected a non-empty list of {value, size}")
    res = []
    for g, c in enumerate(items):
        path = "clusters[%d]" % g
        if not isinstance(c, dict):
            raise ConfigError(path, "expected an object with keys value and size")
        for key in c:
            if key not in CLUSTER_KEYS:
                raise ConfigError("%s.%s" % (path, key), "unknown key")
        for key in CLUSTER_KEYS:
            if key not in c:
                raise ConfigError("%s.%s" % (path, key), "missing key")
        res.append({"value": _real(c, "value", path + ".value"),
                    "size": _int(c, "size", 1, path + ".size")})
    return res

def parse_runconf(doc, command = "runconf"):
    """
    @abstract         Validate a decoded JSON document.
    @param doc        Decoded configuration [dict]
    @param command    Name used in warnings [str]
    @return           The configuration [RunConfigFile]
    @raise            ConfigError with the path of the first offending field
    """
    if not isinstance(doc, dict):
        raise ConfigError("", "configuration must be a JSON object")
    known = REQUIRED_KEYS + OPTIONAL_KEYS + EXTENSION_KEYS
    for key in doc:
        if key not in known:
            raise ConfigError(key, "unknown key")
    for key in REQUIRED_KEYS:
        if key not in doc:
            raise ConfigError(key, "missing key")

    n = _int(doc, "n", 1)
    epsilon = _real(doc, "epsilon")
    if epsilon <= 0:
        raise ConfigError("epsilon", "must be positive, got %r" % epsilon)
    delta1 = _real(doc, "delta1")
    delta2 = _real(doc, "delta2")
    if delta1 < 0:
        raise ConfigError("delta1", "must be non-negative, got %r" % delta1)
    if delta2 < delta1:
        raise ConfigError("delta1", "must not exceed delta2 (%r > %r)" % (delta1, delta2))
    if delta2 > epsilon:
        raise ConfigError("delta2", "must not exceed epsilon (%r > %r)" % (delta2, epsilon))
    if delta2 > epsilon / (2.0 * n):
        warn(command, "delta2=%r exceeds epsilon/2n=%r; results are exploratory"
             % (delta2, epsilon / (2.0 * n)))
    conf = RunConfigFile(n, epsilon, delta1, delta2, _clusters(doc["clusters"]))

    if doc.get("leader") is not None:
        conf.leader = _real(doc, "leader")
    if "seed" in doc:
        conf.seed = _int(doc, "seed", 0)
        if conf.seed >= MAX_SEED:
            raise ConfigError("seed", "must be below 2**64")
    if "horizon" in doc:
        conf.horizon = _int(doc, "horizon", 1)
    if doc.get("runs") is not None:
        conf.runs = _int(doc, "runs", 1)
    if "output_dir" in doc:
        if not isinstance(doc["output_dir"], str) or not doc["output_dir"]:
            raise ConfigError("output_dir", "expected a non-empty string")
        conf.output_dir = doc["output_dir"]
    if "orientation" in doc:
        if doc["orientation"] not in ORIENTATIONS:
            raise ConfigError("orientation", "expected one of %s" % "|".join(ORIENTATIONS))
        conf.orientation = doc["orientation"]
    if doc.get("noisy_agent") is not None:
        conf.noisy_agent = _int(doc, "noisy_agent", 0)
        if conf.noisy_agent >= n:
            raise ConfigError("noisy_agent", "index %d out of range [0, %d)"
                              % (conf.noisy_agent, n))
    if "nproc" in doc:
        conf.nproc = _int(doc, "nproc", 1)
    if doc.get("horizons") is not None:
        hs = doc["horizons"]
        if not isinstance(hs, list) or not hs:
            raise ConfigError("horizons", "expected a non-empty list of integers")
        for k, h in enumerate(hs):
            if not _is_int(h) or h < 1:
                raise ConfigError("horizons[%d]" % k, "expected an integer >= 1, got %r" % (h,))
            if k and h <= hs[k - 1]:
                raise ConfigError("horizons[%d]" % k, "horizons must be strictly increasing")
        conf.horizons = list(hs)
    return conf

def load_runconf(fn, command = "runconf"):
    """Read and validate a run configuration file."""
    try:
        with open(fn, "r") as fp:
            doc = json.load(fp)
    except ValueError as e:
        raise ConfigError("", "invalid JSON in '%s': %s" % (fn, e))
    return parse_runconf(doc, command)

def dump_runconf(conf, fn):
    with open(fn, "w") as fp:
        json.dump(conf.to_dict(), fp, indent = 2)
        fp.write("\n")

def resolve_runconf(command, config_path = None, preset = None, overrides = None):
    """
    @abstract             Configuration of a command: a file or a preset,
                          then the command-line overrides.
    @param config_path    Path to a JSON configuration [str]
    @param preset         Preset name, used when no path is given [str]
    @param overrides      Keys set on the command line; None values are
                          skipped [dict]
    @return               The configuration [RunConfigFile]
    @raise                ConfigError; an unknown preset has path "preset"
    """
    if config_path:
        doc = load_runconf(config_path, command).to_dict()
    elif preset:
        try:
            doc = get_preset(preset)
        except KeyError as e:
            raise ConfigError("preset", str(e.args[0]))
    else:
        raise ConfigError("", "need either a config file or a preset")
    for key, value in (overrides or {}).items():
        if value is not None:
            doc[key] = value
    return parse_runconf(doc, command)

def exit_error(command, msg, code):
    sys.stderr.write("[%s] Error: %s\n" % (command, msg))
    sys.exit(code)
