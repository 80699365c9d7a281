# Simulate one episode and write its trajectory
# Author: hkntk developers

import os
import sys
from optparse import OptionParser, OptionGroup

from .config import APP
from .presets import TRAJECTORY_HORIZON
from .record import write_metrics_csv, write_record_json, write_trajectory_csv
from .runner import EpisodeConfig, run_episode
from ..config import VERSION
from ..core.hk import require_divisive_init
from ..errors import ConfigError, InitViolation
from ..noise.stream import derive_stream
from ..utils.base import log
from ..utils.runconf import exit_error, resolve_runconf

COMMAND = "simulate"

def run_simulation(conf, out_dir, metrics_only = False, stop_after = None,
                   prefix = "trajectory"):
    """
    @abstract             Run the episode of run index 0 and write its files.
    @param conf           Run configuration [RunConfigFile]
    @param out_dir        Output directory, created if missing [str]
    @param metrics_only   Write per-step metrics instead of all states [bool]
    @param prefix         Basename of the output files [str]
    @return               A tuple (StoppingRecord, list of written paths) [tuple]
    """
    params = conf.model_params()
    init = conf.divisive_init()
    require_divisive_init(init, params)
    episode = EpisodeConfig(init, params, horizon = conf.horizon,
                            record_mode = "metrics" if metrics_only else "full",
                            stop_after = stop_after)
    data, record = run_episode(episode, derive_stream(conf.seed, 0))

    os.makedirs(out_dir, exist_ok = True)
    if metrics_only:
        csv_fn = os.path.join(out_dir, "%s.metrics.csv" % prefix)
        write_metrics_csv(data, csv_fn)
    else:
        csv_fn = os.path.join(out_dir, "%s.csv" % prefix)
        write_trajectory_csv(data, csv_fn)
    json_fn = os.path.join(out_dir, "%s.stopping.json" % prefix)
    write_record_json(record, json_fn, extra = {"seed": conf.seed})
    return record, [csv_fn, json_fn]

def format_record(record):
    items = ["T=%d%s" % (record.T, " (censored)" if record.T_censored else "")]
    for k, (t, c) in enumerate(zip(record.T_bar, record.T_bar_censored)):
        items.append("T_bar[%d]=%d%s" % (k, t, " (censored)" if c else ""))
    if record.T_l is not None:
        items.append("T_l=%d%s" % (record.T_l, " (censored)" if record.T_l_censored else ""))
    return ", ".join(items)

def simulate(argv):
    if len(argv) < 3:
        print("Welcome to %s %s v%s!\n" % (APP, COMMAND, VERSION))
        print("use -h or --help for help on argument.")
        sys.exit(1)

    parser = OptionParser(usage = "Usage: %s %s [options]" % (APP, COMMAND))
    parser.add_option("--config", "-c", dest = "config", default = None,
        help = "Path to the JSON run configuration.")
    parser.add_option("--preset", "-P", dest = "preset", default = None,
        help = "Use a preset configuration instead of --config: fig1|fig2|fig3|fig4.")
    parser.add_option("--out", "-O", dest = "out_dir", default = None,
        help = "Output directory [default: output_dir of the configuration]")

    group1 = OptionGroup(parser, "Optional arguments")
    group1.add_option("--seed", "-s", type = "int", dest = "seed", default = None,
        help = "Master seed, overrides the configuration.")
    group1.add_option("--horizon", "-H", type = "int", dest = "horizon", default = None,
        help = "Maximum number of steps, overrides the configuration "
        "[default: %d with --preset]" % TRAJECTORY_HORIZON)
    group1.add_option("--stop-after", type = "int", dest = "stop_after", default = None,
        help = "Steps simulated after every stopping time is hit; "
        "by default the episode runs to the horizon.")
    group1.add_option("--metrics-only", action = "store_true", dest = "metrics_only",
        default = False, help = "Write per-step metrics instead of the full trajectory.")
    parser.add_option_group(group1)

    (options, args) = parser.parse_args(args = argv[2:])

    horizon = options.horizon
    if horizon is None and options.preset and not options.config:
        horizon = TRAJECTORY_HORIZON
    try:
        conf = resolve_runconf(COMMAND, options.config, options.preset, {
            "seed": options.seed, "horizon": horizon,
            "output_dir": options.out_dir})
        if options.stop_after is not None and options.stop_after < 0:
            raise ConfigError("stop_after", "must be non-negative")
        record, files = run_simulation(conf, conf.output_dir, options.metrics_only,
                                       options.stop_after)
    except ConfigError as e:
        exit_error(COMMAND, str(e), 2)
    except InitViolation as e:
        exit_error(COMMAND, str(e), 3)

    log("[%s] %d steps, %s" % (COMMAND, record.steps, format_record(record)))
    for fn in files:
        log("[%s] wrote %s" % (COMMAND, fn))
    return 0

if __name__ == "__main__":
    simulate(sys.argv)
