# Estimate the mean stopping time of a configuration
# Author: hkntk developers

import json
import math
import os
import sys
from optparse import OptionParser, OptionGroup

from .batch import ExperimentConfig
from .config import APP
from .estimator import estimate_mean_stopping_time
from ..config import DEF_RUNS_NEUTRAL, DEF_RUNS_ORIENTED, VERSION
from ..core.hk import require_divisive_init
from ..episode.runner import EpisodeConfig
from ..errors import ConfigError, InitViolation, RunError
from ..utils.base import log
from ..utils.runconf import exit_error, resolve_runconf

COMMAND = "estimate"

def default_runs(conf):
    return DEF_RUNS_NEUTRAL if conf.delta1 == conf.delta2 else DEF_RUNS_ORIENTED

def experiment_from_conf(conf):
    params = conf.model_params()
    init = conf.divisive_init()
    require_divisive_init(init, params)
    episode = EpisodeConfig(init, params, horizon = conf.horizon,
                            record_mode = "summary", stop_after = 0)
    runs = conf.runs if conf.runs is not None else default_runs(conf)
    return ExperimentConfig(episode, runs, master_seed = conf.seed,
                            horizons = conf.horizons, nproc = conf.nproc)

def write_report(report, fn):
    with open(fn, "w") as fp:
        json.dump(report.to_dict(), fp, indent = 2, sort_keys = True)
        fp.write("\n")

def estimate(argv):
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
    group1.add_option("--runs", "-n", type = "int", dest = "runs", default = None,
        help = "Number of runs [default: %d oriented, %d neutral]" %
        (DEF_RUNS_ORIENTED, DEF_RUNS_NEUTRAL))
    group1.add_option("--seed", "-s", type = "int", dest = "seed", default = None,
        help = "Master seed, overrides the configuration.")
    group1.add_option("--horizon", "-H", type = "int", dest = "horizon", default = None,
        help = "Censoring horizon, overrides the configuration.")
    group1.add_option("--nproc", "-p", type = "int", dest = "nproc", default = None,
        help = "Number of subprocesses [default: 1]")
    group1.add_option("--target", dest = "target", default = None,
        help = "Stopping time to estimate, T or T_l [default: T_l with a leader, else T]")
    parser.add_option_group(group1)

    (options, args) = parser.parse_args(args = argv[2:])

    try:
        if options.target not in (None, "T", "T_l"):
            raise ConfigError("target", "expected T or T_l")
        conf = resolve_runconf(COMMAND, options.config, options.preset, {
            "seed": options.seed, "horizon": options.horizon, "runs": options.runs,
            "nproc": options.nproc, "output_dir": options.out_dir})
        if options.target == "T_l" and conf.leader is None:
            raise ConfigError("target", "T_l needs a leader")
        config = experiment_from_conf(conf)
        log("[%s] %d runs, horizon %d, %d processes" % (COMMAND, config.runs,
            config.episode.horizon, config.nproc))
        report, _ = estimate_mean_stopping_time(config, options.target, quiet = False)
    except ConfigError as e:
        exit_error(COMMAND, str(e), 2)
    except InitViolation as e:
        exit_error(COMMAND, str(e), 3)
    except RunError as e:
        exit_error(COMMAND, str(e), 1)

    os.makedirs(conf.output_dir, exist_ok = True)
    fn = os.path.join(conf.output_dir, "estimate.json")
    write_report(report, fn)

    bound = "infinite" if math.isinf(report.analytic_bound) else "%.1f" % report.analytic_bound
    mean = "n/a" if report.mean_uncensored is None else "%.1f" % report.mean_uncensored
    log("[%s] E %s: mean_uncensored=%s, mean_lower_bound=%.1f, censor_fraction=%.3f, bound=%s"
        % (COMMAND, report.target, mean, report.mean_lower_bound,
           report.censor_fraction, bound))
    for note in report.notes:
        log("[%s] note: %s" % (COMMAND, note))
    log("[%s] wrote %s" % (COMMAND, fn))
    return 0

if __name__ == "__main__":
    estimate(sys.argv)
