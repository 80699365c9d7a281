# Reproduce the trajectory of a reference figure
# Author: hkntk developers

import json
import os
import sys
from optparse import OptionParser, OptionGroup

from .config import APP
from .presets import TRAJECTORY_HORIZON, preset_names
from .simulate import format_record, run_simulation
from ..config import VERSION
from ..errors import ConfigError, InitViolation
from ..utils.base import log
from ..utils.runconf import exit_error, resolve_runconf

COMMAND = "figure"

PLOT_STUB = '''# Plot the opinions of %(name)s.csv; needs matplotlib.
import csv

import matplotlib.pyplot as plt

with open("%(name)s.csv") as fp:
    rows = list(csv.DictReader(fp))
t = [int(r["t"]) for r in rows]
for col in [c for c in rows[0] if c.startswith("x_")]:
    plt.plot(t, [float(r[col]) for r in rows], lw = 0.8)
if "leader" in rows[0]:
    plt.plot(t, [float(r["leader"]) for r in rows], "k--", lw = 0.8)
plt.xlabel("t")
plt.ylabel("opinion")
plt.savefig("%(name)s.png", dpi = 150)
'''

def write_plot_stub(name, out_dir):
    fn = os.path.join(out_dir, "plot_%s.py" % name)
    with open(fn, "w") as fp:
        fp.write(PLOT_STUB % {"name": name})
    return fn

def figure(argv):
    if len(argv) < 3:
        print("Welcome to %s %s v%s!\n" % (APP, COMMAND, VERSION))
        print("use -h or --help for help on argument.")
        sys.exit(1)

    parser = OptionParser(usage = "Usage: %s %s [options] [preset]" % (APP, COMMAND))
    parser.add_option("--preset", "-P", dest = "preset", default = None,
        help = "Figure preset, one of %s." % "|".join(preset_names()))
    parser.add_option("--out", "-O", dest = "out_dir", default = None,
        help = "Output directory [default: current directory]")

    group1 = OptionGroup(parser, "Optional arguments")
    group1.add_option("--seed", "-s", type = "int", dest = "seed", default = None,
        help = "Master seed [default: 0]")
    group1.add_option("--horizon", "-H", type = "int", dest = "horizon", default = None,
        help = "Number of steps [default: %d]" % TRAJECTORY_HORIZON)
    parser.add_option_group(group1)

    (options, args) = parser.parse_args(args = argv[2:])
    name = options.preset or (args[0] if args else None)
    if not name:
        exit_error(COMMAND, "need a preset name", 2)

    horizon = options.horizon if options.horizon is not None else TRAJECTORY_HORIZON
    try:
        conf = resolve_runconf(COMMAND, preset = name, overrides = {
            "seed": options.seed, "horizon": horizon,
            "output_dir": options.out_dir})
        # config echo
        print(json.dumps(conf.to_dict(), sort_keys = True))
        record, files = run_simulation(conf, conf.output_dir, prefix = name)
    except ConfigError as e:
        exit_error(COMMAND, str(e), 2)
    except InitViolation as e:
        exit_error(COMMAND, str(e), 3)
    files.append(write_plot_stub(name, conf.output_dir))

    log("[%s] %s: %s" % (COMMAND, name, format_record(record)))
    for fn in files:
        log("[%s] wrote %s" % (COMMAND, fn))
    return 0

if __name__ == "__main__":
    figure(sys.argv)
