# Run the acceptance suites
# Author: hkntk developers

import json
import os
import sys
import time
from optparse import OptionParser, OptionGroup

from .config import APP
from .suites import SCALES, SUITE_ALIASES, SUITES, run_suite
from ..config import DEF_SEED, VERSION
from ..utils.base import log
from ..utils.runconf import exit_error

COMMAND = "verify"

def verify(argv):
    if len(argv) < 3:
        print("Welcome to %s %s v%s!\n" % (APP, COMMAND, VERSION))
        print("use -h or --help for help on argument.")
        sys.exit(1)

    parser = OptionParser(usage = "Usage: %s %s [options]" % (APP, COMMAND))
    parser.add_option("--suite", "-S", dest = "suite", default = "all",
        help = "One of %s, or all [default: %%default]" %
        "|".join(list(SUITES) + list(SUITE_ALIASES)))
    parser.add_option("--out", "-O", dest = "out_dir", default = ".",
        help = "Directory of verify.json [default: %default]")

    group1 = OptionGroup(parser, "Optional arguments")
    group1.add_option("--scale", dest = "scale", default = "quick",
        help = "quick|full; full runs at the documented acceptance sizes "
        "[default: %default]")
    group1.add_option("--seed", "-s", type = "int", dest = "seed", default = DEF_SEED,
        help = "Master seed [default: %default]")
    group1.add_option("--nproc", "-p", type = "int", dest = "nproc", default = 1,
        help = "Number of subprocesses for batch suites [default: %default]")
    parser.add_option_group(group1)

    (options, args) = parser.parse_args(args = argv[2:])
    if options.suite != "all" and options.suite not in SUITES \
            and options.suite not in SUITE_ALIASES:
        exit_error(COMMAND, "unknown suite '%s'" % options.suite, 2)
    if options.scale not in SCALES:
        exit_error(COMMAND, "scale must be one of %s" % "|".join(sorted(SCALES)), 2)
    if options.nproc < 1:
        exit_error(COMMAND, "nproc must be >= 1", 2)

    start = time.time()
    results = run_suite(options.suite, options.scale, options.seed, options.nproc)
    failed = [r for r in results if not r.passed]
    for r in results:
        log("[%s] %s %s::%s" % (COMMAND, "PASS" if r.passed else "FAIL", r.suite, r.name))

    os.makedirs(options.out_dir, exist_ok = True)
    fn = os.path.join(options.out_dir, "verify.json")
    with open(fn, "w") as fp:
        json.dump({"suite": options.suite, "scale": options.scale,
                   "seed": options.seed, "passed": not failed,
                   "results": [r.to_dict() for r in results]},
                  fp, indent = 2, sort_keys = True)
        fp.write("\n")
    log("[%s] %d checks, %d failed in %.1f sec; wrote %s" % (COMMAND, len(results),
        len(failed), time.time() - start, fn))
    if failed:
        sys.exit(1)
    return 0

if __name__ == "__main__":
    verify(sys.argv)
