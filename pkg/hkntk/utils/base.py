# Base Utils
# Author: hkntk developers

import sys
import time
import logging

from ..config import PROGRAM, DEBUG

_logger = logging.getLogger(PROGRAM)
if not _logger.handlers:
    _handler = logging.StreamHandler(sys.stdout)
    _handler.setFormatter(logging.Formatter("[%(asctime)s] %(message)s",
                                            datefmt="%Y-%m-%d %H:%M:%S"))
    _logger.addHandler(_handler)
    _logger.setLevel(logging.DEBUG if DEBUG else logging.INFO)
    _logger.propagate = False

def log(msg):
    """
    @abstract   Log one timestamped message
    @param msg  Log message to be printed [str]
    @return     Void
    """
    _logger.info(msg)

def debug(msg):
    _logger.debug(msg)

def warn(command, msg):
    _logger.warning("[W::%s] %s" % (command, msg))

class Progress:
    """
    @abstract        Progress bar for a batch of runs, printed to stderr.
    @param command   Name of the running command [str]
    @param total     Number of tasks in the batch [int]
    @param fp        File pointer [FILE*]
    """
    def __init__(self, command, total, fp = None, quiet = False):
        self.command = command
        self.total = max(int(total), 1)
        self.fp = fp
        self.quiet = quiet
        self.processed = 0
        self.start_time = time.time()

    def show_progress(self, RV = None):
        self.processed += 1
        if self.quiet:
            return RV
        fp = self.fp if self.fp is not None else sys.stderr
        bar_len = 20
        run_time = time.time() - self.start_time
        percents = 100.0 * self.processed / self.total
        filled_len = int(round(bar_len * percents / 100))
        bar = '=' * filled_len + '-' * (bar_len - filled_len)
        fp.write('[%s] [%s] %.1f%% done in %.1f sec.\n'
            % (self.command, bar, percents, run_time))
        fp.flush()
        return RV
