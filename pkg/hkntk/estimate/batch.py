# Run a batch of independent episodes
# Author: hkntk developers

import dataclasses
import multiprocessing
from dataclasses import dataclass
from typing import List, Optional

from .config import MODULE
from ..config import DEBUG, DEF_NPROC, DEF_SEED
from ..episode.runner import EpisodeConfig, run_episode
from ..errors import RunError
from ..noise.stream import derive_stream
from ..utils.base import Progress, debug


@dataclass
class ExperimentConfig:
    """
    @abstract            Batch of episodes sharing one configuration.
    @param episode       Episode configuration [EpisodeConfig]
    @param runs          Number of runs, run k uses stream (master_seed, k) [int]
    @param master_seed   Experiment seed [int]
    @param horizons      Truncation horizons of the tail probe, strictly
                         increasing [list]
    @param nproc         Number of worker processes [int]
    """
    episode: EpisodeConfig
    runs: int
    master_seed: int = DEF_SEED
    horizons: Optional[List[int]] = None
    nproc: int = DEF_NPROC

    def __post_init__(self):
        if isinstance(self.runs, bool) or int(self.runs) != self.runs or self.runs < 1:
            raise ValueError("run count must be an integer >= 1, got %r" % (self.runs,))
        if int(self.nproc) != self.nproc or self.nproc < 1:
            raise ValueError("nproc must be an integer >= 1, got %r" % (self.nproc,))
        if self.horizons is not None:
            hs = list(self.horizons)
            if any(b <= a for a, b in zip(hs, hs[1:])):
                raise ValueError("horizons must be strictly increasing")
            if hs and hs[0] < 1:
                raise ValueError("horizons must be >= 1")
            self.horizons = hs


def run_one(episode, master_seed, run_index):
    """Worker: one episode on its own stream; errors carry the run index."""
    try:
        _, record = run_episode(episode, derive_stream(master_seed, run_index))
    except Exception as e:
        raise RunError(run_index, "%s: %s" % (type(e).__name__, e))
    return record

def summary_episode(episode):
    """The episode as run inside a batch: summary records, early stop."""
    stop_after = 0 if episode.stop_after is None else episode.stop_after
    return dataclasses.replace(episode, record_mode = "summary", stop_after = stop_after)

def batch_run(config, quiet = True):
    """
    @abstract        Execute config.runs episodes.
    @param config    Experiment configuration [ExperimentConfig]
    @param quiet     Suppress the progress bar [bool]
    @return          StoppingRecords in run_index order [list]
    @raise           RunError of the lowest failing run index
    """
    episode = summary_episode(config.episode)
    progress = Progress(MODULE, config.runs, quiet = quiet)
    if DEBUG:
        debug("[batch_run] %d runs with %d processes" % (config.runs, config.nproc))

    if config.nproc > 1:
        pool = multiprocessing.Pool(processes = config.nproc)
        try:
            handles = [pool.apply_async(run_one, (episode, config.master_seed, k),
                                        callback = progress.show_progress)
                       for k in range(config.runs)]
            pool.close()
            pool.join()
            res = []
            for k, h in enumerate(handles):
                try:
                    res.append(h.get())
                except RunError:
                    raise
                except Exception as e:
                    raise RunError(k, str(e))
            return res
        finally:
            pool.terminate()

    res = []
    for k in range(config.runs):
        res.append(progress.show_progress(run_one(episode, config.master_seed, k)))
    return res
