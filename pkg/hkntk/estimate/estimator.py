# Censoring-aware estimates of the mean stopping times
# Author: hkntk developers

# Censored runs are never averaged in silently: a report carries the mean over
# uncensored runs, the lower-bound mean with censored runs counted at their
# horizon, and the censor fraction.

import dataclasses
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import stats

from .batch import ExperimentConfig, batch_run
from .bounds import consensus_time_bound, leader_time_bound
from ..walk.walk import survival_slope

# minimum uncensored runs for a normal-approximation interval
MIN_CI_RUNS = 30
# bound dominance is only judged below this censor fraction
MAX_CENSOR_FRACTION = 0.05


@dataclass
class EstimateReport:
    target: str
    runs: int
    mean_uncensored: Optional[float]
    mean_lower_bound: float
    censor_fraction: float
    ci95: Optional[List[float]]
    analytic_bound: float
    horizon_means: List[list] = field(default_factory = list)
    survival_slope: Optional[float] = None
    notes: List[str] = field(default_factory = list)

    def to_dict(self):
        """JSON-ready dict; an infinite bound is written as "infinite"."""
        bound = self.analytic_bound
        slope = self.survival_slope
        return {
            "target": self.target,
            "runs": self.runs,
            "mean_uncensored": self.mean_uncensored,
            "mean_lower_bound": self.mean_lower_bound,
            "censor_fraction": self.censor_fraction,
            "ci95": self.ci95,
            "analytic_bound": "infinite" if math.isinf(bound) else bound,
            "horizon_means": [list(x) for x in self.horizon_means],
            "survival_slope": None if slope is None or math.isnan(slope) else slope,
            "notes": list(self.notes),
        }

    @property
    def bound_dominated(self):
        """Censoring-aware mean within the bound; None when 5% or more runs are censored."""
        if self.censor_fraction >= MAX_CENSOR_FRACTION:
            return None
        return self.mean_lower_bound <= self.analytic_bound


def default_target(episode):
    return "T_l" if episode.params.has_leader else "T"

def analytic_bound(episode, target):
    if target == "T_l":
        return leader_time_bound(episode.init, episode.params)
    return consensus_time_bound(episode.init, episode.params)

def stopping_times(records, target = "T"):
    """Arrays (times, censored) of one stopping time across records."""
    pairs = [r.value(target) for r in records]
    t = np.array([p[0] for p in pairs], dtype = np.int64)
    c = np.array([p[1] for p in pairs], dtype = bool)
    return t, c

def truncated_means(t, horizons):
    """[[h, mean(min(T, h))], ...]; censored times hold the run horizon."""
    return [[int(h), float(np.minimum(t, h).mean())] for h in horizons]

def summarize(records, bound, target = "T", horizons = None, noise_free = False):
    """
    @abstract          Build an EstimateReport from finished runs.
    @param records     Stopping records [list of StoppingRecord]
    @param bound       Analytic bound on the mean [float]
    @param horizons    Truncation horizons, or None [list]
    @return            The report [EstimateReport]
    """
    t, cens = stopping_times(records, target)
    runs = t.shape[0]
    done = t[~cens]
    notes = []
    mean_unc = float(done.mean()) if done.shape[0] else None
    ci = None
    if done.shape[0] >= MIN_CI_RUNS:
        half = stats.norm.ppf(0.975) * done.std(ddof = 1) / math.sqrt(done.shape[0])
        ci = [mean_unc - half, mean_unc + half]
    else:
        notes.append("%d uncensored runs; no normal-approximation interval below %d"
                     % (done.shape[0], MIN_CI_RUNS))
    if noise_free:
        notes.append("no noise")
    if horizons:
        notes.append("truncated means are consistency evidence only")
    return EstimateReport(
        target = target, runs = int(runs),
        mean_uncensored = mean_unc,
        mean_lower_bound = float(t.mean()),
        censor_fraction = float(cens.mean()),
        ci95 = ci,
        analytic_bound = bound,
        horizon_means = truncated_means(t, horizons) if horizons else [],
        survival_slope = survival_slope(t, cens),
        notes = notes)

def estimate_mean_stopping_time(config, target = None, quiet = True):
    """
    @abstract        Run the batch and estimate the mean stopping time.
    @param config    Experiment configuration [ExperimentConfig]
    @param target    "T" or "T_l"; defaults to T_l for leader runs [str]
    @return          A tuple (EstimateReport, list of StoppingRecord) [tuple]
    """
    target = target or default_target(config.episode)
    bound = analytic_bound(config.episode, target)
    records = batch_run(config, quiet = quiet)
    horizons = [h for h in (config.horizons or []) if h <= config.episode.horizon]
    report = summarize(records, bound, target, horizons,
                       noise_free = config.episode.params.noise_free)
    return report, records

def tail_probe(config, target = "T", quiet = True):
    """
    @abstract        Truncated means across the horizon schedule and the
                     log-log survival slope, from one batch run to the
                     largest horizon.
    @param config    Experiment configuration with at least 3 horizons [ExperimentConfig]
    @return          Dict with horizon_means, increasing, last_change,
                     survival_slope, censor_fraction, notes [dict]
    """
    hs = config.horizons
    if not hs or len(hs) < 3:
        raise ValueError("tail probe needs at least 3 horizons")
    episode = dataclasses.replace(config.episode, horizon = hs[-1])
    probe = dataclasses.replace(config, episode = episode)
    records = batch_run(probe, quiet = quiet)
    t, cens = stopping_times(records, target)
    means = truncated_means(t, hs)
    vals = [m for _, m in means]
    notes = ["consistency evidence, not proof"]
    if episode.params.noise_free:
        notes.append("noise-free")
    slope = survival_slope(t, cens)
    return {
        "horizon_means": means,
        "increasing": all(b > a for a, b in zip(vals, vals[1:])),
        "last_change": (vals[-1] - vals[-2]) / vals[-2] if vals[-2] > 0 else None,
        "survival_slope": None if math.isnan(slope) else slope,
        "censor_fraction": float(cens.mean()),
        "notes": notes,
    }
