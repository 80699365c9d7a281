# Acceptance checks, runnable at two scales
# Author: hkntk developers

# Suites that probe infinite expectations (heavy_tail) or limsup bands
# (leader) report consistency evidence on finite horizons, not proofs.

import filecmp
import math
import os
import shutil
import tempfile
from dataclasses import dataclass, field

import numpy as np

from ..core.hk import run_noise_free_to_fixed_point
from ..core.model import DivisiveInit, ModelParams, OpinionState
from ..episode.checks import (check_cluster_rigidity, check_drift_identity,
    check_leader_band, check_leader_envelope, check_leader_hold,
    check_merge_step, check_post_consensus, first_contact, replay_verify)
from ..episode.detect import merge_targets
from ..episode.presets import get_preset
from ..episode.runner import EpisodeConfig, run_episode
from ..episode.simulate import simulate
from ..errors import NonConvergenceError
from ..estimate.batch import ExperimentConfig, batch_run
from ..estimate.estimate import estimate
from ..estimate.estimator import (estimate_mean_stopping_time, stopping_times,
    tail_probe)
from ..noise.stream import derive_stream
from ..utils.runconf import parse_runconf
from ..walk.walk import (WalkParams, merge_walk_time, sample_walks,
    wald_check, walk_report, weighted_walk_time)

SCALES = {
    "quick": {
        "fixed_point_states": 100,
        "persistence_runs": 10, "persistence_tail": 2000,
        "consensus_runs": 20, "consensus_horizon": 3100000,
        "tail_runs": 10, "tail_horizons": [10 ** 3, 10 ** 4, 10 ** 5],
        "tail_compare": 10 ** 5,
        "leader_runs": 10, "leader_horizon": 10 ** 7, "leader_window": 2000,
        "oracle_instances": 20,
        "wald_samples": 50000,
        "walk_samples": 2000,
        "determinism_nproc": 2, "determinism_runs": 4,
    },
    "full": {
        "fixed_point_states": 1000,
        "persistence_runs": 100, "persistence_tail": 10 ** 5,
        "consensus_runs": 200, "consensus_horizon": 3100000,
        "tail_runs": 50, "tail_horizons": [10 ** 5, 10 ** 6, 10 ** 7],
        "tail_compare": 10 ** 6,
        "leader_runs": 100, "leader_horizon": 10 ** 7, "leader_window": 10 ** 4,
        "oracle_instances": 100,
        "wald_samples": 10 ** 5,
        "walk_samples": 20000,
        "determinism_nproc": 8, "determinism_runs": 16,
    },
}


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: dict = field(default_factory = dict)

    def to_dict(self):
        return {"suite": self.suite, "name": self.name,
                "passed": bool(self.passed), "detail": self.detail}


def preset_episode(name, horizon, record_mode = "summary", stop_after = 0):
    conf = parse_runconf(get_preset(name))
    return EpisodeConfig(conf.divisive_init(), conf.model_params(), horizon = horizon,
                         record_mode = record_mode, stop_after = stop_after)

def _binomial_ok(hits, total, p, z = 4.0):
    return abs(hits / float(total) - p) <= z * math.sqrt(p * (1 - p) / total)


def suite_fixed_point(scale, seed, nproc):
    """Noise-free runs from random states end in exact fixed points whose
    opinions are pairwise equal or more than epsilon apart."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key = (1,)))
    count = scale["fixed_point_states"]
    stuck, mixed = 0, 0
    for _ in range(count):
        n = int(rng.integers(1, 21))
        x = rng.uniform(0.0, 5.0, n)
        try:
            final, _ = run_noise_free_to_fixed_point(OpinionState(0, x),
                                                     ModelParams(n, 1.0), 10 ** 4)
        except NonConvergenceError:
            stuck += 1
            continue
        diff = np.abs(final.x[:, None] - final.x[None, :])
        if np.any((diff != 0) & (diff <= 1.0)):
            mixed += 1
    # agents exactly epsilon apart are neighbors
    final, steps = run_noise_free_to_fixed_point(OpinionState(0, [0.0, 1.0]),
                                                 ModelParams(2, 1.0), 10)
    boundary = steps == 1 and np.array_equal(final.x, [0.5, 0.5])
    return [CheckResult("fixed_point", "closed_boundary", boundary,
                        {"terminal": final.x.tolist(), "steps": steps}),
            CheckResult("fixed_point", "converged", stuck == 0,
                        {"states": count, "not_converged": stuck}),
            CheckResult("fixed_point", "dichotomy", mixed == 0,
                        {"states": count, "violations": mixed})]

def suite_persistence(scale, seed, nproc):
    """After consensus, the diameter stays within delta2 at every step."""
    tail = scale["persistence_tail"]
    episode = preset_episode("fig2", 10 ** 7, "full", tail)
    bad, censored = [], 0
    for k in range(scale["persistence_runs"]):
        traj, rec = run_episode(episode, derive_stream(seed, k))
        if rec.T_censored:
            censored += 1
            continue
        t = check_post_consensus(traj, rec.T)
        if t is not None or len(traj) < rec.T + tail + 1:
            bad.append(k)
    return [CheckResult("persistence", "diameter_after_consensus",
                        not bad and censored == 0,
                        {"runs": scale["persistence_runs"], "tail": tail,
                         "failed_runs": bad, "censored": censored})]

def suite_consensus_bound(scale, seed, nproc):
    """Oriented noise: few censored runs and the mean under its bound."""
    episode = preset_episode("fig2", scale["consensus_horizon"])
    config = ExperimentConfig(episode, scale["consensus_runs"], seed, nproc = nproc)
    report, records = estimate_mean_stopping_time(config, "T")
    order = [k for k, r in enumerate(records) if r.check_order()]
    detail = report.to_dict()
    return [CheckResult("consensus_bound", "censor_fraction",
                        report.censor_fraction <= 0.01, detail),
            CheckResult("consensus_bound", "bound_dominance",
                        report.mean_lower_bound <= report.analytic_bound, detail),
            CheckResult("consensus_bound", "stopping_order", not order,
                        {"bad_runs": order})]

def suite_heavy_tail(scale, seed, nproc):
    """Neutral noise: truncated means keep growing with the horizon and stay
    above the oriented mean."""
    hs = scale["tail_horizons"]
    neutral = ExperimentConfig(preset_episode("fig1", hs[-1]), scale["tail_runs"],
                               seed, horizons = hs, nproc = nproc)
    probe = tail_probe(neutral)
    oriented = ExperimentConfig(preset_episode("fig2", scale["consensus_horizon"]),
                                scale["consensus_runs"], seed, nproc = nproc)
    t, _ = stopping_times(batch_run(oriented))
    oriented_mean = float(t.mean())
    neutral_mean = dict((h, m) for h, m in probe["horizon_means"])[scale["tail_compare"]]
    return [CheckResult("heavy_tail", "truncated_means_increase",
                        probe["increasing"], probe),
            CheckResult("heavy_tail", "neutral_above_oriented",
                        oriented_mean < neutral_mean,
                        {"oriented_mean": oriented_mean,
                         "neutral_truncated_mean": neutral_mean,
                         "horizon": scale["tail_compare"]})]

def suite_leader(scale, seed, nproc):
    """Leader capture: T_l uncensored, its mean under the bound, and after
    capture the band and the contraction envelope hold."""
    runs = scale["leader_runs"]
    window = scale["leader_window"]
    episode = preset_episode("fig4", scale["leader_horizon"])
    config = ExperimentConfig(episode, runs, seed, nproc = nproc)
    report, records = estimate_mean_stopping_time(config, "T_l")
    done = [k for k, r in enumerate(records) if not r.T_l_censored]
    band, envelope, hold = [], [], []
    for k in done:
        T_l = records[k].T_l
        replay = EpisodeConfig(episode.init, episode.params,
                               horizon = T_l + 200 + window + 1, record_mode = "full")
        traj, rec = run_episode(replay, derive_stream(seed, k))
        if rec.T_l != T_l or check_leader_band(traj, T_l + 200, T_l + 200 + window) is not None:
            band.append(k)
        if check_leader_envelope(traj, T_l) is not None:
            envelope.append(k)
        if check_leader_hold(traj, T_l) is not None:
            hold.append(k)
    detail = report.to_dict()
    return [CheckResult("leader", "capture_rate",
                        len(done) >= math.ceil(0.99 * runs),
                        {"runs": runs, "uncensored": len(done)}),
            CheckResult("leader", "bound_dominance",
                        report.mean_lower_bound <= report.analytic_bound, detail),
            CheckResult("leader", "band_after_capture", not band,
                        {"window": window, "failed_runs": band,
                         "limit": 3 * episode.params.delta2}),
            CheckResult("leader", "contraction_envelope", not envelope,
                        {"failed_runs": envelope}),
            CheckResult("leader", "hold_after_capture", not hold,
                        {"failed_runs": hold})]

def suite_oracle(scale, seed, nproc):
    """Merge time of two-cluster episodes equals the first passage of the
    merge walk fed the same stream."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key = (6,)))
    eps, delta2 = 1.0, 0.05
    mismatch = []
    count = scale["oracle_instances"]
    for k in range(count):
        other = int(rng.integers(1, 5))
        gap = eps + float(rng.uniform(0.001, 0.5))
        delta1 = (0.0, 0.02, 0.048)[k % 3]
        # with delta1 > 0 the noisy agent leads its cluster only when alone
        m = int(rng.integers(1, 5)) if delta1 == 0.0 else 1
        params = ModelParams(m + other, eps, delta1, delta2)
        episode = EpisodeConfig(DivisiveInit((0.0, gap), (m, other)), params,
                                horizon = 10 ** 6, record_mode = "summary",
                                stop_after = 0)
        _, rec = run_episode(episode, derive_stream(seed, k))
        walk = merge_walk_time(WalkParams(delta1, delta2, v1_size = m),
                               derive_stream(seed, k), gap, eps, 10 ** 6)
        if (rec.T_bar[0], rec.T_bar_censored[0]) != (walk.t, walk.censored):
            mismatch.append({"instance": k, "episode": rec.T_bar[0], "walk": walk.t})
    return [CheckResult("oracle", "merge_time_equivalence", not mismatch,
                        {"instances": count, "mismatches": mismatch})]

def suite_wald(scale, seed, nproc):
    """E S_T = E xi * E T for the first passage above c = 0.5."""
    report = wald_check(WalkParams(0.048, 0.05, c = 0.5), derive_stream(seed, 0),
                        scale["wald_samples"])
    p = WalkParams(0.0, 0.05, c = 0.0)
    one_step = sample_walks("passage", p, seed, 100)
    return [CheckResult("wald", "relative_gap", abs(report["relative_gap"]) < 0.02, report),
            CheckResult("wald", "one_step_limit",
                        all(s.t == 1 for s in one_step),
                        {"samples": len(one_step), "report": walk_report(p, one_step, 1.0)})]

def suite_walks(scale, seed, nproc):
    """Elementary properties of the walks."""
    N = scale["walk_samples"]
    res = []
    p = WalkParams(0.0, 0.05, c = 0.01)
    ss = sample_walks("passage", p, seed, N)
    over = max(s.overshoot for s in ss)
    mean = float(np.mean([s.t for s in ss]))
    bound = 2 * (0.01 + 0.05) / 0.05
    res.append(CheckResult("walks", "overshoot_bound", over <= 0.05 + 1e-12,
                           {"max_overshoot": over}))
    res.append(CheckResult("walks", "passage_mean_bound",
                           min(s.t for s in ss) >= 1 and mean <= bound,
                           {"mean": mean, "report": walk_report(p, ss, bound)}))

    ss = sample_walks("exit", WalkParams(0.05, 0.05, a = 0.01, b = 0.01), seed, N)
    ones = sum(s.t == 1 for s in ss)
    res.append(CheckResult("walks", "exit_in_one_step", _binomial_ok(ones, N, 0.8),
                           {"fraction": ones / float(N), "expected": 0.8}))
    ss = sample_walks("exit", WalkParams(0.05, 0.05, a = 0.1, b = 0.1), seed, N)
    high = sum(s.side == "high" for s in ss)
    res.append(CheckResult("walks", "symmetric_exit_side", _binomial_ok(high, N, 0.5),
                           {"fraction_high": high / float(N)}))
    ss = sample_walks("exit", WalkParams(0.0, 0.05, a = 0.1, b = 0.1), seed, N)
    res.append(CheckResult("walks", "oriented_exit_high",
                           all(s.side == "high" for s in ss), {"samples": N}))

    ss = sample_walks("weighted", WalkParams(0.05, 0.05, alpha = 2.0), seed, N, 10 ** 4)
    ones = sum(s.t == 1 for s in ss)
    res.append(CheckResult("walks", "weighted_first_step", _binomial_ok(ones, N, 0.5),
                           {"fraction": ones / float(N), "expected": 0.5}))
    same = True
    for k in range(min(N, 200)):
        a = weighted_walk_time(WalkParams(0.05, 0.05, alpha = 3.0),
                               derive_stream(seed, k), 10 ** 4)
        b = merge_walk_time(WalkParams(0.05, 0.05, v1_size = 3),
                            derive_stream(seed, k), 1.0, 1.0, 10 ** 4)
        same = same and (a.t, a.censored) == (b.t, b.censored)
    res.append(CheckResult("walks", "weighted_matches_merge_walk", same, {}))
    return res

def suite_replay(scale, seed, nproc):
    """Recorded trajectories replay bit for bit and respect the pre-merge
    structure of the dynamics."""
    res = []
    for name in ("fig1", "fig2"):
        episode = preset_episode(name, 20000, "full", 1000)
        traj, rec = run_episode(episode, derive_stream(seed, 0))
        res.append(CheckResult("replay", "%s_replay" % name, replay_verify(traj) is None,
                               {"steps": rec.steps}))
        res.append(CheckResult("replay", "%s_cluster_rigidity" % name,
                               check_cluster_rigidity(traj, episode.init) is None, {}))
        res.append(CheckResult("replay", "%s_drift_identity" % name,
                               check_drift_identity(traj, episode.init) is None, {}))
        contact = first_contact(traj, episode.init)
        if not rec.T_bar_censored[0] and contact == rec.T_bar[0]:
            part = episode.init.partition()
            p = episode.params
            home = [idx for idx in part if p.noisy_agent in idx][0]
            target = merge_targets(part, p.noisy_agent, p.orientation)[0]
            ok = check_merge_step(traj, rec.T_bar[0], np.concatenate((home, target)))
            res.append(CheckResult("replay", "%s_merge_step" % name, ok,
                                   {"T_bar": rec.T_bar[0]}))
    return res

def suite_determinism(scale, seed, nproc):
    """Same seed gives identical files; the process count does not matter."""
    tmp = tempfile.mkdtemp(prefix = "hkntk-")
    try:
        outs = []
        for rep in range(2):
            d = os.path.join(tmp, "sim%d" % rep)
            simulate(["hkntk", "simulate", "--preset", "fig1", "--seed", str(seed),
                      "--horizon", "2000", "--out", d])
            outs.append(d)
        sim_same = all(filecmp.cmp(os.path.join(outs[0], fn), os.path.join(outs[1], fn),
                                   shallow = False)
                       for fn in ("trajectory.csv", "trajectory.stopping.json"))

        reports = []
        for rep, p in enumerate((1, scale["determinism_nproc"])):
            d = os.path.join(tmp, "est%d" % rep)
            estimate(["hkntk", "estimate", "--preset", "fig2", "--seed", str(seed),
                      "--runs", str(scale["determinism_runs"]), "--nproc", str(p),
                      "--horizon", "3100000", "--out", d])
            reports.append(os.path.join(d, "estimate.json"))
        est_same = filecmp.cmp(reports[0], reports[1], shallow = False)
    finally:
        shutil.rmtree(tmp, ignore_errors = True)
    return [CheckResult("determinism", "simulate_files", sim_same, {}),
            CheckResult("determinism", "estimate_across_nproc", est_same,
                        {"nproc": [1, scale["determinism_nproc"]]})]


SUITES = {
    "fixed_point": suite_fixed_point,
    "persistence": suite_persistence,
    "consensus_bound": suite_consensus_bound,
    "heavy_tail": suite_heavy_tail,
    "leader": suite_leader,
    "oracle": suite_oracle,
    "wald": suite_wald,
    "walks": suite_walks,
    "replay": suite_replay,
    "determinism": suite_determinism,
}

# published names kept as aliases
SUITE_ALIASES = {
    "lemma2": "persistence",
}

def resolve_suite(name):
    """Canonical suite name for a name or an alias; ValueError if unknown."""
    name = SUITE_ALIASES.get(name, name)
    if name not in SUITES:
        raise ValueError("unknown suite '%s'" % name)
    return name

def run_suite(name, scale = "quick", seed = 0, nproc = 1):
    """
    @abstract      Run one suite, or all of them for name "all".
    @param name    Suite name or "all" [str]
    @param scale   "quick" or "full" [str]
    @return        List of CheckResult [list]
    """
    if scale not in SCALES:
        raise ValueError("scale must be one of %s" % "|".join(sorted(SCALES)))
    names = list(SUITES) if name == "all" else [resolve_suite(name)]
    res = []
    for s in names:
        res.extend(SUITES[s](SCALES[scale], seed, nproc))
    return res
