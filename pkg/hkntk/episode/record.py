# Trajectory and stopping-record files
# Author: hkntk developers

import json

import numpy as np

from .runner import StoppingRecord, Trajectory

def _fmt(v):
    # shortest round-trippable decimal, integral values without ".0"
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s

def trajectory_header(params):
    cols = ["t"] + ["x_%d" % (i + 1) for i in range(params.n)]
    if params.has_leader:
        cols.append("leader")
    cols.append("xi")
    return cols

def write_trajectory_csv(traj, fn):
    """
    @abstract    Write one row per step: t, x_1..x_n, [leader,] xi.
    @param traj  Full trajectory [Trajectory]
    @param fn    Path to the output CSV [str]
    @return      Number of rows written, header excluded [int]
    """
    p = traj.params
    with open(fn, "w") as fp:
        fp.write(",".join(trajectory_header(p)) + "\n")
        for t in range(len(traj)):
            row = [str(t)] + [_fmt(v) for v in traj.states[t]]
            if p.has_leader:
                row.append(_fmt(p.leader))
            row.append(_fmt(traj.xi[t]))
            fp.write(",".join(row) + "\n")
    return len(traj)

def read_trajectory_csv(fn, params):
    """
    @abstract      Load a CSV written by write_trajectory_csv.
    @param fn      Path to the CSV [str]
    @param params  Model parameters of the run [ModelParams]
    @return        The trajectory [Trajectory]
    """
    expect = trajectory_header(params)
    states, xi = [], []
    with open(fn, "r") as fp:
        header = fp.readline().strip().split(",")
        if header != expect:
            raise ValueError("trajectory header '%s' does not match the model" %
                             ",".join(header))
        for line in fp:
            if not line.strip():
                continue
            items = line.strip().split(",")
            if len(items) != len(expect):
                raise ValueError("row '%s' has %d columns, expected %d" %
                                 (items[0], len(items), len(expect)))
            states.append([float(v) for v in items[1:params.n + 1]])
            xi.append(float(items[-1]))
    states = np.array(states, dtype = float).reshape(-1, params.n)
    return Trajectory(params, states, np.array(xi, dtype = float))

def write_metrics_csv(metrics, fn):
    """Write the metrics columns t,d_V,d_V_A,x_noisy,xi."""
    with open(fn, "w") as fp:
        fp.write("t,d_V,d_V_A,x_noisy,xi\n")
        for k in range(metrics.t.shape[0]):
            fp.write("%d,%s,%s,%s,%s\n" % (metrics.t[k], _fmt(metrics.d_V[k]),
                     _fmt(metrics.d_V_A[k]), _fmt(metrics.x_noisy[k]),
                     _fmt(metrics.xi[k])))
    return metrics.t.shape[0]

def write_record_json(record, fn, extra = None):
    """Dump a StoppingRecord, plus optional extra keys, as sorted JSON."""
    doc = record.to_dict()
    if extra:
        doc.update(extra)
    with open(fn, "w") as fp:
        json.dump(doc, fp, indent = 2, sort_keys = True)
        fp.write("\n")

def read_record_json(fn):
    with open(fn, "r") as fp:
        return StoppingRecord.from_dict(json.load(fp))
