import json
import os
import sys

import pytest

from hkntk.episode.figure import figure
from hkntk.episode.presets import TRAJECTORY_HORIZON, get_preset
from hkntk.episode.simulate import simulate
from hkntk.estimate.estimate import estimate
from hkntk.hkntk import main
from hkntk.verify.verify import verify


def exit_code(func, argv):
    with pytest.raises(SystemExit) as e:
        func(argv)
    return e.value.code


def write_conf(tmp_path, **kw):
    doc = get_preset("fig2")
    doc.update(kw)
    fn = tmp_path / "run.json"
    fn.write_text(json.dumps(doc))
    return str(fn)


def test_simulate_writes_trajectory(tmp_path):
    out = str(tmp_path / "out")
    assert simulate(["hkntk", "simulate", "--preset", "fig1", "--seed", "7",
                     "--horizon", "100", "--out", out]) == 0
    with open(os.path.join(out, "trajectory.csv")) as fp:
        lines = fp.read().splitlines()
    assert len(lines) == 102
    with open(os.path.join(out, "trajectory.stopping.json")) as fp:
        doc = json.load(fp)
    assert doc["seed"] == 7
    assert doc["steps"] == 100
    assert doc["T_censored"]


def test_simulate_metrics_only(tmp_path):
    out = str(tmp_path)
    assert simulate(["hkntk", "simulate", "-c", write_conf(tmp_path), "--horizon", "20",
                     "--metrics-only", "--out", out]) == 0
    assert os.path.exists(os.path.join(out, "trajectory.metrics.csv"))
    assert not os.path.exists(os.path.join(out, "trajectory.csv"))


def test_simulate_exit_codes(tmp_path):
    assert exit_code(simulate, ["hkntk", "simulate"]) == 1
    assert exit_code(simulate, ["hkntk", "simulate", "--preset", "fig9"]) == 2
    bad = write_conf(tmp_path, delta1 = 0.06)
    assert exit_code(simulate, ["hkntk", "simulate", "-c", bad]) == 2
    close = write_conf(tmp_path, clusters = [{"value": 0, "size": 5},
                                             {"value": 0.5, "size": 5}])
    assert exit_code(simulate, ["hkntk", "simulate", "-c", close,
                                "--out", str(tmp_path)]) == 3
    assert exit_code(simulate, ["hkntk", "simulate", "--preset", "fig1",
                                "--stop-after", "-1"]) == 2


def test_figure(tmp_path, capsys):
    out = str(tmp_path)
    assert figure(["hkntk", "figure", "fig4", "--horizon", "50", "--out", out]) == 0
    echo = [l for l in capsys.readouterr().out.splitlines() if l.startswith("{")]
    conf = json.loads(echo[0])
    assert conf["leader"] == 4.01
    assert conf["delta1"] == 0.048
    for fn in ("fig4.csv", "fig4.stopping.json", "plot_fig4.py"):
        assert os.path.exists(os.path.join(out, fn))
    with open(os.path.join(out, "fig4.csv")) as fp:
        assert fp.readline().rstrip().endswith(",leader,xi")


def test_trajectory_commands_default_to_a_short_horizon(tmp_path):
    out = str(tmp_path / "fig")
    assert figure(["hkntk", "figure", "fig1", "--out", out]) == 0
    with open(os.path.join(out, "fig1.csv")) as fp:
        assert len(fp.read().splitlines()) == TRAJECTORY_HORIZON + 2
    out = str(tmp_path / "sim")
    assert simulate(["hkntk", "simulate", "--preset", "fig1", "--metrics-only",
                     "--out", out]) == 0
    with open(os.path.join(out, "trajectory.stopping.json")) as fp:
        assert json.load(fp)["steps"] == TRAJECTORY_HORIZON
    # a configuration file keeps its own horizon
    out = str(tmp_path / "conf")
    assert simulate(["hkntk", "simulate", "-c", write_conf(tmp_path, horizon = 30),
                     "--metrics-only", "--out", out]) == 0
    with open(os.path.join(out, "trajectory.stopping.json")) as fp:
        assert json.load(fp)["steps"] == 30


def test_figure_exit_codes():
    assert exit_code(figure, ["hkntk", "figure", "fig9"]) == 2
    assert exit_code(figure, ["hkntk", "figure", "--horizon", "5"]) == 2


def test_estimate_writes_report(tmp_path):
    out = str(tmp_path)
    assert estimate(["hkntk", "estimate", "--preset", "fig2", "--runs", "3",
                     "--horizon", "200", "--out", out]) == 0
    with open(os.path.join(out, "estimate.json")) as fp:
        doc = json.load(fp)
    assert doc["runs"] == 3
    assert doc["target"] == "T"
    assert doc["analytic_bound"] == pytest.approx(31000)
    assert doc["censor_fraction"] == 1.0
    assert doc["mean_lower_bound"] == 200.0


def test_estimate_exit_codes(tmp_path):
    assert exit_code(estimate, ["hkntk", "estimate", "--preset", "fig2",
                                "--target", "T_l"]) == 2
    assert exit_code(estimate, ["hkntk", "estimate", "--preset", "fig2",
                                "--target", "T_x"]) == 2
    close = write_conf(tmp_path, clusters = [{"value": 0, "size": 5},
                                             {"value": 0.5, "size": 5}])
    assert exit_code(estimate, ["hkntk", "estimate", "-c", close]) == 3


def test_verify_command(tmp_path):
    out = str(tmp_path)
    assert verify(["hkntk", "verify", "--suite", "fixed_point", "--out", out]) == 0
    with open(os.path.join(out, "verify.json")) as fp:
        doc = json.load(fp)
    assert doc["passed"]
    assert {r["name"] for r in doc["results"]} == {"closed_boundary", "converged", "dichotomy"}
    assert exit_code(verify, ["hkntk", "verify", "--suite", "everything"]) == 2
    assert exit_code(verify, ["hkntk", "verify", "--scale", "huge"]) == 2


@pytest.mark.parametrize("argv, code", [
    (["hkntk"], 1),
    (["hkntk", "--version"], 3),
    (["hkntk", "-h"], 3),
    (["hkntk", "bogus"], 5),
])
def test_dispatcher(monkeypatch, argv, code):
    monkeypatch.setattr(sys, "argv", argv)
    with pytest.raises(SystemExit) as e:
        main()
    assert e.value.code == code
