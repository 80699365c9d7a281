import pytest

from hkntk.verify.suites import (SUITE_ALIASES, SUITES, CheckResult, resolve_suite,
    run_suite)


def failures(results):
    return [(r.suite, r.name, r.detail) for r in results if not r.passed]


@pytest.mark.parametrize("name", ["fixed_point", "oracle", "replay", "walks"])
def test_quick_suite_passes(name):
    results = run_suite(name, "quick", seed = 0)
    assert results
    assert all(r.suite == name for r in results)
    assert failures(results) == []


def test_oracle_with_another_seed():
    assert failures(run_suite("oracle", "quick", seed = 12345)) == []


def test_run_suite_rejects_unknown_names():
    with pytest.raises(ValueError):
        run_suite("everything")
    with pytest.raises(ValueError):
        run_suite("wald", scale = "huge")


def test_suite_registry():
    assert set(SUITES) == {"fixed_point", "persistence", "consensus_bound",
                           "heavy_tail", "leader", "oracle", "wald", "walks",
                           "replay", "determinism"}
    r = CheckResult("wald", "relative_gap", True, {"gap": 0.001})
    assert r.to_dict() == {"suite": "wald", "name": "relative_gap",
                           "passed": True, "detail": {"gap": 0.001}}


def test_suite_aliases():
    assert SUITE_ALIASES == {"lemma2": "persistence"}
    assert resolve_suite("lemma2") == "persistence"
    assert resolve_suite("wald") == "wald"
    with pytest.raises(ValueError):
        resolve_suite("bogus")


def test_walks_detail_carries_a_walk_report():
    results = dict((r.name, r) for r in run_suite("walks", "quick", seed = 0))
    report = results["passage_mean_bound"].detail["report"]
    assert report["sample_count"] > 0
    assert report["censor_fraction"] == 0.0
    assert report["mean"] <= report["bound"]
    assert report["params"]["c"] == 0.01
    assert report["survival_curve"][0][1] == 1.0
