# Acceptance suites at quick scale; minutes of CPU each.

import json
import os

import pytest

from hkntk.verify.suites import run_suite
from hkntk.verify.verify import verify

pytestmark = pytest.mark.slow


@pytest.mark.parametrize("name", ["wald", "persistence", "consensus_bound",
                                  "heavy_tail", "leader", "determinism"])
def test_acceptance_suite(name):
    results = run_suite(name, "quick", seed = 0, nproc = 2)
    bad = [(r.name, r.detail) for r in results if not r.passed]
    assert bad == []


def test_published_suite_name(tmp_path):
    out = str(tmp_path)
    assert verify(["hkntk", "verify", "--suite", "lemma2", "--out", out]) == 0
    with open(os.path.join(out, "verify.json")) as fp:
        doc = json.load(fp)
    assert {r["suite"] for r in doc["results"]} == {"persistence"}
