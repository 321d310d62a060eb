"""Suite runner: naming, determinism, containment of broken tasks."""

import numpy as np
import pytest

from ringline import suites
from ringline.suites import SUITE_ORDER, run_suite, suite_names


def test_suite_names():
    names = suite_names()
    assert tuple(names) == SUITE_ORDER + ("all",)
    assert len(SUITE_ORDER) == 9


def test_unknown_suite_raises():
    with pytest.raises(ValueError):
        run_suite("bogus")


def test_single_suite_runs_green():
    rep = run_suite("symbolic")
    assert rep.counts["failed"] == 0
    assert rep.suites == ("symbolic",)


def test_records_are_sorted_and_normalized():
    rep = run_suite("prop25")
    keys = [(r["suite"], r["name"], r["target"], r["mode"]) for r in rep.records]
    assert keys == sorted(keys)
    for r in rep.records:
        assert set(r) == {"suite", "name", "target", "mode", "checked", "passed", "witness"}


def test_repeat_run_is_byte_identical():
    a = run_suite("chains", seed=0).to_jsonl()
    b = run_suite("chains", seed=0).to_jsonl()
    assert a == b


def test_seed_is_recorded_in_header():
    rep = run_suite("symbolic", seed=5)
    assert rep.seed == 5
    assert '"seed":5' in rep.to_jsonl().split("\n", 1)[0]


def test_task_errors_become_failed_records(monkeypatch):
    """A crashing check must surface as a failed record, not kill the run."""
    from ringline import freealg

    def boom(*a, **k):
        raise AssertionError("synthetic breakage")

    monkeypatch.setattr(freealg, "verify_e_identities", boom)
    rep = run_suite("symbolic")
    assert rep.counts["failed"] >= 1
    bad = [r for r in rep.records if r["name"] == "task-error"]
    assert bad
    assert "synthetic breakage" in str(bad[0]["witness"])


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("RINGLINE_THREADS", "2")
    assert suites._thread_count() == 2
