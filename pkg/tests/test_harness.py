import pytest

from subgroup_graphs.harness import SUITES, HarnessConfig, report_bytes, run_harness


def test_same_seed_same_bytes():
    cfg = HarnessConfig(seed=7, trials=5, opponents=3)
    assert report_bytes(run_harness(cfg)) == report_bytes(run_harness(cfg))


def test_different_seed_differs():
    a = run_harness(HarnessConfig(seed=1, trials=5, opponents=2, suites=("bounds",)))
    b = run_harness(HarnessConfig(seed=2, trials=5, opponents=2, suites=("bounds",)))
    assert report_bytes(a) != report_bytes(b)


def test_suite_streams_are_independent():
    # a suite's output does not depend on which other suites run
    alone = run_harness(HarnessConfig(seed=4, trials=5, opponents=2, suites=("bounds",)))
    together = run_harness(HarnessConfig(seed=4, trials=5, opponents=2))
    assert alone["suites"]["bounds"] == together["suites"]["bounds"]


def test_zero_trials_is_empty():
    rep = run_harness(HarnessConfig(trials=0))
    assert rep["total_violations"] == 0
    assert sorted(rep["suites"]) == sorted(SUITES)
    assert all(s == {"counters": {}, "violations": [], "witnesses": []} for s in rep["suites"].values())


def test_bounds_seed_one_hundred_trials():
    rep = run_harness(HarnessConfig(seed=1, trials=100, suites=("bounds",)))
    assert rep["suites"]["bounds"]["violations"] == []
    assert rep["suites"]["bounds"]["counters"]["trials"] == 100


def test_report_is_schema_versioned():
    rep = run_harness(HarnessConfig(trials=1, opponents=1))
    assert rep["schema_version"] == 1
    assert list(rep["suites"]) == sorted(SUITES)


@pytest.mark.parametrize("bad", [dict(trials=-1), dict(max_edges=0), dict(suites=("x",))])
def test_invalid_config(bad):
    with pytest.raises(ValueError):
        run_harness(HarnessConfig(**bad))
