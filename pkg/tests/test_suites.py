import pytest

from borel_qo.suites import run_suite, suite_names

QUICK_SIZE = 0.1


@pytest.mark.parametrize("name", suite_names())
def test_suite_passes(name):
    res = run_suite(name, size=QUICK_SIZE, seed=0)
    assert res.passed, res.counterexample
    assert res.counterexample is None
    assert res.instances == res.exhaustive + res.randomized > 0


@pytest.mark.parametrize("name", suite_names())
def test_corrupted_oracle_is_caught(name):
    res = run_suite(name, size=QUICK_SIZE, seed=0, corrupt=True)
    assert not res.passed
    assert res.counterexample is not None
    assert 0 <= res.counterexample["index"] < res.instances


def test_deterministic_under_seed():
    a = run_suite("lineup", size=0.2, seed=3).to_json()
    b = run_suite("lineup", size=0.2, seed=3).to_json()
    assert a == b
    assert a["seed"] == 3


def test_parallel_matches_serial():
    serial = run_suite("fm", size=0.2, seed=1, corrupt=True).to_json()
    parallel = run_suite("fm", size=0.2, seed=1, jobs=2, corrupt=True).to_json()
    assert serial == parallel


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
