import pytest

from artifact.suites import SUITES, SweepConfig, parallel_map, run_suite, sweep_instances, worker_count


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(p_values=(4,))
    with pytest.raises(ValueError):
        SweepConfig(e_max=0)
    with pytest.raises(ValueError):
        SweepConfig(p_values=())


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", SweepConfig())


def test_suite_names():
    assert set(SUITES) == {"theorem", "identity", "counts", "parities", "oracles"}


def test_sweep_instances_deterministic():
    cfg = SweepConfig(seeds=15)
    assert sweep_instances(cfg) == sweep_instances(cfg)


def test_threads_preserve_order(monkeypatch):
    monkeypatch.setenv("TTL_THREADS", "4")
    assert worker_count() == 4
    assert parallel_map(lambda x: x * x, range(50)) == [x * x for x in range(50)]


def test_bad_thread_count(monkeypatch):
    monkeypatch.setenv("TTL_THREADS", "0")
    with pytest.raises(ValueError):
        worker_count()


def test_small_theorem_run():
    result = run_suite("theorem", SweepConfig(seeds=25))
    assert result.ok
    assert len(result.instances) == 25
