from __future__ import annotations

import pytest

from cylrig.verify import VerifyConfig, check_instance, instance_graph, instances, run_verification, worker_count


def small(**kw):
    base = dict(max_exhaustive_n=4, random_samples=12, random_n_range=(5, 7), seed=3)
    base.update(kw)
    return VerifyConfig(**base)


def test_config_guards():
    with pytest.raises(ValueError):
        VerifyConfig(max_exhaustive_n=7)
    assert VerifyConfig(max_exhaustive_n=7, force=True).max_exhaustive_n == 7
    with pytest.raises(ValueError):
        VerifyConfig(random_n_range=(1, 3))
    with pytest.raises(ValueError):
        VerifyConfig(trials=0)


def test_instance_enumeration():
    jobs = list(instances(small(random_samples=3)))
    assert len(jobs) == 2 + 8 + 64 + 3
    assert [j[0] for j in jobs] == list(range(len(jobs)))
    assert instance_graph(4, 0b111111).edges == instance_graph(4, 63).edges
    assert len(instance_graph(4, 63).edges) == 6


def test_small_run_agrees():
    report = run_verification(small(), workers=1)
    assert report.exhaustive == 74 and report.random == 12
    assert report.disagreements == 0 and report.first is None
    assert "0 disagreements" in report.lines(small())


def test_seeded_run_is_repeatable():
    a = run_verification(small(seed=11), workers=1)
    b = run_verification(small(seed=11), workers=1)
    assert a == b


def test_injected_fault_is_caught():
    cfg = small(inject_fault=True, random_samples=20)
    report = run_verification(cfg, workers=1)
    assert report.disagreements > 0
    assert report.first is not None and not report.first.agree
    assert any(line.startswith("first counterexample") for line in report.lines(cfg))


def test_pool_matches_serial():
    cfg = small(random_samples=20)
    assert run_verification(cfg, workers=2, chunk=16) == run_verification(cfg, workers=1)


def test_check_instance_outcome():
    o = check_instance((0, 9, 0), trials=1, seed=0)
    assert o.brute == 0 and o.combinatorial == 0 == o.numeric and o.agree


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("CYLRIG_WORKERS", "3")
    assert worker_count() == 3
    monkeypatch.delenv("CYLRIG_WORKERS")
    assert worker_count() >= 1
