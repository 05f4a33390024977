import random
import time

import pytest

from catkit.core.models import CheckResult, Violation
from catkit.core.profiler import CheckProfiler
from catkit.core.stats_tracker import StatsTracker
from catkit.core.sweep import run_checks


def _check(i: int, fail: bool = False):
    def fn():
        time.sleep(random.random() / 200)
        return [Violation("law", str(i), "a", "b")] if fail else []

    return f"fam{i % 2}:{i}", fn


def test_order_is_preserved_with_workers() -> None:
    checks = [_check(i, fail=(i % 3 == 0)) for i in range(20)]
    results = run_checks(checks, workers=4)
    assert [r.name for r in results] == [name for name, _ in checks]
    assert [r.passed for r in results] == [i % 3 != 0 for i in range(20)]


def test_stats_and_profiler() -> None:
    stats = StatsTracker()
    profiler = CheckProfiler()
    run_checks([_check(i, fail=(i < 3)) for i in range(6)], workers=2, stats=stats, profiler=profiler)
    snap = stats.snapshot()
    assert (snap.checks_total, snap.checks_done, snap.failed, snap.violations) == (6, 6, 3, 3)
    assert stats.elapsed() > 0.0
    summary = profiler.summary()
    assert summary["fam0"]["checks"] == 3
    assert summary["fam1"]["checks"] == 3
    assert summary["fam0"]["failures"] == 2
    assert summary["fam1"]["failures"] == 1


def test_ready_results_pass_through() -> None:
    res = CheckResult(name="x", notes=(("k", "v"),))
    assert run_checks([("x", lambda: res)]) == [res]
    assert run_checks([]) == []


def test_exceptions_propagate() -> None:
    def boom():
        raise RuntimeError("boom")

    with pytest.raises(RuntimeError):
        run_checks([_check(0), ("bad:1", boom)], workers=2)
