from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from catkit.core.models import CheckResult, Report
from catkit.core.profiler import CheckProfiler
from catkit.core.stats_tracker import StatsTracker

logger = logging.getLogger(__name__)

CheckFn = Callable[[], Union[Report, CheckResult]]
NamedCheck = Tuple[str, CheckFn]


def _family(name: str) -> str:
    return name.split(":", 1)[0]


def _as_result(name: str, out: Union[Report, CheckResult]) -> CheckResult:
    if isinstance(out, CheckResult):
        return out
    return CheckResult(name=name, violations=tuple(out))


def run_checks(
    checks: Sequence[NamedCheck],
    *,
    workers: int = 1,
    progress: bool = False,
    stats: Optional[StatsTracker] = None,
    profiler: Optional[CheckProfiler] = None,
    desc: str = "checks",
) -> List[CheckResult]:
    """
    Runs named checks and returns their results in input order for any worker count.

    A check returns a report (list of violations) or a ready CheckResult. Exceptions
    propagate to the caller once the pool has drained.
    """
    checks = list(checks)
    if not checks:
        return []
    stats = stats or StatsTracker()
    stats.set_checks_total(len(checks))
    stats.start()
    results: List[Optional[CheckResult]] = [None] * len(checks)

    def _run(name: str, fn: CheckFn) -> CheckResult:
        t0 = time.perf_counter()
        res = _as_result(name, fn())
        if profiler is not None:
            profiler.record(_family(name), time.perf_counter() - t0, res.passed)
        stats.record(len(res.violations))
        return res

    bar = tqdm(total=len(checks), desc=desc, disable=not progress, leave=False)
    try:
        if workers <= 1:
            for i, (name, fn) in enumerate(checks):
                results[i] = _run(name, fn)
                bar.update(1)
        else:
            with ThreadPoolExecutor(max_workers=workers) as ex:
                future_map = {ex.submit(_run, name, fn): i for i, (name, fn) in enumerate(checks)}
                for fut in as_completed(future_map):
                    results[future_map[fut]] = fut.result()
                    bar.update(1)
    finally:
        bar.close()

    snap = stats.snapshot()
    logger.info(
        "%s: checked=%s failed=%s violations=%s in %.2fs",
        desc,
        snap.checks_done,
        snap.failed,
        snap.violations,
        stats.elapsed(),
    )
    return [r for r in results if r is not None]
