from __future__ import annotations

import threading
import time
from typing import Optional

from catkit.core.models import CheckStats


class StatsTracker:
    """
    Thread-safe counters for a check sweep.

    Rule: All mutation is done under one lock.
    Call snapshot() to get a consistent CheckStats for logging.
    """

    def __init__(self, checks_total: int = 0) -> None:
        self._lock = threading.Lock()
        self._checks_total = int(checks_total)
        self._checks_done = 0
        self._failed = 0
        self._violations = 0
        self._start_ts: Optional[float] = None

    def set_checks_total(self, n: int) -> None:
        with self._lock:
            self._checks_total = int(n)

    def start(self) -> None:
        with self._lock:
            if self._start_ts is None:
                self._start_ts = time.monotonic()

    def record(self, violations: int) -> None:
        with self._lock:
            self._checks_done += 1
            self._violations += int(violations)
            if violations:
                self._failed += 1

    def snapshot(self) -> CheckStats:
        with self._lock:
            return CheckStats(
                checks_total=self._checks_total,
                checks_done=self._checks_done,
                failed=self._failed,
                violations=self._violations,
            )

    def elapsed(self) -> float:
        with self._lock:
            start = self._start_ts
        return 0.0 if start is None else max(0.0, time.monotonic() - start)
