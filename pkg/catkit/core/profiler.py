from __future__ import annotations

import json
import threading
from collections import defaultdict
from typing import Dict

from catkit.io.utils import atomic_write_text


class CheckProfiler:
    """Per-check-family call counts, failures and wall time."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._counts: Dict[str, int] = defaultdict(int)
        self._failures: Dict[str, int] = defaultdict(int)
        self._time_sum: Dict[str, float] = defaultdict(float)

    def record(self, family: str, elapsed_s: float, ok: bool) -> None:
        with self._lock:
            self._counts[family] += 1
            self._time_sum[family] += float(elapsed_s)
            if not ok:
                self._failures[family] += 1

    def summary(self) -> dict:
        with self._lock:
            out = {}
            for key in self._counts:
                count = self._counts[key]
                fail = self._failures.get(key, 0)
                total = self._time_sum.get(key, 0.0)
                out[key] = {
                    "checks": count,
                    "failures": fail,
                    "failure_rate": (fail / count) if count else 0.0,
                    "avg_seconds": (total / count) if count else 0.0,
                    "total_seconds": total,
                }
            return out

    def write(self, path: str) -> None:
        payload = {"families": self.summary()}

        def _write(tmp: str) -> None:
            with open(tmp, "w", encoding="utf-8") as f:
                json.dump(payload, f, indent=2, sort_keys=True)

        atomic_write_text(_write, path)
