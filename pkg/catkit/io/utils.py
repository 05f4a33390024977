from __future__ import annotations

import os
import tempfile
from typing import Callable


def atomic_write_text(write_fn: Callable[[str], None], out_path: str) -> None:
    """write_fn fills a temp file next to out_path, which then replaces out_path in one step."""
    os.makedirs(os.path.dirname(out_path) or ".", exist_ok=True)
    d = os.path.dirname(out_path) or "."
    with tempfile.NamedTemporaryFile("w", delete=False, dir=d, encoding="utf-8") as tf:
        tmp_path = tf.name
    try:
        write_fn(tmp_path)
        os.replace(tmp_path, out_path)
    finally:
        try:
            if os.path.exists(tmp_path):
                os.remove(tmp_path)
        except OSError:
            pass


def write_text(text: str, out_path: str) -> None:
    def _write(tmp: str) -> None:
        with open(tmp, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)

    atomic_write_text(_write, out_path)
