import pytest

from catkit.core.errors import CatkitError, DuplicateName, MissingEntity
from catkit.core.models import CheckResult, Violation
from catkit.core.store import Workspace
from catkit.io.report import make_report, render


def test_registry_names_are_unique(chain3) -> None:
    ws = Workspace()
    ws.categories.add(chain3.name, chain3)
    with pytest.raises(DuplicateName):
        ws.categories.add(chain3.name, chain3)
    with pytest.raises(MissingEntity) as exc:
        ws.monads.get("nope")
    assert isinstance(exc.value, CatkitError)
    assert ws.counts()["categories"] == 1
    assert not ws.is_empty()


def test_text_report() -> None:
    report = make_report(
        "validate",
        ["a.json"],
        [
            CheckResult(name="category:c", notes=(("objects", "2"),)),
            CheckResult(name="monad:m", violations=(Violation("left-unit", "0", "f", "g"),)),
        ],
    )
    assert report.exit_code == 1
    assert render(report) == (
        "catkit validate a.json\n"
        "  PASS  category:c\n"
        "        objects = 2\n"
        "  FAIL  monad:m (1 violations)\n"
        "        - left-unit at 0: f != g\n"
        "summary: checks=2 passed=1 failed=1 violations=1\n"
    )
