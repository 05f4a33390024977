import os
import sys

import pytest

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from catkit.core.corpus import build_corpus  # noqa: E402
from catkit.core.fincat import chain_category, cyclic_group_category  # noqa: E402
from catkit.core.monad import central_monad, closure_monad  # noqa: E402


@pytest.fixture
def chain3():
    return chain_category(3)


@pytest.fixture
def z2():
    return cyclic_group_category(2)


@pytest.fixture
def cl3(chain3):
    return closure_monad(chain3, ["1", "2"], name="cl3")


@pytest.fixture
def z2s(z2):
    return central_monad(z2, "s", "s", name="z2s")


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def tuples(corpus):
    return corpus.workspace.tuples
