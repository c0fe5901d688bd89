from __future__ import annotations

import numpy as np
import pytest

from fmb.algebra import radical_filtration
from fmb.catalog import build_group
from fmb.field import field_make


@pytest.fixture(scope="session")
def gf2():
    return field_make(2)


@pytest.fixture(scope="session")
def gf4():
    return field_make(2, 2)


def setup(name: str, p: int | None = None, k: int = 1):
    g = build_group(name)
    f = field_make(p or g.p, k)
    return g, f, radical_filtration(g, f)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
