"""Shared fixtures and a deterministic hypothesis profile."""
from __future__ import annotations

import itertools
import sys

import pytest
from hypothesis import HealthCheck, settings

from wittflag.rootdata import all_types, build_root_datum

settings.register_profile(
    "wittflag",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("wittflag")

SMALL_TYPES = [str(t) for t in all_types(4)]
ALL_TYPES = [str(t) for t in all_types(8)]


def all_subsets(datum):
    for r in range(datum.rank + 1):
        yield from itertools.combinations(datum.nodes, r)


@pytest.fixture(params=SMALL_TYPES)
def small_datum(request):
    return build_root_datum(request.param)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
