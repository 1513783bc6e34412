from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from reidemeister.catalog import burnside_catalog
from reidemeister.groups import automorphisms

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@lru_cache(maxsize=None)
def catalog_automorphisms(name: str):
    return tuple(automorphisms(burnside_catalog()[name]))


@lru_cache(maxsize=None)
def small_catalog_names(max_order: int = 24) -> tuple[str, ...]:
    return tuple(n for n, G in burnside_catalog().items() if G.order <= max_order)


# one summary line per acceptance criterion

_CRITERIA_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")
    config.stash[_CRITERIA_KEY] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    entry = item.config.stash[_CRITERIA_KEY].setdefault(number, {"title": title, "failed": [], "passed": []})
    if report.when == "call" or report.failed:
        (entry["failed"] if report.failed else entry["passed"]).append(item.name)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash[_CRITERIA_KEY]
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        entry = results[number]
        status = "FAIL" if entry["failed"] else "PASS"
        line = f"criterion {number}: {status}  {entry['title']}"
        if entry["failed"]:
            line += f"  (failing: {', '.join(entry['failed'])})"
        terminalreporter.write_line(line)
