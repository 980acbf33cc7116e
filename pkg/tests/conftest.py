from functools import lru_cache

import pytest

from jtwist.twist import canonical_twist

_CRITERIA = {}


@lru_cache(maxsize=None)
def twist_for(N, K):
    return canonical_twist(N, K)


@pytest.fixture(scope="session")
def twists():
    return twist_for


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "results": [], "note": None})
    entry["note"] = entry["note"] or mark.kwargs.get("note")
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        xfailed = hasattr(rep, "wasxfail")
        entry["results"].append((item.name, rep.passed and not xfailed, xfailed))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        entry = _CRITERIA[n]
        res = entry["results"]
        ok = bool(res) and all(p for _, p, _ in res)
        line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {entry['title']}"
        bad = [name for name, p, _ in res if not p]
        if bad:
            line += "  [not met: " + ", ".join(bad) + "]"
            if entry["note"]:
                line += "\n" + " " * 14 + entry["note"]
        tr.write_line(line)
