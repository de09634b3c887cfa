from __future__ import annotations

from collections import defaultdict

import pytest

# criterion number -> outcomes of its tests, and free-form details
OUTCOMES: dict[int, list[str]] = defaultdict(list)
DETAILS: dict[int, list[str]] = defaultdict(list)


def pytest_configure(config: pytest.Config) -> None:
    config.addinivalue_line("markers", "criterion(k): test belongs to acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item: pytest.Item, call: pytest.CallInfo) -> object:
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.outcome != "passed"):
        return
    k = mark.args[0]
    if hasattr(rep, "wasxfail"):
        OUTCOMES[k].append("xfail")
    else:
        OUTCOMES[k].append(rep.outcome)


def pytest_terminal_summary(terminalreporter: pytest.TerminalReporter) -> None:
    if not OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(OUTCOMES):
        status = "PASS" if all(o == "passed" for o in OUTCOMES[k]) else "FAIL"
        notes = list(DETAILS.get(k, []))
        xfails = OUTCOMES[k].count("xfail")
        if xfails:
            notes.append(f"{xfails} literal value(s) unattainable, strict xfail")
        detail = "; ".join(notes)
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {detail}".rstrip())
