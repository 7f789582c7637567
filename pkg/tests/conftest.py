"""Per-criterion PASS/FAIL summary for the acceptance suite."""

import pytest

_results: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion identifier")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        cid = marker.args[0]
        detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
        _results[cid] = ("PASS" if report.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_results, key=lambda c: (int(c.rstrip("ab")), c)):
        status, detail = _results[cid]
        tr.write_line(f"criterion {cid:<3} {status}  {detail}")
