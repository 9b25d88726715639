"""Collects acceptance-criterion outcomes and prints one line per criterion."""

from collections import OrderedDict

_RESULTS: "OrderedDict[int, dict]" = OrderedDict()


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    n, title = marker.args
    entry = _RESULTS.setdefault(n, {"title": title, "passed": 0, "failed": []})
    if call.excinfo is None:
        entry["passed"] += 1
    else:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        e = _RESULTS[n]
        status = "FAIL" if e["failed"] else "PASS"
        extra = f"  (failed: {', '.join(e['failed'])})" if e["failed"] else f"  (checks passed: {e['passed']})"
        terminalreporter.write_line(f"[{status}] criterion {n}: {e['title']}{extra}")
