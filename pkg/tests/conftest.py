_RESULTS: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title, limit): acceptance criterion with a time limit")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    label, title, limit = mark.args
    entry = _RESULTS.setdefault(label, {"title": title, "limit": limit, "ok": True, "seconds": 0.0})
    entry["seconds"] += call.duration
    if call.excinfo is not None:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_RESULTS, key=lambda s: int(s[2:])):
        r = _RESULTS[label]
        status = "PASS" if r["ok"] else "FAIL"
        terminalreporter.write_line(f"{label} {status}  {r['seconds']:6.2f}s / {r['limit']}s  {r['title']}")
