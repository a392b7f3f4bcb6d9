import sys
from pathlib import Path

# shared reference tables live next to the tests
sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            number, title = marker.args
            item.user_properties.append(("criterion", (number, title)))
            _criteria.setdefault(number, {"title": title, "ok": None})


def pytest_runtest_logreport(report):
    for key, (number, _) in (p for p in report.user_properties if p[0] == "criterion"):
        entry = _criteria[number]
        if report.failed or (report.when == "call" and report.skipped):
            entry["ok"] = False
        elif report.when == "call" and entry["ok"] is None:
            entry["ok"] = True


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = {True: "PASS", False: "FAIL", None: "NOT RUN"}[entry["ok"]]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {entry['title']}")
