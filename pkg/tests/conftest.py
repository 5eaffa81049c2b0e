import re
from collections import OrderedDict

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_labels = {}
_outcomes = OrderedDict()


def pytest_collection_modifyitems(items):
    for item in items:
        m = _CRITERION.search(item.name)
        if m:
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            _labels[int(m.group(1))] = doc


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    failed = report.failed or (report.when == "call" and report.skipped)
    if failed:
        _outcomes[n] = False
    elif report.when == "call":
        _outcomes.setdefault(n, True)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        status = "PASS" if _outcomes[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {_labels.get(n, '')}")
