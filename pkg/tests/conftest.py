import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.LOG:
        terminalreporter.write_line(line)
