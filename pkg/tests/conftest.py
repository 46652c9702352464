import sys


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
