import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance.py::" in rep.nodeid:
                title = dict(rep.user_properties).get("criterion", rep.nodeid)
                lines.append((title, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for title, verdict in sorted(lines, key=lambda t: int(t[0].split()[1].rstrip(":"))):
            terminalreporter.write_line(f"{verdict} {title}")


def pytest_runtest_setup(item):
    title = getattr(getattr(item, "function", None), "criterion", None)
    if title:
        item.user_properties.append(("criterion", title))
