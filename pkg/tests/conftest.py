"""Shared pytest configuration.

Prints one PASS/FAIL line per acceptance criterion at the end of the run
so the acceptance gate is readable without scanning the full verbose log.
"""

ACCEPTANCE_MARKER = "test_acceptance.py::test_criterion_"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if ACCEPTANCE_MARKER not in nodeid:
                continue
            if getattr(report, "when", "call") != "call" and outcome == "passed":
                continue
            name = nodeid.split("::")[-1]
            status = "PASS" if outcome == "passed" else "FAIL"
            # A failure in any phase trumps an earlier pass record.
            if results.get(name) != "FAIL":
                results[name] = status
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results):
        terminalreporter.write_line(f"{results[name]}: {name}")
