import os

from hypothesis import settings

import acceptance_log

settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, passed, elapsed, note in sorted(acceptance_log.RESULTS):
        status = "PASS" if passed else "FAIL"
        line = f"{status}  criterion {num:>2}  {title}  ({elapsed:.2f} s)"
        if note:
            line += f"  {note}"
        terminalreporter.write_line(line)
