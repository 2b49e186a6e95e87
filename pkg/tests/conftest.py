from __future__ import annotations

import hypothesis

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("thorough", deadline=None, max_examples=500)
hypothesis.settings.load_profile("default")

# criterion number -> (title, list of (case, passed))
CRITERIA: dict[int, tuple[str, list[tuple[str, bool]]]] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        title, cases = CRITERIA[num]
        ok = all(p for _, p in cases)
        failed = [c for c, p in cases if not p]
        tail = f" (failed: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}{tail}")
