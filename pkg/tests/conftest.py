"""Collects one PASS/FAIL line per acceptance criterion and prints them at the end."""

import time

import pytest

_RESULTS = {}


@pytest.fixture
def criterion(request):
    """Usage: ``with criterion(3, "general grid", limit_s=600): ...``"""

    class _Timer:
        def __init__(self, number, title, limit_s):
            self.number, self.title, self.limit_s = number, title, limit_s

        def __enter__(self):
            _RESULTS[self.number] = (self.title, False, None, self.limit_s, "not finished")
            self.start = time.perf_counter()
            return self

        def __exit__(self, exc_type, exc, tb):
            elapsed = time.perf_counter() - self.start
            note = "" if exc_type is None else f"{exc_type.__name__}: {exc}".splitlines()[0][:120]
            ok = exc_type is None
            if ok and elapsed >= self.limit_s:
                ok, note = False, "time limit exceeded"
            _RESULTS[self.number] = (self.title, ok, elapsed, self.limit_s, note)
            if exc_type is None and not ok:
                pytest.fail(f"criterion {self.number} took {elapsed:.2f}s, limit {self.limit_s}s")
            return False

    return _Timer


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok, elapsed, limit_s, note = _RESULTS[number]
        took = "-" if elapsed is None else f"{elapsed:.2f}s"
        line = f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title} ({took}, limit {limit_s}s)"
        tr.write_line(line + (f" {note}" if note else ""))
