import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    Use as ``with verdict(n, "title") as note: ...``; ``note(text)`` sets the
    detail printed next to the verdict. Assertion failures still propagate.
    """
    import contextlib
    import time

    @contextlib.contextmanager
    def record(number, title):
        detail = []
        started = time.perf_counter()
        try:
            yield detail.append
        except BaseException as exc:
            msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            ACCEPTANCE_LINES.append((number, "FAIL", title, detail[-1] if detail else msg,
                                     time.perf_counter() - started))
            raise
        ACCEPTANCE_LINES.append((number, "PASS", title, detail[-1] if detail else "",
                                 time.perf_counter() - started))
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, detail, secs in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"[{status}] criterion {number:2d} {title}: {detail} ({secs:.2f} s)")
