import contextlib
import time

import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(capsys):
    """Context manager that prints and records one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def run(number, title, limit=None):
        start = time.perf_counter()
        status, note = "PASS", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if limit is not None and elapsed > limit:
                status, note = "FAIL", f" (took {elapsed:.1f}s, limit {limit}s)"
        except BaseException as exc:
            status, note = "FAIL", f" ({type(exc).__name__}: {str(exc)[:120]})"
            raise
        finally:
            elapsed = time.perf_counter() - start
            line = f"{status} criterion {number}: {title} [{elapsed:.1f}s]{note}"
            ACCEPTANCE_LINES.append(line)
            with capsys.disabled():
                print("\n" + line)
        if status == "FAIL":
            pytest.fail(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
