import time
from contextlib import contextmanager

import pytest

_RESULTS: dict[int, str] = {}


@contextmanager
def _record(number: int, label: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException as err:
        line = f"FAIL criterion {number}: {label} ({type(err).__name__}: {str(err).splitlines()[0] if str(err) else ''})"
        _RESULTS[number] = line
        print(line)
        raise
    line = f"PASS criterion {number}: {label} ({time.perf_counter() - start:.2f}s)"
    _RESULTS[number] = line
    print(line)


@pytest.fixture
def criterion():
    return _record


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_RESULTS):
            terminalreporter.write_line(_RESULTS[n])
