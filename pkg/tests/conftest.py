import time
from contextlib import contextmanager

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def a5():
    from minfix.constructions import alt_group
    return alt_group(5)


class _Criterion:
    def __init__(self):
        self.detail = ""


@pytest.fixture
def criterion(capsys):
    """Context manager that times one acceptance criterion, enforces its time
    limit and records a single PASS/FAIL line."""

    @contextmanager
    def run(number: int, title: str, limit: float):
        state = _Criterion()
        start = time.perf_counter()
        ok, err = False, None
        try:
            yield state
            ok = True
        except BaseException as exc:
            err = exc
            raise
        finally:
            elapsed = time.perf_counter() - start
            slow = elapsed >= limit
            status = "PASS" if ok and not slow else "FAIL"
            why = state.detail if ok else f"{type(err).__name__}: {str(err).splitlines()[0] if str(err) else ''}"
            if ok and slow:
                why += f"; exceeded {limit:g} s"
            line = f"criterion {number:2d} {status}  {title}  ({elapsed:.2f} s / {limit:g} s)  {why}"
            _ACCEPTANCE_LINES.append(line)
            with capsys.disabled():
                print("\n" + line)
            if ok and slow:
                pytest.fail(f"criterion {number} took {elapsed:.1f} s, limit {limit:g} s")

    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
