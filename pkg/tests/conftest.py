from contextlib import contextmanager

import pytest

RESULTS: dict[int, tuple[bool, str]] = {}


@contextmanager
def _criterion(number: int, title: str):
    note = {"detail": ""}
    try:
        yield note
    except BaseException as exc:
        RESULTS[number] = (False, f"{title}: {type(exc).__name__}: {exc}".strip())
        raise
    RESULTS[number] = (True, f"{title}: {note['detail']}" if note["detail"] else title)


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(RESULTS):
        ok, text = RESULTS[number]
        first = text.splitlines()[0] if text else ""
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {first}")
