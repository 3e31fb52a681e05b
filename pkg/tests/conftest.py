import pytest

from fieldinv.survey import default_workers

_ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture(scope="session")
def cells():
    """Survey records shared by every acceptance test that needs a full cell."""
    return {}


@pytest.fixture(scope="session")
def workers():
    return default_workers()


@pytest.fixture
def criterion():
    """Record a numbered criterion's outcome for the end-of-run summary."""

    class Recorder:
        def __call__(self, number, title):
            self.number, self.title = number, title
            _ACCEPTANCE[number] = (title, False, "did not finish")
            return self

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            detail = "" if exc is None else f"{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
            _ACCEPTANCE[self.number] = (self.title, exc is None, detail)
            return False

    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[number]
        line = f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}"
        terminalreporter.write_line(line + ("" if ok else f"  ({detail})"))
