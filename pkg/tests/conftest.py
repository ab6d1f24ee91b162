import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ACCEPTANCE: dict[int, tuple[str, bool, float]] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, title: str, ok: bool, seconds: float):
        ACCEPTANCE[number] = (title, ok, seconds)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, seconds = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  ({seconds:.2f} s)  {title}")
