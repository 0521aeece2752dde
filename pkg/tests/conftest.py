import pytest

from corpus import families, fuzz


@pytest.fixture
def corpus():
    return list(families()) + list(fuzz(40))


def pytest_terminal_summary(terminalreporter):
    from corpus import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
