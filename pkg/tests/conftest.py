import pytest

CRITERIA: dict[int, str] = {}


def record(number: int, title: str, passed: bool, seconds: float, limit: float, detail: str = "") -> None:
    verdict = "PASS" if passed and seconds < limit else "FAIL"
    line = f"criterion {number:2d} [{verdict}] {title} ({seconds:.2f} s, limit {limit:g} s)"
    if detail:
        line += f" :: {detail}"
    CRITERIA[number] = line
    print(line)


@pytest.fixture
def criterion():
    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
