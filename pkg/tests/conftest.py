import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

_CRITERIA: dict[str, tuple[bool, str]] = {}


class CriterionRecorder:
    def __init__(self, key):
        self.key = key

    def __call__(self, passed: bool, detail: str = "") -> bool:
        _CRITERIA[self.key] = (bool(passed), detail)
        return bool(passed)


@pytest.fixture
def criterion(request):
    key = request.node.name
    yield CriterionRecorder(key)
    _CRITERIA.setdefault(key, (False, "did not complete"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        passed, detail = _CRITERIA[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {key}  {detail}")
