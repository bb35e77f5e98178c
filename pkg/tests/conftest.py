import sys
from pathlib import Path

import pytest
from hypothesis import settings

from posslogic.kbio import read_kb

DATA = Path(__file__).resolve().parents[1] / "src" / "posslogic" / "data"

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


@pytest.fixture
def corpus():
    def load(name: str):
        return read_kb(DATA / f"{name}.pkb")
    return load


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
