import json
import random
from pathlib import Path

import pytest

from rsscred.group import MOCK, get_backend

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def bls():
    return get_backend("bls12_381")


@pytest.fixture(scope="session")
def mock():
    return MOCK


@pytest.fixture(params=["mock-exp", "bls12_381"])
def backend(request):
    return get_backend(request.param)


@pytest.fixture
def rng():
    return random.Random(20230723)


@pytest.fixture
def sample_path():
    return DATA / "sample_credential.json"


@pytest.fixture
def sample_doc(sample_path):
    return json.loads(sample_path.read_text())


ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
