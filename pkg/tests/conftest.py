import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import simruns  # noqa: E402


@pytest.fixture(scope="session")
def a2_main():
    return simruns.get_run("a2_main")


@pytest.fixture(scope="session")
def a2_half():
    return simruns.get_run("a2_half")


@pytest.fixture(scope="session")
def a15_main():
    return simruns.get_run("a15_main")


@pytest.fixture(scope="session")
def a1_main():
    return simruns.get_run("a1_main")


@pytest.fixture(scope="session")
def a08_main():
    return simruns.get_run("a08_main")
