import json
from importlib import resources

import pytest

# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)

from qlbc import BuildOptions, build_lblock, build_lici, count, load_sbox_circuits


@pytest.fixture(scope="session")
def sbox_circuits():
    return load_sbox_circuits()


@pytest.fixture(scope="session")
def lblock_original():
    return build_lblock(BuildOptions(rounds=32, variant="original"))


@pytest.fixture(scope="session")
def lblock_improved():
    return build_lblock(BuildOptions(rounds=32, variant="improved"))


@pytest.fixture(scope="session")
def lici_full():
    return build_lici(BuildOptions(rounds=31))


@pytest.fixture(scope="session")
def full_summaries(lblock_original, lblock_improved, lici_full):
    return {
        "lblock": count(lblock_original),
        "lblock-improved": count(lblock_improved),
        "lici": count(lici_full),
    }


@pytest.fixture(scope="session")
def test_vectors():
    text = resources.files("qlbc.data").joinpath("test_vectors.json").read_text()
    return json.loads(text)["vectors"]
