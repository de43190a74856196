import datetime as dt

import numpy as np
import pytest

from barocorr.synth import generate

WORKED = [900, 900, 900, 900, 900, 900, 1020, 900, 1000, 900]


@pytest.fixture
def worked_example():
    return list(WORKED)


@pytest.fixture
def rng():
    return np.random.default_rng(20160101)


@pytest.fixture(scope="session")
def synth_dataset():
    return generate(seed=42)


@pytest.fixture(scope="session")
def synth_dir(tmp_path_factory):
    from barocorr.synth import write_dataset

    d = tmp_path_factory.mktemp("synth") / "data"
    write_dataset(generate(seed=42), d)
    return d


@pytest.fixture
def start():
    return dt.date(2016, 1, 1)


def pytest_terminal_summary(terminalreporter):
    from .acceptance_log import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
