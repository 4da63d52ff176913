"""Shared fixtures: the heavyweight scenario runs are session-scoped so
the acceptance criteria and metric tests reuse one solve each."""

import numpy as np
import pytest

from rswp.harness import run_paper_scenario

ACCEPTANCE_PATH_LAMBDA = 50.0
ACCEPTANCE_DELTA = 0.25e-3


def _run(name, **kw):
    return run_paper_scenario(name, mode="2d",
                              path_lambda=ACCEPTANCE_PATH_LAMBDA,
                              delta=ACCEPTANCE_DELTA, **kw)


@pytest.fixture(scope="session")
def galinstan_50():
    return _run("straight_galinstan")


@pytest.fixture(scope="session")
def copper_50():
    return _run("straight_copper")


@pytest.fixture(scope="session")
def pec_walls_50():
    return _run("pec_walls")


@pytest.fixture(scope="session")
def surface_only_50():
    return _run("surface_only")


@pytest.fixture(scope="session")
def l_turn_50():
    return _run("l_turn_galinstan")


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="run slow opt-in physics tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running physics checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="slow; enable with --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
