import numpy as np
import pytest

from stingy.qregister import ProductBasis
from stingy.random_states import ginibre_density, random_product_basis


@pytest.fixture
def rng():
    return np.random.default_rng(20260401)


@pytest.fixture
def ginibre(rng):
    return lambda n: ginibre_density(n, rng)


@pytest.fixture
def computational():
    return ProductBasis.computational


@pytest.fixture
def random_basis(rng):
    return lambda n: random_product_basis(n, rng)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in rep.nodeid and rep.when == "call":
                lines.append((rep.nodeid.split("::")[-1], outcome.upper()))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"{'PASS' if outcome == 'PASSED' else 'FAIL'}  {name}")
