import numpy as np
import pytest


def random_r(rng, n, values=(-2, -1, 0, 1, 2)):
    R = rng.choice(values, size=(n, n)).astype(float)
    np.fill_diagonal(R, 0.0)
    return R


def random_continuous_r(rng, n):
    R = rng.uniform(-1, 1, size=(n, n))
    np.fill_diagonal(R, 0.0)
    return R


def cobb_douglas_dataset(rng, n, L):
    """Demand of one Cobb-Douglas consumer at random prices and incomes (always rationalizable)."""
    alpha = rng.dirichlet(np.ones(L))
    prices = rng.uniform(0.5, 3.0, size=(n, L))
    income = rng.uniform(1.0, 10.0, size=n)
    bundles = alpha[None, :] * income[:, None] / prices
    return prices, bundles


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
