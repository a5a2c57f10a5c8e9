import time

import numpy as np
import pytest

_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_state(rng, n):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)


def random_density(rng, n, rank=3):
    vs = [random_state(rng, n) for _ in range(rank)]
    w = rng.random(rank)
    w /= w.sum()
    return sum(wi * np.outer(v, v.conj()) for wi, v in zip(w, vs))


# The N=8 gate-noise sweep is the most expensive computation in the suite;
# it is run once and shared by the acceptance check and the heatmap test.
N8_SWEEP = dict(mode="sweep", n=[8], degree=[3], depth=[1, 2, 3, 4, 5, 6],
                rates=[1e-4, 1e-3, 0.005, 0.01, 0.02, 0.03, 0.05, 0.07, 0.1],
                graph_seed=1, engine="exact")


@pytest.fixture(scope="session")
def n8_sweep():
    from svqaoa.sweep import SweepConfig, run

    start = time.perf_counter()
    records = run(SweepConfig(**N8_SWEEP))
    return records, time.perf_counter() - start
