import os

import pytest
from hypothesis import HealthCheck, settings

from dmct.algebra import FqConfig, Poly
from dmct.level import make_level

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("DMCT_CACHE_DIR", str(tmp_path / "cache"))


@pytest.fixture(scope="session")
def F2():
    return FqConfig(2)


@pytest.fixture(scope="session")
def F3():
    return FqConfig(3)


@pytest.fixture(scope="session")
def F4():
    return FqConfig.parse("q=4;modulus=x^2+x+1")


GRID = [("q=2", "T"), ("q=2", "T^2+T+1"), ("q=3", "T"), ("q=3", "T^2+1")]


def level(fq_text: str, p: str, r: int):
    fq = FqConfig.parse(fq_text)
    return make_level(fq, Poly.parse(fq, p), r)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def cache_env(tmp_path):
    return {**os.environ, "DMCT_CACHE_DIR": str(tmp_path / "cache")}
