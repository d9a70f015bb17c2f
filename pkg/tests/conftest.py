import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tfgroups.recoder import recode  # noqa: E402
from tfgroups.subshift import fibonacci, thue_morse  # noqa: E402
from tfgroups.towers import SeedPoint  # noqa: E402

SYSTEMS = Path(__file__).resolve().parent.parent / "systems"


@pytest.fixture(scope="session")
def fib():
    return fibonacci()


@pytest.fixture(scope="session")
def tm():
    return thue_morse()


@pytest.fixture(scope="session")
def yfib(fib):
    return recode(fib)


@pytest.fixture(scope="session")
def ytm(tm):
    return recode(tm)


@pytest.fixture(scope="session")
def omega(fib):
    return SeedPoint.parse(fib, "a.a:2")


@pytest.fixture(scope="session")
def omega2(fib):
    return SeedPoint.parse(fib, "b.a:2")


@pytest.fixture(scope="session")
def yomega(yfib, omega):
    return yfib.encode_point(omega)


@pytest.fixture(scope="session")
def yomega2(yfib, omega2):
    return yfib.encode_point(omega2)


@pytest.fixture(scope="session")
def systems_dir():
    return SYSTEMS


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
