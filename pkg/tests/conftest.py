import pytest

from su3fr import catalog as C
from su3fr import engine as En
from su3fr import verify as Vf


@pytest.fixture(scope="session")
def ctx():
    """One shared verification context so each group is closed only once."""
    return Vf.Context()


@pytest.fixture(scope="session")
def fr162(ctx):
    return ctx.fr162


@pytest.fixture(scope="session")
def fr(ctx):
    return ctx.fr


@pytest.fixture(scope="session")
def d9(ctx):
    return ctx.d9


@pytest.fixture(scope="session")
def d18(ctx):
    return ctx.d18


@pytest.fixture(scope="session")
def sigma(ctx):
    return ctx.sigma


@pytest.fixture(scope="session")
def small_groups():
    names = ["c2-0-1", "c9-1-1", "sigma216x3"]
    return {nm: En.generate(C.get(nm).generators, name=nm) for nm in names}


# ---- one summary line per acceptance criterion ----

_CRITERIA: dict[str, bool] = {}


def _criterion(nodeid: str) -> str | None:
    name = nodeid.split("::")[-1]
    if "test_acceptance.py" not in nodeid or not name.startswith("test_criterion_"):
        return None
    return name.split("_")[2]


def pytest_runtest_logreport(report):
    key = _criterion(report.nodeid)
    if key is None or report.skipped:
        return
    if report.when == "call" or report.failed:
        _CRITERIA[key] = _CRITERIA.get(key, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {int(key):2d}: {'PASS' if _CRITERIA[key] else 'FAIL'}")
