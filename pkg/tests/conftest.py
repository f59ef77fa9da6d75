from pathlib import Path

import pytest

from gpcp.dataset import load_csv

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance = {}


@pytest.fixture(scope="session")
def iris_path():
    return FIXTURES / "iris.csv"


@pytest.fixture(scope="session")
def titanic_path():
    return FIXTURES / "titanic.csv"


@pytest.fixture(scope="session")
def iris(iris_path):
    with open(iris_path, "rb") as fh:
        return load_csv(fh)


@pytest.fixture(scope="session")
def titanic(titanic_path):
    with open(titanic_path, "rb") as fh:
        return load_csv(fh)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        prev = _acceptance.get(name, "PASS")
        _acceptance[name] = "PASS" if report.passed and prev == "PASS" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{outcome}  {name}")
