import pytest

from groupiso import catalogue


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is not None and getattr(mod, "LINES", None):
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def line():
    return catalogue.build("z")


@pytest.fixture(scope="session")
def plane():
    return catalogue.build("z2")


@pytest.fixture(scope="session")
def tree():
    return catalogue.build("f2")


@pytest.fixture(scope="session")
def ring16():
    return catalogue.build("c16")


@pytest.fixture(scope="session")
def cube():
    return catalogue.build("q3")
