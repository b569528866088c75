import pytest

from qshift.lie import GL, O_CANON, O_SPLIT, SP_SPLIT, build_spec


@pytest.fixture(scope="session")
def gl2():
    return build_spec(GL, 2)


@pytest.fixture(scope="session")
def gl3():
    return build_spec(GL, 3)


@pytest.fixture(scope="session")
def o4():
    return build_spec(O_SPLIT, 4)


@pytest.fixture(scope="session")
def o5():
    return build_spec(O_SPLIT, 5)


@pytest.fixture(scope="session")
def sp4():
    return build_spec(SP_SPLIT, 4)


@pytest.fixture(scope="session")
def c4():
    return build_spec(O_CANON, 4)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for ok, lines in RESULTS.values():
        terminalreporter.write_line(lines[0])
