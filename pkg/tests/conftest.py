import pytest

from hermgenus.fields import CurveParams, build_tower
from hermgenus.unitary import hermitian_model, standard_mq


@pytest.fixture(scope="session")
def t5():
    return build_tower(CurveParams(5, 1))


@pytest.fixture(scope="session")
def t9():
    return build_tower(CurveParams(3, 2))


@pytest.fixture(scope="session")
def m1(t5):
    return hermitian_model(t5, "M1")


@pytest.fixture(scope="session")
def m2(t5):
    return hermitian_model(t5, "M2")


@pytest.fixture(scope="session")
def mq5(t5):
    return standard_mq(t5)


@pytest.fixture(scope="session")
def pgu5():
    from hermgenus.verify import _pgu

    return _pgu(5, 1)



def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num][1])
