import warnings

import pytest

from codensity.plugins import get_plugin


@pytest.fixture(autouse=True)
def _quiet_fp_bound_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        yield


@pytest.fixture(scope="session")
def setp():
    return get_plugin("set")


@pytest.fixture(scope="session")
def parp():
    return get_plugin("par")


@pytest.fixture(scope="session")
def posp():
    return get_plugin("pos")


@pytest.fixture(scope="session")
def jslp():
    return get_plugin("jsl")


@pytest.fixture(scope="session")
def grap():
    return get_plugin("gra")


@pytest.fixture(scope="session")
def msetp():
    return get_plugin("mset")


@pytest.fixture(scope="session")
def sigp():
    return get_plugin("sigma_str")


@pytest.fixture(scope="session")
def vec2():
    return get_plugin("vec", q=2)


@pytest.fixture(scope="session")
def vec3():
    return get_plugin("vec", q=3)


@pytest.fixture(scope="session")
def topp():
    return get_plugin("top")


@pytest.fixture(scope="session")
def top0p():
    return get_plugin("top0")
