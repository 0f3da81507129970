import os

import pytest

from gldpc.ensemble import CheckNodeType, CnMixture, UnstructuredEnsemble, VnRegularEnsemble

SPEC_DIR = os.path.join(os.path.dirname(__file__), "specs")


def spec_path(name: str) -> str:
    return os.path.join(SPEC_DIR, name)


@pytest.fixture(scope="session")
def spc3():
    return CheckNodeType.spc(3)


@pytest.fixture(scope="session")
def spc6():
    return CheckNodeType.spc(6)


@pytest.fixture(scope="session")
def ham7():
    return CheckNodeType.hamming(7)


@pytest.fixture(scope="session")
def ham15():
    return CheckNodeType.hamming(15)


@pytest.fixture(scope="session")
def spc3_mixture(spc3):
    return CnMixture.of([spc3], [1])


@pytest.fixture(scope="session")
def alldeg2_spc3(spc3_mixture):
    return UnstructuredEnsemble.of(spc3_mixture, {2: 1})


@pytest.fixture(scope="session")
def gallager_3_6(spc6):
    return VnRegularEnsemble(mixture=CnMixture.of([spc6], [1]), q=3)


@pytest.fixture(scope="session")
def bound_mix_ensemble(spc3, ham7):
    mixture = CnMixture.of([spc3, ham7], ["1/5", "4/5"])
    return UnstructuredEnsemble.of(mixture, {2: "1/10", 3: "9/10"})
