import pytest

from modules.chevalley import ReductiveAlgebra, structure_constants
from modules.hkt import joyce_decompose
from modules.rootsys import build_root_system, parse_algebra


@pytest.fixture(scope="session")
def root_system():
    def make(name: str):
        return build_root_system(parse_algebra(name))

    return make


@pytest.fixture(scope="session")
def table(root_system):
    def make(name: str):
        return structure_constants(root_system(name))

    return make


@pytest.fixture(scope="session")
def a4_levels():
    return joyce_decompose(ReductiveAlgebra.of("A4"))


@pytest.fixture(scope="session")
def a2_levels():
    return joyce_decompose(ReductiveAlgebra.of("A2"))
