import pytest

from cmfield.lattice import Lattice
from cmfield.presets import preset


@pytest.fixture(scope="module")
def zeta3():
    return Lattice.from_definition(preset("zeta3"))


@pytest.fixture(scope="module")
def ln2():
    return Lattice.from_definition(preset("ln2"))


@pytest.fixture(scope="module")
def e_field():
    return Lattice.from_definition(preset("e"))
