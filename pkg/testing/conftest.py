import os
import sys
from pathlib import Path

import pytest

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from src.models.coxeter_data import matrix_from_pairs  # noqa: E402
from src.utils.file_utils import read_presentation  # noqa: E402

FIXTURES = Path(PROJECT_ROOT) / "fixtures"


def load_fixture(name: str):
    return read_presentation(FIXTURES / name)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def i2():
    """I2(k) on generators s, t; k = 0 gives the infinite dihedral group"""
    def make(k):
        return matrix_from_pairs(["s", "t"], {} if k == 0 else {("s", "t"): k})
    return make


@pytest.fixture
def dihedral12():
    return load_fixture("dihedral12.cox")


@pytest.fixture
def triangle322():
    return load_fixture("triangle322.cox")


@pytest.fixture
def a4_path():
    return load_fixture("a4_path.cox")


@pytest.fixture
def d4_star():
    return load_fixture("d4_star.cox")


@pytest.fixture
def twist3():
    return load_fixture("twist3.cox")


@pytest.fixture
def twist4():
    return load_fixture("twist4.cox")


@pytest.fixture
def dihedral4_tail():
    return load_fixture("dihedral4_tail.cox")


@pytest.fixture
def free3():
    return load_fixture("free3.cox")
