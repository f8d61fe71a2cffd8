import pytest

from latsec.catalog import default_codes_path, load_catalog
from latsec.codes import BinaryCode, load_codes


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def code_entries():
    return load_codes(default_codes_path())


@pytest.fixture(scope="session")
def code_844(code_entries):
    return next(e.code for e in code_entries if e.code.name == "[8,4,4]")


@pytest.fixture(scope="session")
def code_211():
    # repetition code of length 2, the smallest self-dual code
    return BinaryCode([0b11], 2, name="[2,1,2]")


@pytest.fixture(scope="session")
def code_422():
    return BinaryCode([0b0011, 0b1100], 4, name="[4,2,2]")
