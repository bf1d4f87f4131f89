import random

import pytest

from diracver.clifford import CATALOG_NAMES, catalog


@pytest.fixture
def dirac_pauli():
    return catalog("dirac-pauli")


@pytest.fixture
def weyl_chiral():
    return catalog("weyl-chiral")


@pytest.fixture
def majorana():
    return catalog("majorana")


@pytest.fixture
def all_catalog_sets():
    return [catalog(name) for name in CATALOG_NAMES]


@pytest.fixture
def rng():
    return random.Random(20240811)
