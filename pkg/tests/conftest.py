import pytest

from ellflag import build_root_system, enumerate_weyl_group

# the desk-scale sweep used by the property suites
SWEEP_TYPES = ("A1", "A2", "A3", "B2", "B3", "C3", "G2")


@pytest.fixture(scope="session")
def systems():
    return {label: build_root_system(label) for label in SWEEP_TYPES}


@pytest.fixture(scope="session")
def groups(systems):
    return {label: enumerate_weyl_group(rs) for label, rs in systems.items()}
