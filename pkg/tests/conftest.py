"""Shared fixtures: the small complexes are expensive enough to build once."""

import pytest

from curvsets.homology import boundary_matrices
from curvsets.state_complex import build_state_complex


@pytest.fixture(scope="session")
def st3():
    return build_state_complex(3, check_merge_classes=True)


@pytest.fixture(scope="session")
def st4():
    return build_state_complex(4, check_merge_classes=True)


@pytest.fixture(scope="session")
def st5():
    return build_state_complex(5)


@pytest.fixture(scope="session")
def chain4(st4):
    return boundary_matrices(st4)


@pytest.fixture(scope="session")
def chain5(st5):
    return boundary_matrices(st5)
