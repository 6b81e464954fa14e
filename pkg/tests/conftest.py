"""Shared fixtures; the expensive lattices are built once per session."""

from fractions import Fraction

import pytest

from zmap import evolution, painleve


@pytest.fixture(scope="session")
def stable_49():
    return evolution.evolve_stable(2 / 3, 49)


@pytest.fixture(scope="session")
def stable_40():
    return evolution.evolve_stable(2 / 3, 40)


@pytest.fixture(scope="session")
def bvp_300():
    return painleve.solve_bvp(2 / 3, 300)


@pytest.fixture(scope="session")
def oracle_20():
    return evolution.evolve_forward_naive(Fraction(2, 3), 20,
                                          precision_bits=256)
