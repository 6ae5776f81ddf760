"""Shared fixtures for noncanon tests."""
from __future__ import annotations

import pytest

from noncanon.fixtures import FixtureBundle


@pytest.fixture(scope="session")
def builtins() -> FixtureBundle:
    """Return a bundle shared by the whole session; built-ins are cached in it."""
    return FixtureBundle()


@pytest.fixture(scope="session")
def finset2(builtins):
    """Return the coproduct choice of the FinSet skeleton on 0..2."""
    return builtins.coproducts("finset:2")


@pytest.fixture(scope="session")
def f_dbl(builtins):
    """Return the doubling functor on FinSet_2 with its shuffle comparison."""
    return builtins.monoidal_functor("f_dbl:2")


@pytest.fixture(scope="session")
def beta_swap(builtins):
    """Return the copy-swapping automorphism of the doubling functor."""
    return builtins.transformation("beta_swap:2")


@pytest.fixture(scope="session")
def f_sq(builtins):
    """Return the squaring functor on FinSet_2 with its canonical comparison."""
    return builtins.monoidal_functor("f_sq:2")


@pytest.fixture(scope="session")
def delooping3(builtins):
    """Return ℤ/3 as a one-object monoidal category."""
    return builtins.monoidal_structure("delooping:3")
