import pytest

from koszulkit.algebra import QuadraticAlgebra
from koszulkit.catalogue import get_entry
from koszulkit.scalars import Field


def catalogue_algebra(name, field=None, weight_limit=6):
    algebra = get_entry(name).algebra(Field.parse(field) if field else None, weight_limit=weight_limit)
    algebra.discover_top_weight(weight_limit)
    return algebra


@pytest.fixture
def ex9() -> QuadraticAlgebra:
    """Finite of dimension 6 and not Koszul; the workhorse of the suite."""
    return catalogue_algebra("ex9", weight_limit=8)


@pytest.fixture
def ex9_f7() -> QuadraticAlgebra:
    return catalogue_algebra("ex9", "F 7", weight_limit=8)


@pytest.fixture
def sym2() -> QuadraticAlgebra:
    return catalogue_algebra("sym2", weight_limit=6)


@pytest.fixture
def sym3() -> QuadraticAlgebra:
    return catalogue_algebra("sym3", weight_limit=6)


@pytest.fixture
def tensor2() -> QuadraticAlgebra:
    return catalogue_algebra("tensor2", weight_limit=5)


@pytest.fixture
def kx() -> QuadraticAlgebra:
    return catalogue_algebra("kx", weight_limit=6)


@pytest.fixture
def dual_numbers() -> QuadraticAlgebra:
    return catalogue_algebra("dual_numbers", weight_limit=6)

