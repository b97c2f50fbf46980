import pytest

from koszulkit.bimodule import BimoduleKind, bimodule
from koszulkit.errors import CoefficientError
from koszulkit.higher import HigherKind, higher_differential, higher_dims, higher_product_table, higher_space
from koszulkit.koszul import ComplexKind, Variant, differential, unit_cochain


def totals(module, kind, degrees, weights=range(5)):
    return tuple(sum(higher_dims(module, kind, Variant.STANDARD, p, weights).values()) for p in degrees)


def test_higher_spaces_of_the_worked_example(ex9):
    module = bimodule(ex9, BimoduleKind.REGULAR)

    assert totals(module, HigherKind.HOMOLOGY, range(5)) == (1, 0, 2, 0, 0)
    assert totals(module, HigherKind.COHOMOLOGY, range(5)) == (1, 1, 3, 0, 0)


def test_higher_cohomology_of_a_free_algebra(tensor2):
    module = bimodule(tensor2, BimoduleKind.REGULAR)

    assert [higher_space(module, HigherKind.COHOMOLOGY, Variant.STANDARD, 0, m).dim for m in range(3)] == [0, 0, 0]
    assert higher_space(module, HigherKind.COHOMOLOGY, Variant.STANDARD, 1, 0).dim == 2
    assert higher_space(module, HigherKind.COHOMOLOGY, Variant.STANDARD, 1, 1).dim == 3
    assert higher_space(module, HigherKind.COHOMOLOGY, Variant.STANDARD, 2, 1).dim == 0


def test_differential_sends_the_unit_to_the_euler_class(ex9):
    module = bimodule(ex9, BimoduleKind.REGULAR)

    assert higher_differential(module, HigherKind.COHOMOLOGY, Variant.STANDARD, 0, 0).rank() == 1


@pytest.mark.parametrize("kind", list(HigherKind))
def test_higher_differential_squares_to_zero(ex9, kind):
    module = bimodule(ex9, BimoduleKind.REGULAR)
    step = kind.step

    for p in range(1, 4):
        for m in range(3):
            first = higher_differential(module, kind, Variant.STANDARD, p, m)
            second = higher_differential(module, kind, Variant.STANDARD, p + step, m + 1)
            assert second.compose(first).is_zero()


def test_higher_products_of_the_worked_example(ex9):
    table = higher_product_table(ex9, 3)

    assert {entry.product for entry in table} == {"cup"}
    assert {(entry.left[:2], entry.right[:2]) for entry in table} == {((0, 3), (2, 0)), ((2, 0), (0, 3))}
    assert all(entry.result == (2, 3) for entry in table)


@pytest.mark.parametrize("name, n", [("sym2", 2), ("sym3", 3)])
def test_higher_spaces_of_symmetric_algebras(request, name, n):
    algebra = request.getfixturevalue(name)
    module = bimodule(algebra, BimoduleKind.REGULAR)
    weights = range(4)

    for p in range(n + 1):
        for m in weights:
            assert differential(module, ComplexKind.CHAIN, Variant.STANDARD, p, m).is_zero()
            assert differential(module, ComplexKind.COCHAIN, Variant.STANDARD, p, m).is_zero()
    assert higher_dims(module, HigherKind.HOMOLOGY, Variant.STANDARD, 0, weights) == {0: 1, 1: 0, 2: 0, 3: 0}
    for p in range(1, n + 3):
        assert set(higher_dims(module, HigherKind.HOMOLOGY, Variant.STANDARD, p, weights).values()) == {0}
    assert higher_dims(module, HigherKind.COHOMOLOGY, Variant.STANDARD, n, weights) == {0: 1, 1: 0, 2: 0, 3: 0}
    for p in range(n + 3):
        if p != n:
            assert set(higher_dims(module, HigherKind.COHOMOLOGY, Variant.STANDARD, p, weights).values()) == {0}


def test_derivation_must_have_weight_one(ex9):
    module = bimodule(ex9, BimoduleKind.REGULAR)

    with pytest.raises(CoefficientError):
        higher_space(module, HigherKind.COHOMOLOGY, Variant.STANDARD, 1, 1, derivation=unit_cochain(ex9))
