import pytest

from koszulkit.algebra import QuadraticAlgebra, mixed_family, square_family
from koszulkit.bimodule import BimoduleKind, bimodule
from koszulkit.catalogue import get_entry
from koszulkit.errors import CoefficientError
from koszulkit.koszul import (
    Chain,
    ComplexKind,
    Variant,
    apply_differential,
    differential,
    euler_cocycle,
    hk,
    hk_total,
    koszulity,
    left_koszul_homology,
    target_biweight,
    w_dim,
    w_space,
    w_space_definitional,
)
from koszulkit.linalg import add_into
from koszulkit.scalars import Field
from koszulkit.tensor import word_rank


def totals(module, kind, variant, degrees, weights=range(5)):
    return tuple(sum(hk_total(module, kind, variant, p, weights).values()) for p in degrees)


def test_w_dimensions(ex9, sym2, tensor2):
    assert [w_dim(ex9, p) for p in range(7)] == [1, 2, 2, 1, 1, 1, 1]
    assert [w_dim(sym2, p) for p in range(4)] == [1, 2, 1, 0]
    assert w_dim(tensor2, 2) == 0


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_recursive_w_matches_the_definition(ex9, p):
    assert w_space(ex9, p) == w_space_definitional(ex9, p)


def test_koszul_homology_of_the_worked_example(ex9):
    module = bimodule(ex9, BimoduleKind.REGULAR)

    assert totals(module, ComplexKind.CHAIN, Variant.STANDARD, range(7)) == (4, 3, 3, 1, 1, 1, 1)
    assert totals(module, ComplexKind.COCHAIN, Variant.STANDARD, range(7)) == (2, 2, 4, 1, 1, 1, 1)


def chain_of(algebra, p, m, terms):
    """Sum of ``a ⊗ w`` over (word of A_m, vector of V^p in W_p) pairs."""

    space = w_space(algebra, p)
    coords = {}
    for word, vector in terms:
        a = algebra.component(m).project_word(word_rank(word, algebra.n))
        w = space.coordinates(vector)
        for i, x in a.items():
            for j, y in w.items():
                add_into(coords, {i * space.dim + j: x * y})
    return Chain(bimodule(algebra, BimoduleKind.REGULAR), p, m, coords)


def test_degree_two_homology_is_spanned_by_the_known_cycles(ex9):
    one = ex9.domain.one
    x, y = 0, 1
    x_squared = {word_rank((x, x), 2): one}
    y_squared_minus_xy = {word_rank((y, y), 2): one, word_rank((x, y), 2): -one}
    cycles = {
        1: chain_of(ex9, 2, 1, [((x,), x_squared)]),
        2: chain_of(
            ex9, 2, 2, [((y, x), x_squared), ((x, y), y_squared_minus_xy), ((y, x), y_squared_minus_xy)]
        ),
        3: chain_of(ex9, 2, 3, [((x, y, x), y_squared_minus_xy)]),
    }
    module = bimodule(ex9, BimoduleKind.REGULAR)

    for m, cycle in cycles.items():
        space = hk(module, ComplexKind.CHAIN, Variant.STANDARD, 2, m)
        assert apply_differential(cycle).is_zero()
        assert space.dim == 1
        assert space.contains_class(cycle)
    assert hk(module, ComplexKind.CHAIN, Variant.STANDARD, 2, 0).dim == 0


def test_euler_class_is_a_degree_one_generator(ex9):
    space = hk(bimodule(ex9, BimoduleKind.REGULAR), ComplexKind.COCHAIN, Variant.STANDARD, 1, 1)

    assert space.contains_class(euler_cocycle(ex9))


@pytest.mark.parametrize("kind", list(ComplexKind))
def test_trivial_coefficients_give_w(ex9, kind):
    trivial = bimodule(ex9, BimoduleKind.TRIVIAL)

    for p in range(5):
        assert hk(trivial, kind, Variant.STANDARD, p, 0).dim == w_dim(ex9, p)
        assert differential(trivial, kind, Variant.STANDARD, p, 0).is_zero()


@pytest.mark.parametrize("kind", list(ComplexKind))
@pytest.mark.parametrize("variant", [Variant.STANDARD, Variant.TILDE])
def test_differential_squares_to_zero(ex9, kind, variant):
    for module in (bimodule(ex9, BimoduleKind.REGULAR), bimodule(ex9, BimoduleKind.DUAL)):
        for p in range(4):
            for m in range(4):
                tp, tm = target_biweight(module, kind, p, m)
                if tp < 0 or tm < 0:
                    continue
                first = differential(module, kind, variant, p, m)
                second = differential(module, kind, variant, tp, tm)
                assert second.compose(first).is_zero()


def test_standard_differentials_vanish_on_polynomial_rings(sym2):
    module = bimodule(sym2, BimoduleKind.REGULAR)

    for p in range(3):
        for m in range(4):
            assert differential(module, ComplexKind.CHAIN, Variant.STANDARD, p, m).is_zero()
            assert differential(module, ComplexKind.COCHAIN, Variant.STANDARD, p, m).is_zero()


def test_bar_variant_has_no_differential(ex9):
    with pytest.raises(CoefficientError):
        differential(bimodule(ex9, BimoduleKind.REGULAR), ComplexKind.CHAIN, Variant.BAR, 1, 0)


def test_euler_cocycle_is_a_cocycle(ex9):
    assert apply_differential(euler_cocycle(ex9)).is_zero()


def test_representatives_are_cycles(ex9):
    module = bimodule(ex9, BimoduleKind.REGULAR)

    for p in range(4):
        for m in range(4):
            space = hk(module, ComplexKind.CHAIN, Variant.STANDARD, p, m)
            assert all(space.is_cycle(rep) for rep in space.representatives())


def test_unit_class_description(ex9):
    space = hk(bimodule(ex9, BimoduleKind.REGULAR), ComplexKind.CHAIN, Variant.STANDARD, 0, 0)

    assert space.describe() == ["1⊗1"]


def test_truncated_cells_are_reported_as_unknown(sym2):
    module = bimodule(sym2, BimoduleKind.REGULAR)
    dims = hk_total(module, ComplexKind.CHAIN, Variant.STANDARD, 1, range(8))

    assert dims[6] is None
    assert dims[7] is None
    assert all(dims[m] is not None for m in range(6))


def test_left_koszul_complex_of_the_worked_example(ex9):
    assert left_koszul_homology(ex9, 0, 4) == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0}
    assert [sum(left_koszul_homology(ex9, p, 4).values()) for p in range(5)] == [1, 0, 2, 0, 0]


def test_worked_example_is_not_koszul(ex9):
    report = koszulity(ex9, 6)

    assert not report.is_koszul
    assert report.failures[0][0] == 2
    assert report.verdict == "NOT Koszul: H_2(K_ℓ) ≠ 0"


@pytest.mark.parametrize(
    "name, bound", [("xy_x2", 8), ("sym2", 8), ("tensor2", 8), ("kx", 8), ("sym3", 5)]
)
def test_catalogue_koszul_algebras(name, bound):
    algebra = QuadraticAlgebra(get_entry(name).presentation(), weight_limit=bound + 1)
    algebra.discover_top_weight(bound + 1)
    report = koszulity(algebra, bound)

    assert report.is_koszul
    assert report.verdict == f"Koszul up to degree {bound}"


def test_small_bound_reaches_the_first_failure(ex9):
    report = koszulity(ex9, 3)

    assert not report.is_koszul
    assert report.failures[0] == (2, 2)
    assert all(m <= 3 for _, m in report.failures)


def family_algebra(builder, alpha, beta, bound):
    algebra = QuadraticAlgebra(builder(alpha, beta, Field.rationals()), weight_limit=bound + 1)
    algebra.discover_top_weight(bound + 1)
    return algebra


def test_square_family_with_equal_parameters_is_koszul():
    assert koszulity(family_algebra(square_family, 1, 1, 6), 6).is_koszul


def test_square_family_contains_the_worked_example(ex9):
    algebra = family_algebra(square_family, 1, 0, 4)

    assert algebra.relations == ex9.relations
    assert koszulity(algebra, 3).failures[0] == (2, 2)


@pytest.mark.parametrize("alpha, beta, koszul", [(1, 1, True), (2, 2, True), (1, 0, False)])
def test_mixed_family(alpha, beta, koszul):
    assert koszulity(family_algebra(mixed_family, alpha, beta, 5), 5).is_koszul is koszul


def test_negative_weights_have_no_w_space(ex9):
    assert w_space(ex9, -1).dim == 0
    assert w_space(ex9, -3).ambient_dim == 0
    assert w_dim(ex9, -1) == 0


def test_koszulity_needs_degree_two(ex9):
    with pytest.raises(CoefficientError):
        koszulity(ex9, 1)
