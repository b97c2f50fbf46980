import pytest

from koszulkit.algebra import QuadraticAlgebra, parse_presentation
from koszulkit.connes import (
    ant,
    bk_01,
    bk_p1,
    boundary_map,
    check_b_after_boundary,
    check_rinehart_goodwillie_weight2,
    check_top_homology,
    connes_small,
    gamma,
    sym,
    tau,
)
from koszulkit.errors import CharacteristicError, CoefficientError
from koszulkit.linalg import LinearMap, add_into
from koszulkit.scalars import Field


def test_ant_and_sym_split_the_identity(ex9):
    vector = {1: ex9.domain(3), 2: ex9.domain(-1)}
    total = ant(ex9, vector)
    add_into(total, sym(ex9, vector))

    assert total == vector


def test_tau_has_order_p(ex9):
    xy = {1: ex9.domain.one}

    assert tau(ex9, xy, 2) == {2: -ex9.domain.one}
    assert tau(ex9, tau(ex9, xy, 2), 2) == xy
    word = {5: ex9.domain.one}
    assert tau(ex9, tau(ex9, tau(ex9, word, 3), 3), 3) == word


def test_gamma_is_killed_by_one_minus_tau(ex9):
    vector = {1: ex9.domain(2), 6: ex9.domain.one}
    image = gamma(ex9, vector, 3)
    difference = dict(image)
    add_into(difference, tau(ex9, image, 3), -ex9.domain.one)

    assert difference == {}


def test_boundary_inverts_b_at_weight_one(ex9):
    composite = bk_01(ex9).compose(boundary_map(ex9, 1, 0))

    assert composite == LinearMap.identity(2, ex9.domain)


def test_top_homology_is_the_antisymmetric_part_of_r(ex9, sym2):
    assert check_top_homology(ex9)
    assert check_top_homology(sym2)


def test_homotopy_formula_at_weight_two(ex9):
    assert check_rinehart_goodwillie_weight2(ex9)


@pytest.mark.parametrize("p", [2, 3])
def test_b_after_boundary_is_multiplication_by_p(ex9, p):
    assert check_b_after_boundary(ex9, p)


def test_bk_p1_needs_p_invertible(ex9_f7):
    with pytest.raises(CharacteristicError):
        bk_p1(ex9_f7, 7)
    with pytest.raises(CoefficientError):
        bk_p1(ex9_f7, 1)


def test_ant_is_undefined_in_characteristic_two():
    algebra = QuadraticAlgebra(parse_presentation("gens x y\nrel x*x\n", Field.prime(2)), weight_limit=3)

    with pytest.raises(CharacteristicError):
        ant(algebra, {1: algebra.domain.one})


def test_connes_small_dispatch(ex9):
    one = ex9.domain.one

    assert connes_small(ex9, "tau", {1: one}) == {2: -one}
    assert connes_small(ex9, "bk_01", {0: one}) == bk_01(ex9).apply({0: one})
    with pytest.raises(CoefficientError):
        connes_small(ex9, "lie", {})
