from itertools import product

import pytest
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from koszulkit.errors import CharacteristicError, TruncationError
from koszulkit.hochschild import (
    HigherHochschildKind,
    check_chain_identities,
    commutator_quotient_dim,
    comparison,
    hh,
    hochschild_complex,
    higher_hochschild,
    rg_check,
)
from koszulkit.koszul import ComplexKind

# Normal words of k<x,y>/(x^2, y^2 - xy) and their nonzero products; every coefficient is 1.
BASIS = ("1", "x", "y", "xy", "yx", "xyx")
PRODUCTS = {
    ("x", "y"): "xy",
    ("y", "x"): "yx",
    ("y", "y"): "xy",
    ("x", "yx"): "xyx",
    ("y", "yx"): "xyx",
    ("xy", "x"): "xyx",
}
AUGMENTATION = BASIS[1:]


def multiply(a, b):
    if a == "1":
        return b
    if b == "1":
        return a
    return PRODUCTS.get((a, b))


def dense_cochain_differential(p):
    """Normalized bar differential ``Hom(Abar^p, A) -> Hom(Abar^(p+1), A)`` over the rationals."""

    entries = {}
    size = len(BASIS)

    def add(word, out, source_word, source_out, coeff):
        row = (word, BASIS.index(out))
        col = (source_word, BASIS.index(source_out))
        entries[(row, col)] = entries.get((row, col), 0) + coeff

    for word in product(AUGMENTATION, repeat=p + 1):
        for k in BASIS:
            left = multiply(word[0], k)
            if left:
                add(word, left, word[1:], k, 1)
            right = multiply(k, word[-1])
            if right:
                add(word, right, word[:-1], k, (-1) ** (p + 1))
            for i in range(p):
                merged = multiply(word[i], word[i + 1])
                if merged:
                    add(word, k, word[:i] + (merged,) + word[i + 2 :], k, (-1) ** (i + 1))
    rows = {row: index for index, row in enumerate(product(product(AUGMENTATION, repeat=p + 1), range(size)))}
    cols = {col: index for index, col in enumerate(product(product(AUGMENTATION, repeat=p), range(size)))}
    matrix = {}
    for (row, col), value in entries.items():
        if value:
            matrix.setdefault(rows[row], {})[cols[col]] = QQ(value)
    return DomainMatrix(matrix, (len(rows), len(cols)), QQ)


def dense_hh_cochain(p):
    inner = dense_cochain_differential(p - 1).rank() if p else 0
    outer = dense_cochain_differential(p).rank()
    return len(AUGMENTATION) ** p * len(BASIS) - outer - inner


def test_hochschild_totals_of_the_worked_example(ex9):
    complex_ = hochschild_complex(ex9)

    assert complex_.hh_total(ComplexKind.CHAIN, 3) == 3
    assert complex_.hh_total(ComplexKind.COCHAIN, 2) == 3
    assert sum(hh(ex9, ComplexKind.CHAIN, 0).values()) == 4


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_cochain_totals_match_a_dense_bar_complex(ex9, p):
    assert hochschild_complex(ex9).hh_total(ComplexKind.COCHAIN, p) == dense_hh_cochain(p)


def test_degree_zero_homology_is_the_commutator_quotient(ex9):
    assert commutator_quotient_dim(ex9) == 4
    assert hochschild_complex(ex9).hh_total(ComplexKind.CHAIN, 0) == commutator_quotient_dim(ex9)


def test_chain_comparison(ex9):
    second = comparison(ex9, ComplexKind.CHAIN, 2)
    third = comparison(ex9, ComplexKind.CHAIN, 3)

    assert second.isomorphism
    assert third.injective and not third.surjective
    assert third.rank == 1


def test_cochain_comparison(ex9):
    second = comparison(ex9, ComplexKind.COCHAIN, 2)

    assert second.injective and not second.surjective
    assert comparison(ex9, ComplexKind.COCHAIN, 3).rank == 1


@pytest.mark.parametrize("p", [1, 2])
def test_operator_identities_hold_on_chains(ex9, p):
    assert all(check_chain_identities(ex9, p).values())


@pytest.mark.parametrize("p", [0, 1, 2])
def test_homotopy_formula_holds(ex9, p):
    assert rg_check(ex9, p).holds


def test_homotopy_formula_needs_rationals(ex9_f7):
    with pytest.raises(CharacteristicError):
        rg_check(ex9_f7, 1)


@pytest.mark.parametrize("kind", [HigherHochschildKind.HOMOLOGY, HigherHochschildKind.DE_RHAM])
def test_higher_hochschild_chain_spaces(ex9, kind):
    totals = tuple(sum(higher_hochschild(ex9, kind, p).values()) for p in range(3))

    assert totals == (1, 0, 0)


def test_bar_complex_needs_a_finite_algebra(kx):
    with pytest.raises(TruncationError):
        hochschild_complex(kx)
