import pytest

from koszulkit.algebra import (
    QuadraticAlgebra,
    make_rng,
    parse_presentation,
    random_presentation,
    symmetric_presentation,
)
from koszulkit.errors import FieldError, PresentationError, ScalarError, TruncationError
from koszulkit.scalars import Field


def test_finite_algebra_dimensions(ex9):
    assert ex9.dims(4) == [1, 2, 2, 1, 0]
    assert ex9.top_weight == 3
    assert ex9.is_finite


def test_infinite_algebra_dimensions(sym2, tensor2, kx):
    assert sym2.dims(4) == [1, 2, 3, 4, 5]
    assert tensor2.dims(4) == [1, 2, 4, 8, 16]
    assert kx.dims(4) == [1, 1, 1, 1, 1]
    assert not sym2.is_finite


def test_weight_limit_raises_beyond_the_computed_range():
    algebra = QuadraticAlgebra(symmetric_presentation(2, Field.rationals()), weight_limit=3)

    assert algebra.dim(3) == 4
    with pytest.raises(TruncationError):
        algebra.dim(4)


def test_products_follow_the_relations(ex9):
    # basis of A_1 is x, y; y*y equals x*y and x*x vanishes
    assert ex9.multiply({0: ex9.domain.one}, 1, {0: ex9.domain.one}, 1) == {}
    yy = ex9.multiply({1: ex9.domain.one}, 1, {1: ex9.domain.one}, 1)
    xy = ex9.multiply({0: ex9.domain.one}, 1, {1: ex9.domain.one}, 1)
    assert yy == xy != {}


def test_describe_renders_normal_words(ex9):
    texts = {ex9.describe(2, {k: ex9.domain.one}) for k in range(ex9.dim(2))}

    assert texts == {"xy", "yx"}


def test_parse_presentation_with_coefficients():
    presentation = parse_presentation("gens x y\nrel 2*x*y - 1/2*y*x  # comment\n")

    assert presentation.field == Field.rationals()
    assert presentation.format_relation(presentation.relations[0]) == "-1/2*y*x + 2*x*y"


def test_field_override_wins_over_the_field_line():
    presentation = parse_presentation("field Q\ngens x\nrel x*x\n", Field.prime(7))

    assert presentation.field == Field.prime(7)


def test_dependent_relations_are_dropped():
    presentation = parse_presentation("gens x y\nrel x*y\nrel 2*x*y\nrel x*y - x*y\n")

    assert len(presentation.relations) == 1


@pytest.mark.parametrize(
    "text, line",
    [
        ("rel x*x\n", None),
        ("gens x y\nrel x*z\n", 2),
        ("gens x y\nrel x*y*x\n", 2),
        ("gens x y\nrel x\n", 2),
        ("gens x x\n", 1),
        ("gens x\ngens y\n", 2),
        ("gens x\nrelation x*x\n", 2),
        ("gens x y\nrel x*y -\n", 2),
    ],
)
def test_malformed_presentations_name_the_line(text, line):
    with pytest.raises(PresentationError) as excinfo:
        parse_presentation(text)

    assert excinfo.value.line == line


def test_bad_field_and_scalar_are_input_errors():
    with pytest.raises(FieldError):
        parse_presentation("field F 6\ngens x\n")
    with pytest.raises(ScalarError):
        parse_presentation("field F 7\ngens x\nrel 1/7*x*x\n")


def test_to_text_parses_back(ex9):
    dual = ex9.koszul_dual().presentation

    assert parse_presentation(dual.to_text()) == dual
    assert parse_presentation(ex9.presentation.to_text()) == ex9.presentation


def test_koszul_dual_is_an_involution(ex9):
    dual = ex9.koszul_dual()

    assert dual.gens == ("x*", "y*")
    assert dual.relations.dim == 2
    assert dual.koszul_dual().relations == ex9.relations


def test_dual_of_polynomial_ring_is_exterior(sym2):
    exterior = sym2.koszul_dual()
    exterior.discover_top_weight(4)

    assert exterior.dims(3) == [1, 2, 1, 0]


def test_random_presentations_are_reproducible():
    first = random_presentation(make_rng(42), Field.rationals())
    second = random_presentation(make_rng(42), Field.rationals())

    assert first == second

