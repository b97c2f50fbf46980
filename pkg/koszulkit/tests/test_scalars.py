import pytest

from koszulkit.errors import FieldError, ScalarError
from koszulkit.scalars import Field, FieldKind, Scalar


@pytest.mark.parametrize(
    "descriptor, kind, characteristic",
    [("Q", FieldKind.RATIONALS, 0), ("F 7", FieldKind.PRIME, 7), ("F7", FieldKind.PRIME, 7), (" F 101 ", FieldKind.PRIME, 101)],
)
def test_parse_accepts_rationals_and_prime_fields(descriptor, kind, characteristic):
    field = Field.parse(descriptor)

    assert field.kind is kind
    assert field.characteristic == characteristic


@pytest.mark.parametrize("descriptor", ["R", "F 8", "F 1", "", "Q7"])
def test_parse_rejects_unknown_fields(descriptor):
    with pytest.raises(FieldError):
        Field.parse(descriptor)


def test_str_matches_presentation_syntax():
    assert str(Field.rationals()) == "Q"
    assert str(Field.prime(7)) == "F 7"


def test_rational_arithmetic_is_exact():
    q = Field.rationals()
    product = Scalar.parse("-3/4", q) * Scalar.parse("4/3", q)

    assert product == Scalar.of(q, -1)
    assert str(Scalar.parse("3/6", q)) == "1/2"
    assert str(Scalar.parse("2", q) / Scalar.parse("4", q)) == "1/2"


def test_prime_field_reduces_fractions():
    f7 = Field.prime(7)

    assert str(Scalar.parse("1/3", f7)) == "5"
    assert str(Scalar.parse("-1", f7)) == "6"
    assert Scalar.parse("1/3", f7) * Scalar.of(f7, 3) == Scalar.of(f7, 1)


def test_denominator_divisible_by_p_is_rejected():
    with pytest.raises(ScalarError):
        Scalar.parse("1/7", Field.prime(7))


@pytest.mark.parametrize("literal", ["1/0", "x", "1.5", "--2"])
def test_malformed_literals_are_rejected(literal):
    with pytest.raises(ScalarError):
        Scalar.parse(literal, Field.rationals())


def test_inverting_zero_raises():
    with pytest.raises(ScalarError):
        Scalar.of(Field.rationals(), 0).inv()


def test_mixing_fields_raises():
    with pytest.raises(FieldError):
        Scalar.of(Field.rationals(), 1) + Scalar.of(Field.prime(7), 1)


def test_can_divide_by_depends_on_characteristic():
    assert Field.rationals().can_divide_by(2)
    assert Field.prime(7).can_divide_by(2)
    assert not Field.prime(3).can_divide_by(6)
