"""Exact base fields: the rationals and prime fields."""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from math import gcd
from typing import Any, Final

from sympy import isprime
from sympy.polys.domains import GF, QQ

from koszulkit import settings
from koszulkit.errors import FieldError, InvariantError, ScalarError

_MAX_MODULUS: Final = 2**63
_FIELD_PATTERN: Final = re.compile(r"^\s*(?:(?P<q>Q)|F\s*(?P<p>\d+))\s*$")
_SCALAR_PATTERN: Final = re.compile(r"^(?P<sign>[+-]?)(?P<num>\d+)(?:/(?P<den>\d+))?$")


class FieldKind(str, Enum):
    RATIONALS = "rationals"
    PRIME = "prime"


@dataclass(frozen=True)
class Field:
    """The base field k, either Q or F_p."""

    kind: FieldKind
    modulus: int = 0

    def __post_init__(self) -> None:
        if self.kind is FieldKind.PRIME:
            if self.modulus < 2 or self.modulus >= _MAX_MODULUS:
                raise FieldError(f"Modulus {self.modulus} is outside 2..2^63.")
            if not isprime(self.modulus):
                raise FieldError(f"F {self.modulus} is not a field: {self.modulus} is not prime.")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(FieldKind.PRIME, p)

    @classmethod
    def parse(cls, descriptor: str) -> "Field":
        """Build a field from "Q", "F 7" or "F7"."""

        match = _FIELD_PATTERN.match(descriptor or "")
        if not match:
            raise FieldError(f"Unknown field {descriptor!r}; expected 'Q' or 'F <prime>'.")
        if match.group("q"):
            return cls.rationals()
        return cls.prime(int(match.group("p")))

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind is FieldKind.PRIME else 0

    @cached_property
    def domain(self) -> Any:
        """The sympy domain doing the arithmetic."""

        if self.kind is FieldKind.PRIME:
            return GF(self.modulus, symmetric=False)
        return QQ

    @property
    def zero(self) -> Any:
        return self.domain.zero

    @property
    def one(self) -> Any:
        return self.domain.one

    def convert(self, value: int) -> Any:
        return self.domain(value)

    def fraction(self, numerator: int, denominator: int) -> Any:
        den = self.domain(denominator)
        if not den:
            raise ScalarError(f"Denominator {denominator} vanishes in {self}.")
        return self.domain(numerator) / den

    def can_divide_by(self, n: int) -> bool:
        return self.characteristic == 0 or n % self.characteristic != 0

    def format(self, value: Any) -> str:
        """Render a raw domain element."""

        if self.kind is FieldKind.PRIME:
            return str(int(value) % self.modulus)
        numerator, denominator = int(value.numerator), int(value.denominator)
        return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"

    def __str__(self) -> str:
        return "Q" if self.kind is FieldKind.RATIONALS else f"F {self.modulus}"


def _audit(field: Field, value: Any) -> None:
    if field.kind is FieldKind.PRIME:
        if not 0 <= int(value) < field.modulus:
            raise InvariantError(f"Residue {value} is not canonical in {field}.")
        return
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator <= 0 or gcd(numerator, denominator) != 1:
        raise InvariantError(f"Fraction {numerator}/{denominator} is not normalized.")


@dataclass(frozen=True)
class Scalar:
    """An exact element of a :class:`Field`."""

    field: Field
    value: Any

    def __post_init__(self) -> None:
        if settings.AUDIT_SCALARS:
            _audit(self.field, self.value)

    @classmethod
    def of(cls, field: Field, value: int) -> "Scalar":
        return cls(field, field.convert(value))

    @classmethod
    def parse(cls, literal: str, field: Field) -> "Scalar":
        """Parse an optional sign, an integer and an optional "/denominator"."""

        match = _SCALAR_PATTERN.match(literal.strip())
        if not match:
            raise ScalarError(f"Malformed scalar {literal!r}.")
        numerator = int(match.group("num"))
        if match.group("sign") == "-":
            numerator = -numerator
        denominator = int(match.group("den") or 1)
        if denominator == 0:
            raise ScalarError(f"Malformed scalar {literal!r}: zero denominator.")
        return cls(field, field.fraction(numerator, denominator))

    def _check(self, other: "Scalar") -> None:
        if self.field != other.field:
            raise FieldError(f"Cannot combine scalars of {self.field} and {other.field}.")

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.value + other.value)

    def __sub__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.value - other.value)

    def __mul__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        return Scalar(self.field, self.value * other.value)

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.value)

    def inv(self) -> "Scalar":
        if not self.value:
            raise ScalarError(f"Cannot invert zero in {self.field}.")
        return Scalar(self.field, self.field.one / self.value)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inv()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        self._check(other)
        return bool(self.value == other.value)

    def __hash__(self) -> int:
        return hash((self.field, self.field.format(self.value)))

    def __bool__(self) -> bool:
        return bool(self.value)

    def __str__(self) -> str:
        return self.field.format(self.value)


__all__ = ["Field", "FieldKind", "Scalar"]
