"""Quadratic algebras ``A = T(V)/(R)``: presentations, graded pieces and products."""
from __future__ import annotations

import logging
import re
import threading
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Final, TypeVar

import numpy as np
from sympy.polys.matrices.sdm import SDM

from koszulkit import settings
from koszulkit.errors import (
    FieldError,
    PresentationError,
    ResourceLimitError,
    ScalarError,
    TruncationError,
)
from koszulkit.linalg import LinearMap, QuotientSpace, Subspace, Vector, add_into, kernel_basis, quotient
from koszulkit.scalars import Field, Scalar
from koszulkit.tensor import embed_block, rank_word, render_combination, render_word

logger = logging.getLogger(__name__)

T = TypeVar("T")

_GENERATOR_NAME: Final = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*\**$")
_IDENTIFIER: Final = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER: Final = re.compile(r"\d+(?:/\d*)?")
_SIGNS: Final = re.compile(r"([+-])")
DEFAULT_NAMES: Final = ("x", "y", "z", "w", "u", "v")


def default_names(n: int) -> tuple[str, ...]:
    if n <= len(DEFAULT_NAMES):
        return DEFAULT_NAMES[:n]
    return tuple(f"x{index}" for index in range(1, n + 1))


@dataclass(frozen=True)
class Presentation:
    """Generators and linearly independent quadratic relations over a field."""

    field: Field
    gens: tuple[str, ...]
    relations: tuple[Vector, ...]

    @property
    def n(self) -> int:
        return len(self.gens)

    @cached_property
    def relation_space(self) -> Subspace:
        return Subspace.span(self.n * self.n, self.relations, self.field.domain)

    @classmethod
    def build(
        cls,
        field: Field,
        gens: Sequence[str],
        vectors: Iterable[Vector],
        lines: Sequence[int] | None = None,
    ) -> "Presentation":
        """Keep the relations that enlarge the span; warn about the others."""

        n = len(gens)
        kept: list[Vector] = []
        span = Subspace.zero(n * n, field.domain)
        for position, vector in enumerate(vectors):
            vector = {rank: value for rank, value in vector.items() if value}
            line = lines[position] if lines else None
            if not vector:
                logger.warning("Dropping zero relation", extra={"line": line})
                continue
            if span.contains(vector):
                logger.warning("Dropping dependent relation", extra={"line": line})
                continue
            kept.append(vector)
            span = Subspace.span(n * n, kept, field.domain)
        return cls(field, tuple(gens), tuple(kept))

    def _separator(self) -> str:
        return " * " if any(name.endswith("*") for name in self.gens) else "*"

    def format_relation(self, vector: Vector) -> str:
        separator = self._separator()
        terms = []
        for rank in sorted(vector, reverse=True):
            first, second = divmod(rank, self.n)
            monomial = f"{self.gens[first]}{separator}{self.gens[second]}"
            coeff = self.field.format(vector[rank])
            if coeff.lstrip("-") != "1":
                magnitude = coeff.lstrip("-")
                monomial = f"{magnitude}{separator}{monomial}"
                coeff = "-1" if coeff.startswith("-") else "1"
            terms.append((coeff, monomial))
        return render_combination(terms)

    def to_text(self) -> str:
        lines = [f"field {self.field}", "gens " + " ".join(self.gens)]
        lines.extend(f"rel {self.format_relation(vector)}" for vector in self.relations)
        return "\n".join(lines) + "\n"


def _parse_term(term: str, index: dict[str, int], field: Field, line: int) -> tuple[Any, int]:
    coeff = field.one
    letters: list[int] = []
    position = 0
    while True:
        if position >= len(term):
            raise PresentationError(f"empty factor in term {term!r}", line)
        number = _NUMBER.match(term, position)
        if number:
            try:
                coeff = coeff * Scalar.parse(number.group(0), field).value
            except ScalarError as exc:
                raise ScalarError(f"line {line}: {exc}") from exc
            position = number.end()
        else:
            identifier = _IDENTIFIER.match(term, position)
            if not identifier:
                raise PresentationError(f"unexpected character {term[position]!r} in term {term!r}", line)
            stem = identifier.group(0)
            end = identifier.end()
            stars = len(term[end:]) - len(term[end:].lstrip("*"))
            chosen = None
            for extra in range(stars, -1, -1):
                name = stem + "*" * extra
                if name in index and (extra < stars or end + extra == len(term)):
                    chosen = name
                    break
            if chosen is None:
                raise PresentationError(f"unknown generator {stem!r}", line)
            letters.append(index[chosen])
            position = end + len(chosen) - len(stem)
        if position == len(term):
            break
        if term[position] != "*":
            raise PresentationError(f"expected '*' after {term[:position]!r}", line)
        position += 1

    if len(letters) != 2:
        raise PresentationError(
            f"term {term!r} is not quadratic: it has {len(letters)} generator(s)", line
        )
    return coeff, letters[0] * len(index) + letters[1]


def _parse_relation(body: str, index: dict[str, int], field: Field, line: int) -> Vector:
    text = "".join(body.split())
    if not text:
        raise PresentationError("empty relation", line)
    pieces = _SIGNS.split(text)
    signed: list[tuple[int, str]] = []
    if pieces[0]:
        signed.append((1, pieces[0]))
    for position in range(1, len(pieces), 2):
        sign, term = pieces[position], pieces[position + 1]
        if not term:
            raise PresentationError(f"dangling {sign!r} in relation", line)
        signed.append((-1 if sign == "-" else 1, term))

    vector: Vector = {}
    for sign, term in signed:
        coeff, rank = _parse_term(term, index, field, line)
        add_into(vector, {rank: coeff if sign > 0 else -coeff})
    return vector


def parse_presentation(text: str, field: Field | None = None) -> Presentation:
    """Parse the line-oriented presentation format.

    ``field`` overrides a ``field`` line in the text; without either the
    rationals are used.
    """

    declared: Field | None = None
    gens: tuple[str, ...] | None = None
    relation_lines: list[tuple[int, str]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword, rest = parts[0], parts[1] if len(parts) > 1 else ""
        if keyword == "field":
            if declared is not None:
                raise PresentationError("duplicate 'field' line", number)
            try:
                declared = Field.parse(rest)
            except FieldError as exc:
                raise FieldError(f"line {number}: {exc}") from exc
        elif keyword == "gens":
            if gens is not None:
                raise PresentationError("duplicate 'gens' line", number)
            names = rest.split()
            if not names:
                raise PresentationError("empty generator list", number)
            for name in names:
                if not _GENERATOR_NAME.match(name):
                    raise PresentationError(f"invalid generator name {name!r}", number)
            if len(set(names)) != len(names):
                raise PresentationError("duplicate generator name", number)
            gens = tuple(names)
        elif keyword == "rel":
            relation_lines.append((number, rest))
        else:
            raise PresentationError(f"unknown directive {keyword!r}", number)

    if gens is None:
        raise PresentationError("missing 'gens' line")
    active = field or declared or Field.rationals()
    index = {name: position for position, name in enumerate(gens)}
    vectors = [_parse_relation(body, index, active, number) for number, body in relation_lines]
    return Presentation.build(active, gens, vectors, [number for number, _ in relation_lines])


def load_presentation(path: str | Path, field: Field | None = None) -> Presentation:
    with Path(path).open(encoding="utf-8") as handle:
        return parse_presentation(handle.read(), field)


@dataclass(frozen=True, eq=False)
class GradedPiece:
    """``A_m`` as a quotient of ``V^{⊗m}``; ``space`` is ``None`` for pieces known to vanish."""

    weight: int
    ambient_dim: int
    space: QuotientSpace | None

    @property
    def dim(self) -> int:
        return 0 if self.space is None else self.space.dim

    @property
    def reps(self) -> tuple[int, ...]:
        return () if self.space is None else self.space.reps

    def project_word(self, rank: int) -> Vector:
        return {} if self.space is None else self.space.project_unit(rank)

    def project(self, vector: Vector) -> Vector:
        return {} if self.space is None else self.space.project(vector)


class QuadraticAlgebra:
    """A quadratic algebra with lazily computed, cached graded pieces.

    ``weight_limit`` bounds the pieces that may be computed; asking for a
    heavier piece raises :class:`TruncationError` unless the algebra is known
    to vanish there.
    """

    def __init__(self, presentation: Presentation, weight_limit: int | None = None, label: str = "") -> None:
        self.presentation = presentation
        self.field = presentation.field
        self.domain = presentation.field.domain
        self.gens = presentation.gens
        self.n = presentation.n
        self.weight_limit = weight_limit
        self.label = label
        self._lock = threading.RLock()
        self._memo: dict[Any, Any] = {}
        self._ideals: dict[int, Subspace] = {}
        self._pieces: dict[int, GradedPiece] = {}
        self._products: dict[tuple[int, int, int, int], Vector] = {}
        self._top_weight: int | None = None

    def __repr__(self) -> str:
        return f"QuadraticAlgebra({self.label or ','.join(self.gens)}, {self.field})"

    @property
    def relations(self) -> Subspace:
        return self.presentation.relation_space

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    @property
    def top_weight(self) -> int | None:
        """Largest weight with ``A_m != 0`` once known, else ``None``."""

        return self._top_weight

    @property
    def is_finite(self) -> bool:
        return self._top_weight is not None

    def memo(self, key: Any, factory: Callable[[], T]) -> T:
        with self._lock:
            if key not in self._memo:
                self._memo[key] = factory()
            return self._memo[key]

    def require_columns(self, size: int, what: str) -> None:
        if size > settings.RESOURCE_CAP:
            logger.warning("Refusing %s of dimension %s", what, size, extra={"cap": settings.RESOURCE_CAP})
            raise ResourceLimitError(
                f"{what} has dimension {size}, above the cap {settings.RESOURCE_CAP}; "
                "raise KOSZULKIT_RESOURCE_CAP or lower the bounds."
            )

    def _ideal(self, m: int) -> Subspace:
        with self._lock:
            if m in self._ideals:
                return self._ideals[m]
            ambient = self.n**m
            if m < 2:
                ideal = Subspace.zero(ambient, self.domain)
            elif m == 2:
                ideal = self.relations
            else:
                self.require_columns(ambient, f"V^{m}")
                previous = embed_block(self._ideal(m - 1), self.n, 1, 0)
                fresh = embed_block(self.relations, self.n, 0, m - 2)
                ideal = Subspace.span(ambient, [*previous.rows, *fresh.rows], self.domain)
            self._ideals[m] = ideal
            return ideal

    def _piece(self, m: int) -> GradedPiece:
        with self._lock:
            if m in self._pieces:
                return self._pieces[m]
            if m < 0:
                return GradedPiece(m, 0, None)
            if self._top_weight is not None and m > self._top_weight:
                return GradedPiece(m, self.n**m, None)
            if m > 0:
                self._piece(m - 1)
                if self._top_weight is not None:
                    return GradedPiece(m, self.n**m, None)
            ambient = self.n**m
            piece = GradedPiece(m, ambient, quotient(ambient, self._ideal(m)))
            self._pieces[m] = piece
            if piece.dim == 0 and self._top_weight is None:
                self._top_weight = m - 1
                logger.info("Algebra %r is finite with top weight %s", self, m - 1)
            return piece

    def component(self, m: int) -> GradedPiece:
        """The graded piece ``A_m``, respecting the weight limit."""

        if m < 0 or (self._top_weight is not None and m > self._top_weight):
            return self._piece(m)
        if self.weight_limit is not None and m > self.weight_limit and m not in self._pieces:
            raise TruncationError(f"A_{m} lies beyond the weight limit {self.weight_limit}.")
        return self._piece(m)

    def dim(self, m: int) -> int:
        return self.component(m).dim

    def discover_top_weight(self, search: int | None = None) -> int | None:
        """Compute pieces up to ``search`` (ignoring the weight limit) looking for a zero one."""

        search = settings.SEARCH_WEIGHT if search is None else search
        for m in range(search + 1):
            if self._top_weight is not None:
                break
            if self.n**m > settings.RESOURCE_CAP:
                break
            self._piece(m)
        return self._top_weight

    def product(self, m: int, i: int, n: int, j: int) -> Vector:
        """Product of basis element ``i`` of ``A_m`` and basis element ``j`` of ``A_n``."""

        key = (m, i, n, j)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        if self._top_weight is not None and m + n > self._top_weight:
            result: Vector = {}
        else:
            left = self.component(m).reps[i]
            right = self.component(n).reps[j]
            result = self.component(m + n).project_word(left * self.n**n + right)
        with self._lock:
            self._products[key] = result
        return result

    def multiply(self, a: Vector, m: int, b: Vector, n: int) -> Vector:
        result: Vector = {}
        for i, x in a.items():
            for j, y in b.items():
                if x and y:
                    add_into(result, self.product(m, i, n, j), x * y)
        return result

    def unit(self) -> Vector:
        return {0: self.domain.one}

    def word_vector(self, m: int, k: int) -> Vector:
        """The normal word representing basis element ``k`` of ``A_m``."""

        return {self.component(m).reps[k]: self.domain.one}

    def basis_word(self, m: int, k: int) -> tuple[int, ...]:
        return rank_word(self.component(m).reps[k], self.n, m)

    def describe(self, m: int, coords: Vector) -> str:
        fmt = self.field.format
        terms = [
            (fmt(coords[k]), render_word(self.basis_word(m, k), self.gens))
            for k in sorted(coords)
            if coords[k]
        ]
        return render_combination(terms)

    def global_basis(self) -> list[tuple[int, int]]:
        """``(weight, index)`` pairs of a weight-ordered basis of a finite algebra."""

        top = self.discover_top_weight()
        if top is None:
            raise TruncationError(f"{self!r} is not known to be finite-dimensional.")
        return [(m, k) for m in range(top + 1) for k in range(self.dim(m))]

    def dims(self, bound: int) -> list[int]:
        return [self.dim(m) for m in range(bound + 1)]

    def koszul_dual(self) -> "QuadraticAlgebra":
        """``A^! = T(V*)/(R^⊥)``, generators named with a trailing ``*``."""

        def build() -> QuadraticAlgebra:
            annihilator = relation_annihilator(self.relations, self.n, self.domain)
            presentation = Presentation(
                self.field,
                tuple(f"{name}*" for name in self.gens),
                tuple(dict(row) for row in annihilator.rows),
            )
            label = f"{self.label}!" if self.label else ""
            return QuadraticAlgebra(presentation, weight_limit=self.weight_limit, label=label)

        return self.memo("koszul_dual", build)


def relation_annihilator(relations: Subspace, n: int, domain: Any) -> Subspace:
    """``R^⊥`` for the pairing of words with identical ranks, without signs."""

    size = n * n
    if relations.dim == 0:
        return Subspace.full(size, domain)
    matrix = SDM(dict(enumerate(dict(row) for row in relations.rows)), (relations.dim, size), domain)
    return kernel_basis(LinearMap(size, relations.dim, matrix))


def symmetric_presentation(n: int, field: Field) -> Presentation:
    """``S(V)``: the commutators ``x_j x_i - x_i x_j`` for ``i < j``."""

    one = field.one
    vectors = [
        {j * n + i: one, i * n + j: -one} for i in range(n) for j in range(i + 1, n)
    ]
    return Presentation.build(field, default_names(n), vectors)


def tensor_presentation(n: int, field: Field) -> Presentation:
    return Presentation(field, default_names(n), ())


def square_family(alpha: int, beta: int, field: Field) -> Presentation:
    """``k<x,y>/(x^2, y^2 - alpha xy - beta yx)``; Koszul exactly when alpha = beta."""

    one = field.one
    vectors = [{0: one}, {3: one, 1: -field.convert(alpha), 2: -field.convert(beta)}]
    return Presentation.build(field, ("x", "y"), vectors)


def mixed_family(alpha: int, beta: int, field: Field) -> Presentation:
    """``k<x,y>/(yx - alpha x^2, xy - beta x^2)``; Koszul exactly when alpha = beta."""

    one = field.one
    vectors = [{2: one, 0: -field.convert(alpha)}, {1: one, 0: -field.convert(beta)}]
    return Presentation.build(field, ("x", "y"), vectors)


def random_presentation(
    rng: np.random.Generator, field: Field, n_gens: int = 2, n_rels: int = 2
) -> Presentation:
    """Relations with coefficients drawn uniformly from -2..2."""

    size = n_gens * n_gens
    draws = rng.integers(-2, 3, size=(n_rels, size))
    vectors = [
        {rank: field.convert(int(value)) for rank, value in enumerate(row) if value}
        for row in draws
    ]
    return Presentation.build(field, default_names(n_gens), vectors)


def make_rng(seed: int | None = None) -> np.random.Generator:
    return np.random.default_rng(settings.RANDOM_SEED if seed is None else seed)


__all__ = [
    "GradedPiece",
    "Presentation",
    "QuadraticAlgebra",
    "default_names",
    "load_presentation",
    "make_rng",
    "mixed_family",
    "parse_presentation",
    "random_presentation",
    "relation_annihilator",
    "square_family",
    "symmetric_presentation",
    "tensor_presentation",
]
