"""Exact sparse linear algebra over a sympy field domain.

Vectors are plain ``dict[int, element]`` with no stored zeros. Matrices are
``sympy.polys.matrices.sdm.SDM`` instances whose rows index the target space.

Subspaces are kept in reduced echelon form where the leading entry of every
basis row is its largest coordinate. With words ranked lexicographically this
makes the leading word of a relation its largest word, so coset
representatives of quotients are the words avoiding all leading words.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from sympy.polys.matrices.sdm import SDM

from koszulkit import settings
from koszulkit.errors import InvariantError

logger = logging.getLogger(__name__)

Vector = dict[int, Any]


def prune(vector: Vector) -> Vector:
    return {index: value for index, value in vector.items() if value}


def add_into(target: Vector, vector: Vector, coeff: Any = None) -> None:
    """In-place ``target += coeff * vector``; zero entries are removed."""

    for index, value in vector.items():
        term = value if coeff is None else coeff * value
        total = target.get(index)
        total = term if total is None else total + term
        if total:
            target[index] = total
        else:
            target.pop(index, None)


def combine(terms: Iterable[tuple[Any, Vector]]) -> Vector:
    result: Vector = {}
    for coeff, vector in terms:
        if coeff:
            add_into(result, vector, coeff)
    return result


def scale(vector: Vector, coeff: Any) -> Vector:
    if not coeff:
        return {}
    return {index: coeff * value for index, value in vector.items()}


def _clean(rows: dict[int, dict[int, Any]]) -> dict[int, dict[int, Any]]:
    cleaned = {}
    for index, row in rows.items():
        row = prune(row)
        if row:
            cleaned[index] = row
    return cleaned


def rref(rows: Sequence[Vector], ncols: int, domain: Any) -> tuple[list[Vector], list[int]]:
    """Reduced echelon basis of the span of ``rows`` and its leading columns.

    Rows come back sorted by leading column; every leading entry is 1 and the
    leading column of a row is zero in every other row.
    """

    last = ncols - 1
    flipped: dict[int, dict[int, Any]] = {}
    for row in rows:
        row = prune(row)
        if row:
            flipped[len(flipped)] = {last - col: value for col, value in row.items()}
    if not flipped:
        return [], []

    matrix = SDM(flipped, (len(flipped), ncols), domain)
    if settings.USE_BAREISS:
        reduced, denom, pivots = matrix.rref_den()
        inverse = domain.one / denom
        ordered = [
            {col: value * inverse for col, value in reduced[i].items()} for i in range(len(pivots))
        ]
    else:
        reduced, pivots = matrix.rref()
        ordered = [dict(reduced[i]) for i in range(len(pivots))]

    basis = sorted(
        ((last - pivot, {last - col: value for col, value in row.items()}) for pivot, row in zip(pivots, ordered)),
        key=lambda item: item[0],
    )
    return [row for _, row in basis], [pivot for pivot, _ in basis]


class MatrixBuilder:
    """Accumulates sparse entries of a ``dst_dim x src_dim`` matrix."""

    def __init__(self, src_dim: int, dst_dim: int, domain: Any) -> None:
        self.src_dim = src_dim
        self.dst_dim = dst_dim
        self.domain = domain
        self._rows: dict[int, dict[int, Any]] = {}

    def add(self, row: int, col: int, value: Any) -> None:
        if not value:
            return
        entries = self._rows.setdefault(row, {})
        total = entries.get(col)
        entries[col] = value if total is None else total + value

    def add_column(self, col: int, vector: Vector, coeff: Any = None) -> None:
        for row, value in vector.items():
            self.add(row, col, value if coeff is None else coeff * value)

    def build(self) -> "LinearMap":
        return LinearMap(self.src_dim, self.dst_dim, SDM(_clean(self._rows), (self.dst_dim, self.src_dim), self.domain))


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A linear map given by its matrix; columns index the source basis."""

    src_dim: int
    dst_dim: int
    matrix: SDM

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.dst_dim, self.src_dim):
            raise InvariantError(
                f"Matrix shape {self.matrix.shape} does not match {self.src_dim} -> {self.dst_dim}."
            )

    @property
    def domain(self) -> Any:
        return self.matrix.domain

    @classmethod
    def zero(cls, src_dim: int, dst_dim: int, domain: Any) -> "LinearMap":
        return cls(src_dim, dst_dim, SDM({}, (dst_dim, src_dim), domain))

    @classmethod
    def identity(cls, dim: int, domain: Any) -> "LinearMap":
        return cls(dim, dim, SDM.eye((dim, dim), domain))

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], dst_dim: int, domain: Any) -> "LinearMap":
        builder = MatrixBuilder(len(columns), dst_dim, domain)
        for col, vector in enumerate(columns):
            builder.add_column(col, vector)
        return builder.build()

    @cached_property
    def columns(self) -> list[Vector]:
        cols: list[Vector] = [{} for _ in range(self.src_dim)]
        for row, entries in self.matrix.items():
            for col, value in entries.items():
                if value:
                    cols[col][row] = value
        return cols

    def column(self, index: int) -> Vector:
        return dict(self.columns[index])

    def apply(self, vector: Vector) -> Vector:
        result: Vector = {}
        columns = self.columns
        for index, coeff in vector.items():
            if coeff:
                add_into(result, columns[index], coeff)
        return result

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """Return ``self ∘ inner``."""

        if inner.dst_dim != self.src_dim:
            raise InvariantError(f"Cannot compose {inner.dst_dim}-dim output with {self.src_dim}-dim input.")
        product = self.matrix.matmul(inner.matrix)
        return LinearMap(inner.src_dim, self.dst_dim, SDM(_clean(dict(product)), product.shape, self.domain))

    def __add__(self, other: "LinearMap") -> "LinearMap":
        total = self.matrix.add(other.matrix)
        return LinearMap(self.src_dim, self.dst_dim, SDM(_clean(dict(total)), total.shape, self.domain))

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + other.scale(-self.domain.one)

    def scale(self, coeff: Any) -> "LinearMap":
        if not coeff:
            return LinearMap.zero(self.src_dim, self.dst_dim, self.domain)
        return LinearMap(self.src_dim, self.dst_dim, self.matrix.mul(coeff))

    def transpose(self) -> "LinearMap":
        return LinearMap(self.dst_dim, self.src_dim, self.matrix.transpose())

    def is_zero(self) -> bool:
        return not any(prune(row) for row in self.matrix.values())

    def rank(self) -> int:
        return image_basis(self).dim

    def inverse(self) -> "LinearMap":
        if self.src_dim != self.dst_dim:
            raise InvariantError("Only square maps can be inverted.")
        if self.src_dim == 0:
            return self
        if self.rank() != self.src_dim:
            raise InvariantError("Map is not invertible.")
        inverse = self.matrix.inv()
        return LinearMap(self.src_dim, self.dst_dim, SDM(_clean(dict(inverse)), inverse.shape, self.domain))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (
            self.src_dim == other.src_dim
            and self.dst_dim == other.dst_dim
            and _clean(dict(self.matrix)) == _clean(dict(other.matrix))
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of k^ambient_dim stored by its reduced echelon basis."""

    ambient_dim: int
    rows: tuple[Vector, ...]
    pivots: tuple[int, ...]
    domain: Any

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Vector], domain: Any) -> "Subspace":
        rows, pivots = rref(list(vectors), ambient_dim, domain)
        return cls(ambient_dim, tuple(rows), tuple(pivots), domain)

    @classmethod
    def zero(cls, ambient_dim: int, domain: Any) -> "Subspace":
        return cls(ambient_dim, (), (), domain)

    @classmethod
    def full(cls, ambient_dim: int, domain: Any) -> "Subspace":
        one = domain.one
        return cls(ambient_dim, tuple({i: one} for i in range(ambient_dim)), tuple(range(ambient_dim)), domain)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @cached_property
    def pivot_row(self) -> dict[int, int]:
        return {pivot: index for index, pivot in enumerate(self.pivots)}

    def reduce(self, vector: Vector) -> Vector:
        """Remainder of ``vector`` after removing its component along the basis."""

        remainder = dict(vector)
        for pivot, row in zip(self.pivots, self.rows):
            coeff = remainder.get(pivot)
            if coeff:
                add_into(remainder, row, -coeff)
        return remainder

    def contains(self, vector: Vector) -> bool:
        return not self.reduce(vector)

    def coordinates(self, vector: Vector) -> Vector:
        """Coordinates in the echelon basis; the vector must be a member."""

        coords = {i: vector[pivot] for i, pivot in enumerate(self.pivots) if vector.get(pivot)}
        check = combine((coeff, self.rows[i]) for i, coeff in coords.items())
        if prune(check) != prune(vector):
            raise InvariantError("Vector does not lie in the subspace.")
        return coords

    def element(self, coords: Vector) -> Vector:
        return combine((coeff, self.rows[i]) for i, coeff in coords.items())

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.rows)

    @cached_property
    def constraints(self) -> list[Vector]:
        """Linear forms cutting out the subspace, one per non-leading column."""

        one = self.domain.one
        forms: dict[int, Vector] = {
            col: {col: one} for col in range(self.ambient_dim) if col not in self.pivot_row
        }
        for pivot, row in zip(self.pivots, self.rows):
            for col, value in row.items():
                if col != pivot:
                    forms[col][pivot] = -value
        return list(forms.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and [prune(row) for row in self.rows] == [prune(row) for row in other.rows]
        )

    __hash__ = None  # type: ignore[assignment]


def kernel_basis(f: LinearMap) -> Subspace:
    """Basis of ``{v : f(v) = 0}`` in reduced echelon form."""

    domain = f.domain
    if f.src_dim == 0:
        return Subspace.zero(0, domain)
    rows = _clean(dict(f.matrix))
    if not rows:
        return Subspace.full(f.src_dim, domain)
    matrix = SDM(dict(enumerate(rows.values())), (len(rows), f.src_dim), domain)
    basis, _ = matrix.nullspace()
    return Subspace.span(f.src_dim, (dict(row) for row in basis.values()), domain)


def image_basis(f: LinearMap) -> Subspace:
    """Column span of ``f``."""

    return Subspace.span(f.dst_dim, f.columns, f.domain)


def intersect(subspaces: Sequence[Subspace]) -> Subspace:
    """Exact intersection: the common kernel of every constraint form."""

    if not subspaces:
        raise InvariantError("intersect needs at least one subspace.")
    ambient = subspaces[0].ambient_dim
    domain = subspaces[0].domain
    if any(space.ambient_dim != ambient for space in subspaces):
        raise InvariantError("Cannot intersect subspaces of different ambient spaces.")
    if len(subspaces) == 1:
        return subspaces[0]
    if any(space.dim == 0 for space in subspaces):
        return Subspace.zero(ambient, domain)

    constraints = [form for space in subspaces for form in space.constraints]
    if not constraints:
        return Subspace.full(ambient, domain)
    stacked = LinearMap(
        ambient,
        len(constraints),
        SDM(_clean(dict(enumerate(constraints))), (len(constraints), ambient), domain),
    )
    return kernel_basis(stacked)


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    """``k^ambient_dim / sub`` with the non-leading unit vectors as representatives."""

    ambient_dim: int
    sub: Subspace

    @cached_property
    def reps(self) -> tuple[int, ...]:
        leading = self.sub.pivot_row
        return tuple(col for col in range(self.ambient_dim) if col not in leading)

    @cached_property
    def rep_index(self) -> dict[int, int]:
        return {col: index for index, col in enumerate(self.reps)}

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.sub.dim

    def project_unit(self, col: int) -> Vector:
        """Quotient coordinates of the unit vector ``e_col``."""

        rep_index = self.rep_index
        if col in rep_index:
            return {rep_index[col]: self.sub.domain.one}
        row = self.sub.rows[self.sub.pivot_row[col]]
        return {rep_index[other]: -value for other, value in row.items() if other != col}

    def project(self, vector: Vector) -> Vector:
        result: Vector = {}
        for col, coeff in vector.items():
            if coeff:
                add_into(result, self.project_unit(col), coeff)
        return result

    def section(self, coords: Vector) -> Vector:
        return {self.reps[index]: value for index, value in coords.items() if value}

    def project_matrix(self) -> LinearMap:
        return LinearMap.from_columns(
            [self.project_unit(col) for col in range(self.ambient_dim)], self.dim, self.sub.domain
        )

    def section_matrix(self) -> LinearMap:
        one = self.sub.domain.one
        return LinearMap.from_columns([{col: one} for col in self.reps], self.ambient_dim, self.sub.domain)


def quotient(ambient_dim: int, sub: Subspace) -> QuotientSpace:
    if sub.ambient_dim != ambient_dim:
        raise InvariantError(f"Subspace lives in dimension {sub.ambient_dim}, not {ambient_dim}.")
    return QuotientSpace(ambient_dim, sub)


@dataclass(frozen=True, eq=False)
class Homology:
    """``ker(d_out) / im(d_in)`` realized inside cycle coordinates."""

    cycles: Subspace
    boundaries: Subspace
    classes: QuotientSpace

    @property
    def dim(self) -> int:
        return self.classes.dim

    @property
    def ambient_dim(self) -> int:
        return self.cycles.ambient_dim

    def representative(self, index: int) -> Vector:
        """A cycle representing the ``index``-th basis class."""

        cycle_coords = self.classes.section({index: self.cycles.domain.one})
        return self.cycles.element(cycle_coords)

    def representatives(self) -> list[Vector]:
        return [self.representative(index) for index in range(self.dim)]

    def lift(self, coords: Vector) -> Vector:
        return self.cycles.element(self.classes.section(coords))

    def is_cycle(self, vector: Vector) -> bool:
        return self.cycles.contains(vector)

    def class_of(self, vector: Vector) -> Vector:
        """Class coordinates of a cycle."""

        if not self.cycles.contains(vector):
            raise InvariantError("Element is not a cycle.")
        return self.classes.project(self.cycles.coordinates(vector))

    def is_boundary(self, vector: Vector) -> bool:
        return not self.class_of(vector)


def homology_at(d_in: LinearMap, d_out: LinearMap) -> Homology:
    """Homology at the middle of ``src --d_in--> mid --d_out--> dst``."""

    if d_in.dst_dim != d_out.src_dim:
        raise InvariantError(f"Differentials do not meet: {d_in.dst_dim} != {d_out.src_dim}.")
    if d_in.src_dim and d_out.dst_dim and not d_out.compose(d_in).is_zero():
        raise InvariantError("Composition of consecutive differentials is not zero.")

    cycles = kernel_basis(d_out)
    if cycles.ambient_dim != d_out.src_dim:
        cycles = Subspace.zero(d_out.src_dim, d_out.domain)
    boundary_coords = [cycles.coordinates(column) for column in d_in.columns if column]
    boundaries = Subspace.span(cycles.dim, boundary_coords, d_out.domain)
    return Homology(cycles, boundaries, quotient(cycles.dim, boundaries))


__all__ = [
    "Homology",
    "LinearMap",
    "MatrixBuilder",
    "QuotientSpace",
    "Subspace",
    "Vector",
    "add_into",
    "combine",
    "homology_at",
    "image_basis",
    "intersect",
    "kernel_basis",
    "prune",
    "quotient",
    "rref",
    "scale",
]
