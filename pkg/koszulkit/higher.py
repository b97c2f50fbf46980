"""Higher Koszul (co)homology: the homology of HK under cup or cap with a derivation class.

``kind="cohomology"`` uses ``∂ = [e] ⌣ -`` on Koszul cohomology, moving
``(p, m)`` to ``(p + 1, shift(m, 1))``; ``kind="homology"`` uses
``∂ = [e] ⌢ -`` on Koszul homology, moving ``(p, m)`` to
``(p - 1, shift(m, 1))``. Both are computed on class coordinates by lifting
to a cycle, taking the product, checking the result is a cycle and projecting.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from koszulkit.algebra import QuadraticAlgebra
from koszulkit.bimodule import Bimodule, BimoduleKind, Side, bimodule
from koszulkit.calculus import cap, cup
from koszulkit.errors import CharacteristicError, CoefficientError, InvariantError, TruncationError
from koszulkit.koszul import (
    Cochain,
    ComplexKind,
    HomologySpace,
    KoszulElement,
    Variant,
    euler_cocycle,
    hk,
)
from koszulkit.linalg import Homology, LinearMap, Vector, homology_at

logger = logging.getLogger(__name__)


class HigherKind(str, Enum):
    HOMOLOGY = "homology"
    COHOMOLOGY = "cohomology"

    @property
    def complex_kind(self) -> ComplexKind:
        return ComplexKind.CHAIN if self is HigherKind.HOMOLOGY else ComplexKind.COCHAIN

    @property
    def step(self) -> int:
        return -1 if self is HigherKind.HOMOLOGY else 1


def _derivation(module: Bimodule, derivation: Cochain | None) -> Cochain:
    algebra = module.algebra
    if derivation is None:
        return euler_cocycle(algebra)
    if derivation.p != 1 or derivation.module.kind is not BimoduleKind.REGULAR:
        raise CoefficientError("A derivation class is an A-valued Koszul cocycle of homological weight 1.")
    if derivation != euler_cocycle(algebra) and algebra.characteristic == 2:
        raise CharacteristicError("Higher spaces of a derivation other than e_A need characteristic different from 2.")
    return derivation


def _product(kind: HigherKind, variant: Variant, derivation: Cochain, element: KoszulElement) -> KoszulElement:
    if kind is HigherKind.COHOMOLOGY:
        return cup(derivation, element, variant)  # type: ignore[arg-type]
    return cap(Side.LEFT, derivation, element, variant)  # type: ignore[arg-type]


def higher_target(module: Bimodule, kind: HigherKind | str, p: int, m: int, weight: int = 1) -> tuple[int, int]:
    return p + HigherKind(kind).step, module.shift(m, weight)


def higher_source(module: Bimodule, kind: HigherKind | str, p: int, m: int, weight: int = 1) -> tuple[int, int]:
    return p - HigherKind(kind).step, m - module.step * weight


def _space_or_empty(module: Bimodule, kind: HigherKind, variant: Variant, p: int, m: int) -> HomologySpace | None:
    if p < 0 or m < 0:
        return None
    return hk(module, kind.complex_kind, variant, p, m)


def higher_differential(
    module: Bimodule,
    kind: HigherKind | str,
    variant: Variant | str,
    p: int,
    m: int,
    derivation: Cochain | None = None,
) -> LinearMap:
    """Matrix of ``∂`` on class coordinates out of ``HK`` at ``(p, m)``."""

    kind, variant = HigherKind(kind), Variant(variant)
    derivation = _derivation(module, derivation)
    domain = module.algebra.domain
    source = _space_or_empty(module, kind, variant, p, m)
    tp, tm = higher_target(module, kind, p, m, derivation.m)
    target = _space_or_empty(module, kind, variant, tp, tm)
    source_dim = source.dim if source else 0
    target_dim = target.dim if target else 0
    if not source_dim or not target_dim:
        return LinearMap.zero(source_dim, target_dim, domain)

    columns: list[Vector] = []
    for representative in source.representatives():  # type: ignore[union-attr]
        value = _product(kind, variant, derivation, representative)
        if not target.is_cycle(value):  # type: ignore[union-attr]
            raise InvariantError(f"Higher differential produced a non-cycle at {(tp, tm)}.")
        columns.append(target.class_of(value))  # type: ignore[union-attr]
    return LinearMap.from_columns(columns, target_dim, domain)


@dataclass(frozen=True, eq=False)
class HigherSpace:
    """Higher (co)homology at one biweight, as a subquotient of ``base``."""

    base: HomologySpace | None
    kind: HigherKind
    p: int
    m: int
    homology: Homology

    @property
    def dim(self) -> int:
        return self.homology.dim

    @property
    def biweight(self) -> tuple[int, int]:
        return (self.p, self.m)

    def representative(self, index: int) -> KoszulElement:
        """A Koszul cycle whose class represents the ``index``-th higher class."""

        if self.base is None:
            raise InvariantError("Empty higher space has no representatives.")
        return self.base.lift(self.homology.representative(index))

    def representatives(self) -> list[KoszulElement]:
        return [self.representative(index) for index in range(self.dim)]

    def class_of(self, element: KoszulElement) -> Vector:
        """Higher class of a Koszul cycle whose class is a ``∂``-cycle."""

        if self.base is None:
            return {}
        return self.homology.class_of(self.base.class_of(element))

    def describe(self) -> list[str]:
        return [rep.describe() for rep in self.representatives()]


def higher_space(
    module: Bimodule,
    kind: HigherKind | str,
    variant: Variant | str,
    p: int,
    m: int,
    derivation: Cochain | None = None,
) -> HigherSpace:
    """Homology of ``(HK, ∂)`` at biweight ``(p, m)``."""

    kind, variant = HigherKind(kind), Variant(variant)

    def build() -> HigherSpace:
        chosen = _derivation(module, derivation)
        base = _space_or_empty(module, kind, variant, p, m)
        here = base.dim if base else 0
        sp, sm = higher_source(module, kind, p, m, chosen.m)
        if sp >= 0 and sm >= 0:
            d_in = higher_differential(module, kind, variant, sp, sm, chosen)
        else:
            d_in = LinearMap.zero(0, here, module.algebra.domain)
        d_out = higher_differential(module, kind, variant, p, m, chosen)
        space = HigherSpace(base, kind, p, m, homology_at(d_in, d_out))
        logger.debug(
            "Computed higher Koszul %s", kind.value,
            extra={"biweight": (p, m), "variant": variant.value, "dim": space.dim},
        )
        return space

    if derivation is not None:
        return build()
    return module.algebra.memo(("higher", module.kind, kind, variant, p, m), build)


def higher_dims(
    module: Bimodule,
    kind: HigherKind | str,
    variant: Variant | str,
    p: int,
    weights: range,
) -> dict[int, int | None]:
    """Higher dimensions over a weight range; ``None`` marks truncated cells."""

    dims: dict[int, int | None] = {}
    for m in weights:
        try:
            dims[m] = higher_space(module, kind, variant, p, m).dim
        except TruncationError:
            logger.info("Higher biweight %s needs weights beyond the truncation", (p, m))
            dims[m] = None
    return dims


@dataclass(frozen=True)
class HigherProduct:
    """A nonzero product of two higher basis classes."""

    product: str
    left: tuple[int, int, int]
    right: tuple[int, int, int]
    result: tuple[int, int]
    coords: tuple[tuple[int, str], ...]


def _collect(module: Bimodule, kind: HigherKind, variant: Variant, bound: int) -> list[HigherSpace]:
    spaces = []
    for p in range(bound + 1):
        for m in range(bound + 1):
            try:
                space = higher_space(module, kind, variant, p, m)
            except TruncationError:
                continue
            if space.dim:
                spaces.append(space)
    return spaces


def higher_product_table(
    algebra: QuadraticAlgebra, bound: int, variant: Variant | str = Variant.STANDARD
) -> list[HigherProduct]:
    """Nonzero higher cup products and higher caps between basis classes up to ``bound``.

    Cup products pair higher cohomology with itself; caps act with higher
    cohomology on higher homology from the left.
    """

    variant = Variant(variant)
    module = bimodule(algebra, BimoduleKind.REGULAR)
    cohomology = _collect(module, HigherKind.COHOMOLOGY, variant, bound)
    homology = _collect(module, HigherKind.HOMOLOGY, variant, bound)
    fmt = algebra.field.format
    table: list[HigherProduct] = []

    def record(name: str, kind: HigherKind, left: HigherSpace, right: HigherSpace) -> None:
        for i, alpha in enumerate(left.representatives()):
            for j, beta in enumerate(right.representatives()):
                if name == "cup":
                    value = cup(alpha, beta, variant)  # type: ignore[arg-type]
                else:
                    value = cap(Side.LEFT, alpha, beta, variant)  # type: ignore[arg-type]
                if value.p < 0:
                    continue
                try:
                    target = higher_space(module, kind, variant, value.p, value.m)
                except TruncationError:
                    continue
                coords = target.class_of(value)
                if coords:
                    table.append(
                        HigherProduct(
                            name,
                            (left.p, left.m, i),
                            (right.p, right.m, j),
                            (value.p, value.m),
                            tuple((index, fmt(coords[index])) for index in sorted(coords)),
                        )
                    )

    for left in cohomology:
        for right in cohomology:
            record("cup", HigherKind.COHOMOLOGY, left, right)
        for right in homology:
            record("cap", HigherKind.HOMOLOGY, left, right)
    logger.info("Higher product table of %r has %s nonzero entries", algebra, len(table))
    return table


__all__ = [
    "HigherKind",
    "HigherProduct",
    "HigherSpace",
    "higher_differential",
    "higher_dims",
    "higher_product_table",
    "higher_source",
    "higher_space",
    "higher_target",
]
