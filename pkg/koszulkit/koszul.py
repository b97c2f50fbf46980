"""Koszul complexes: the spaces W_p, chain and cochain differentials and their homology.

A p-chain of weight m with coefficients in M lives in ``M_m ⊗ W_p`` and a
p-cochain in ``Hom(W_p, M_m)``; both use the basis index ``i * dim W_p + j``
with i running over ``M_m`` and j over ``W_p``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from koszulkit.algebra import QuadraticAlgebra
from koszulkit.bimodule import Bimodule, BimoduleKind, Side, bimodule
from koszulkit.errors import CoefficientError, InvariantError, TruncationError
from koszulkit.linalg import Homology, LinearMap, MatrixBuilder, Subspace, Vector, add_into, homology_at, intersect
from koszulkit.tensor import SplitTable, embed_block, render_vector, split

logger = logging.getLogger(__name__)


class ComplexKind(str, Enum):
    CHAIN = "chain"
    COCHAIN = "cochain"


class Variant(str, Enum):
    STANDARD = "standard"
    TILDE = "tilde"
    BAR = "bar"


def w_space(algebra: QuadraticAlgebra, p: int) -> Subspace:
    """``W_p``, computed as ``(V ⊗ W_{p-1}) ∩ (W_{p-1} ⊗ V)`` from p = 3 on."""

    if p < 0:
        return Subspace.zero(0, algebra.domain)

    def build() -> Subspace:
        n = algebra.n
        if p == 0:
            return Subspace.full(1, algebra.domain)
        if p == 1:
            return Subspace.full(n, algebra.domain)
        if p == 2:
            return algebra.relations
        previous = w_space(algebra, p - 1)
        if previous.dim == 0:
            return Subspace.zero(n**p, algebra.domain)
        algebra.require_columns(n**p, f"V^{p}")
        space = intersect([embed_block(previous, n, 1, 0), embed_block(previous, n, 0, 1)])
        logger.debug("W_%s has dimension %s", p, space.dim)
        return space

    return algebra.memo(("W", p), build)


def w_space_definitional(algebra: QuadraticAlgebra, p: int) -> Subspace:
    """``W_p`` as the intersection of every ``V^{⊗i} ⊗ R ⊗ V^{⊗j}``."""

    if p < 2:
        return w_space(algebra, p)
    n = algebra.n
    blocks = [embed_block(algebra.relations, n, i, p - 2 - i) for i in range(p - 1)]
    return intersect(blocks)


def w_dim(algebra: QuadraticAlgebra, p: int) -> int:
    return w_space(algebra, p).dim if p >= 0 else 0


def split_table(algebra: QuadraticAlgebra, total: int, left: int) -> SplitTable:
    """``W_total -> W_left ⊗ W_{total-left}``, memoized per pair."""

    def build() -> SplitTable:
        right = total - left
        return split(w_space(algebra, total), w_space(algebra, left), w_space(algebra, right), algebra.n, right)

    return algebra.memo(("split", total, left), build)


def factorize_left(algebra: QuadraticAlgebra, p: int) -> SplitTable:
    """``W_p`` in the basis ``x_a ⊗ w`` of ``V ⊗ W_{p-1}``."""

    return split_table(algebra, p, 1)


def factorize_right(algebra: QuadraticAlgebra, p: int) -> SplitTable:
    """``W_p`` in the basis ``w ⊗ x_a`` of ``W_{p-1} ⊗ V``."""

    return split_table(algebra, p, p - 1)


def render_w(algebra: QuadraticAlgebra, p: int, j: int) -> str:
    row = w_space(algebra, p).rows[j]
    return render_vector(row, algebra.n, p, algebra.gens, algebra.field.format)


def _wrap(text: str) -> str:
    return f"({text})" if " " in text else text


@dataclass(frozen=True, eq=False)
class KoszulElement:
    """A biweight-homogeneous chain or cochain with coefficients in ``module``."""

    module: Bimodule
    p: int
    m: int
    coords: Vector = field(default_factory=dict)

    kind = ComplexKind.CHAIN

    @property
    def algebra(self) -> QuadraticAlgebra:
        return self.module.algebra

    @property
    def w_dim(self) -> int:
        return w_dim(self.algebra, self.p)

    @property
    def biweight(self) -> tuple[int, int]:
        return (self.p, self.m)

    def _like(self, coords: Vector) -> "KoszulElement":
        return type(self)(self.module, self.p, self.m, coords)

    def _check(self, other: "KoszulElement") -> None:
        if type(other) is not type(self) or other.biweight != self.biweight or other.module is not self.module:
            raise CoefficientError(f"Cannot combine {self!r} with {other!r}.")

    def __add__(self, other: "KoszulElement") -> "KoszulElement":
        self._check(other)
        result = dict(self.coords)
        add_into(result, other.coords)
        return self._like(result)

    def __sub__(self, other: "KoszulElement") -> "KoszulElement":
        self._check(other)
        result = dict(self.coords)
        add_into(result, other.coords, -self.algebra.domain.one)
        return self._like(result)

    def scale(self, coeff: Any) -> "KoszulElement":
        return self._like({index: coeff * value for index, value in self.coords.items() if coeff * value})

    def __neg__(self) -> "KoszulElement":
        return self.scale(-self.algebra.domain.one)

    def is_zero(self) -> bool:
        return not any(self.coords.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KoszulElement):
            return NotImplemented
        return (
            type(other) is type(self)
            and other.biweight == self.biweight
            and other.module.kind is self.module.kind
            and {k: v for k, v in self.coords.items() if v} == {k: v for k, v in other.coords.items() if v}
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(p={self.p}, m={self.m}, {self.module.kind.value}, {len(self.coords)} terms)"

    def values(self) -> dict[int, Vector]:
        """Coefficient vector in ``M_m`` attached to each W basis index."""

        width = self.w_dim
        grouped: dict[int, Vector] = {}
        for index, value in self.coords.items():
            if value:
                i, j = divmod(index, width)
                grouped.setdefault(j, {})[i] = value
        return grouped

    @classmethod
    def from_values(cls, module: Bimodule, p: int, m: int, values: dict[int, Vector]) -> "KoszulElement":
        width = w_dim(module.algebra, p)
        coords: Vector = {}
        for j, vector in values.items():
            for i, value in vector.items():
                if value:
                    coords[i * width + j] = value
        return cls(module, p, m, coords)

    def describe(self) -> str:
        pieces = []
        for j, vector in sorted(self.values().items()):
            value = _wrap(self.module.describe(self.m, vector))
            word = _wrap(render_w(self.algebra, self.p, j))
            pieces.append(f"{value}⊗{word}" if self.kind is ComplexKind.CHAIN else f"{word}* ↦ {value}")
        return " + ".join(pieces) if pieces else "0"


class Chain(KoszulElement):
    kind = ComplexKind.CHAIN


class Cochain(KoszulElement):
    kind = ComplexKind.COCHAIN


def element_class(kind: ComplexKind) -> type[KoszulElement]:
    return Chain if ComplexKind(kind) is ComplexKind.CHAIN else Cochain


def space_dim(module: Bimodule, p: int, m: int) -> int:
    if p < 0 or m < 0:
        return 0
    width = w_dim(module.algebra, p)
    if width == 0:
        return 0
    size = module.dim(m) * width
    module.algebra.require_columns(size, f"Koszul space at biweight {(p, m)}")
    return size


def target_biweight(module: Bimodule, kind: ComplexKind, p: int, m: int) -> tuple[int, int]:
    step = -1 if ComplexKind(kind) is ComplexKind.CHAIN else 1
    return p + step, module.shift(m, 1)


def source_biweight(module: Bimodule, kind: ComplexKind, p: int, m: int) -> tuple[int, int]:
    """Biweight whose differential lands at ``(p, m)``."""

    step = 1 if ComplexKind(kind) is ComplexKind.CHAIN else -1
    return p + step, m - module.step


def _sign(variant: Variant, p: int, m: int) -> int:
    exponent = m if variant is Variant.TILDE else p
    return -1 if exponent % 2 else 1


def differential(module: Bimodule, kind: ComplexKind | str, variant: Variant | str, p: int, m: int) -> LinearMap:
    """Matrix of b_K (or its tilde version) out of biweight ``(p, m)``."""

    kind, variant = ComplexKind(kind), Variant(variant)
    if variant is Variant.BAR:
        raise CoefficientError("The unsigned variant only exists for cup products.")
    algebra = module.algebra
    key = ("d", module.kind, kind, variant, p, m)
    return algebra.memo(key, lambda: _build_differential(module, kind, variant, p, m))


def _build_differential(module: Bimodule, kind: ComplexKind, variant: Variant, p: int, m: int) -> LinearMap:
    algebra = module.algebra
    domain = algebra.domain
    tp, tm = target_biweight(module, kind, p, m)
    source = space_dim(module, p, m)
    target = space_dim(module, tp, tm)
    builder = MatrixBuilder(source, target, domain)
    if not source or not target:
        return builder.build()

    sign = domain(_sign(variant, p, m))
    coefficient_dim = module.dim(m)
    width, target_width = w_dim(algebra, p), w_dim(algebra, tp)

    if kind is ComplexKind.CHAIN:
        # u⊗x_1..x_p -> u.x_1⊗x_2..x_p + s x_p.u⊗x_1..x_{p-1}
        for j in range(width):
            for a, l, c in factorize_left(algebra, p)[j]:
                for i in range(coefficient_dim):
                    for i2, value in module.act(Side.RIGHT, 1, a, m, i).items():
                        builder.add(i2 * target_width + l, i * width + j, c * value)
            for l, a, c in factorize_right(algebra, p)[j]:
                for i in range(coefficient_dim):
                    for i2, value in module.act(Side.LEFT, 1, a, m, i).items():
                        builder.add(i2 * target_width + l, i * width + j, sign * c * value)
    else:
        # (bf)(x_1..x_{p+1}) = f(x_1..x_p).x_{p+1} - s x_1.f(x_2..x_{p+1})
        for big in range(target_width):
            for k, a, c in factorize_right(algebra, tp)[big]:
                for i in range(coefficient_dim):
                    for i2, value in module.act(Side.RIGHT, 1, a, m, i).items():
                        builder.add(i2 * target_width + big, i * width + k, c * value)
            for a, k, c in factorize_left(algebra, tp)[big]:
                for i in range(coefficient_dim):
                    for i2, value in module.act(Side.LEFT, 1, a, m, i).items():
                        builder.add(i2 * target_width + big, i * width + k, -sign * c * value)
    return builder.build()


def apply_differential(element: KoszulElement, variant: Variant | str = Variant.STANDARD) -> KoszulElement:
    d = differential(element.module, element.kind, variant, element.p, element.m)
    tp, tm = target_biweight(element.module, element.kind, element.p, element.m)
    return type(element)(element.module, tp, tm, d.apply(element.coords))


@dataclass(frozen=True, eq=False)
class HomologySpace:
    """Koszul (co)homology at one biweight, with its cycle representatives."""

    module: Bimodule
    kind: ComplexKind
    variant: Variant
    p: int
    m: int
    homology: Homology

    @property
    def dim(self) -> int:
        return self.homology.dim

    @property
    def biweight(self) -> tuple[int, int]:
        return (self.p, self.m)

    def element(self, coords: Vector) -> KoszulElement:
        return element_class(self.kind)(self.module, self.p, self.m, coords)

    def representative(self, index: int) -> KoszulElement:
        return self.element(self.homology.representative(index))

    def representatives(self) -> list[KoszulElement]:
        return [self.representative(index) for index in range(self.dim)]

    def lift(self, coords: Vector) -> KoszulElement:
        return self.element(self.homology.lift(coords))

    def _coords_of(self, element: KoszulElement) -> Vector:
        if element.biweight != self.biweight or element.kind is not self.kind:
            raise InvariantError(f"{element!r} does not live at {self.kind.value} biweight {self.biweight}.")
        return element.coords

    def is_cycle(self, element: KoszulElement) -> bool:
        return self.homology.is_cycle(self._coords_of(element))

    def class_of(self, element: KoszulElement) -> Vector:
        """Class coordinates of a cycle; raises :class:`InvariantError` otherwise."""

        return self.homology.class_of(self._coords_of(element))

    def contains_class(self, element: KoszulElement) -> bool:
        return bool(self.class_of(element))

    def describe(self) -> list[str]:
        return [rep.describe() for rep in self.representatives()]


def _neighbours(module: Bimodule, kind: ComplexKind, variant: Variant, p: int, m: int) -> tuple[LinearMap, LinearMap]:
    domain = module.algebra.domain
    here = space_dim(module, p, m)
    sp, sm = source_biweight(module, kind, p, m)
    if sp < 0 or sm < 0:
        d_in = LinearMap.zero(0, here, domain)
    else:
        d_in = differential(module, kind, variant, sp, sm)
    d_out = differential(module, kind, variant, p, m)
    return d_in, d_out


def hk(
    module: Bimodule,
    kind: ComplexKind | str,
    variant: Variant | str,
    p: int,
    m: int,
) -> HomologySpace:
    """Koszul homology (chains) or cohomology (cochains) at biweight ``(p, m)``."""

    kind, variant = ComplexKind(kind), Variant(variant)
    key = ("hk", module.kind, kind, variant, p, m)

    def build() -> HomologySpace:
        d_in, d_out = _neighbours(module, kind, variant, p, m)
        space = HomologySpace(module, kind, variant, p, m, homology_at(d_in, d_out))
        logger.debug(
            "Computed Koszul %s", kind.value,
            extra={"biweight": (p, m), "variant": variant.value, "dim": space.dim},
        )
        return space

    return module.algebra.memo(key, build)


def hk_total(
    module: Bimodule,
    kind: ComplexKind | str,
    variant: Variant | str,
    p: int,
    weights: range,
) -> dict[int, int | None]:
    """Dimensions over a weight range; ``None`` marks cells beyond the truncation."""

    dims: dict[int, int | None] = {}
    for m in weights:
        try:
            dims[m] = hk(module, kind, variant, p, m).dim
        except TruncationError:
            logger.info("Biweight %s needs weights beyond the truncation", (p, m))
            dims[m] = None
    return dims


def euler_cocycle(algebra: QuadraticAlgebra) -> Cochain:
    """``e_A``: the inclusion ``V -> A_1`` as a cochain of biweight (1, 1)."""

    one = algebra.domain.one
    n = algebra.n
    return Cochain(bimodule(algebra, BimoduleKind.REGULAR), 1, 1, {a * n + a: one for a in range(n)})


def unit_cochain(algebra: QuadraticAlgebra) -> Cochain:
    return Cochain(bimodule(algebra, BimoduleKind.REGULAR), 0, 0, {0: algebra.domain.one})


def left_differential(algebra: QuadraticAlgebra, p: int, m: int) -> LinearMap:
    """``d_l(a ⊗ x_1..x_p) = a x_1 ⊗ x_2..x_p`` out of ``A_m ⊗ W_p``."""

    module = bimodule(algebra, BimoduleKind.REGULAR)

    def build() -> LinearMap:
        source = space_dim(module, p, m)
        target = space_dim(module, p - 1, m + 1)
        builder = MatrixBuilder(source, target, algebra.domain)
        if source and target:
            width, target_width = w_dim(algebra, p), w_dim(algebra, p - 1)
            for j in range(width):
                for a, l, c in factorize_left(algebra, p)[j]:
                    for i in range(algebra.dim(m)):
                        for i2, value in algebra.product(m, i, 1, a).items():
                            builder.add(i2 * target_width + l, i * width + j, c * value)
        return builder.build()

    return algebra.memo(("left", p, m), build)


def left_homology(algebra: QuadraticAlgebra, p: int, m: int) -> HomologySpace:
    """``H_p(K_l(A))`` at coefficient weight m."""

    module = bimodule(algebra, BimoduleKind.REGULAR)

    def build() -> HomologySpace:
        here = space_dim(module, p, m)
        d_in = left_differential(algebra, p + 1, m - 1) if m >= 1 else LinearMap.zero(0, here, algebra.domain)
        d_out = left_differential(algebra, p, m)
        return HomologySpace(module, ComplexKind.CHAIN, Variant.STANDARD, p, m, homology_at(d_in, d_out))

    return algebra.memo(("left-homology", p, m), build)


def left_koszul_homology(algebra: QuadraticAlgebra, p: int, weight_bound: int) -> dict[int, int]:
    return {m: left_homology(algebra, p, m).dim for m in range(weight_bound + 1)}


@dataclass(frozen=True)
class KoszulityReport:
    bound: int
    failures: tuple[tuple[int, int], ...]

    @property
    def is_koszul(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        if self.is_koszul:
            return f"Koszul up to degree {self.bound}"
        return f"NOT Koszul: H_{self.failures[0][0]}(K_ℓ) ≠ 0"


def koszulity(algebra: QuadraticAlgebra, bound: int) -> KoszulityReport:
    """Check exactness of ``K_l(A)`` in degrees 1..bound at coefficient weights 0..bound.

    Weight ``bound`` reaches into ``A_{bound+1}``, so the algebra must be
    truncated no lower than that.
    """

    if bound < 2:
        raise CoefficientError("The Koszulity check needs a degree bound of at least 2.")
    failures = [
        (p, m)
        for p in range(1, bound + 1)
        for m in range(bound + 1)
        if left_homology(algebra, p, m).dim
    ]
    report = KoszulityReport(bound, tuple(failures))
    logger.info("Koszulity of %r: %s", algebra, report.verdict)
    return report


def random_element(
    module: Bimodule, kind: ComplexKind | str, p: int, m: int, rng: np.random.Generator
) -> KoszulElement:
    """A chain or cochain with coordinates drawn from -2..2."""

    size = space_dim(module, p, m)
    draws = rng.integers(-2, 3, size=size) if size else []
    domain = module.algebra.domain
    coords = {index: domain(int(value)) for index, value in enumerate(draws) if value}
    return element_class(ComplexKind(kind))(module, p, m, coords)


__all__ = [
    "Chain",
    "Cochain",
    "ComplexKind",
    "HomologySpace",
    "KoszulElement",
    "KoszulityReport",
    "Variant",
    "apply_differential",
    "differential",
    "element_class",
    "euler_cocycle",
    "factorize_left",
    "factorize_right",
    "hk",
    "hk_total",
    "koszulity",
    "left_differential",
    "left_homology",
    "left_koszul_homology",
    "random_element",
    "render_w",
    "space_dim",
    "split_table",
    "unit_cochain",
    "w_dim",
    "w_space",
    "w_space_definitional",
]
