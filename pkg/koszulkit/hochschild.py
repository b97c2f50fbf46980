"""Hochschild (co)homology of a finite-dimensional quadratic algebra through the normalized bar complex.

Elements of ``A ⊗ Ā^{⊗p}`` and of ``Hom(Ā^{⊗p}, A)`` share one encoding: the
pair ``(g; a_1..a_p)`` of global basis indices is stored as
``g * (D-1)^p + sum (a_i - 1) (D-1)^{p-i}`` where D is the dimension of A and
index 0 is the unit. For a cochain the pair stands for the map sending
``a_1..a_p`` to ``g`` and every other tensor to 0. Chains are split by total
weight, cochains by internal weight ``|g| - sum |a_i|``.
"""
from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import Any

from koszulkit.algebra import QuadraticAlgebra
from koszulkit.bimodule import BimoduleKind, bimodule
from koszulkit.errors import CharacteristicError, CoefficientError, InvariantError
from koszulkit.koszul import ComplexKind, HomologySpace, Variant, hk, w_space
from koszulkit.linalg import Homology, LinearMap, MatrixBuilder, Vector, add_into, homology_at
from koszulkit.tensor import rank_word

logger = logging.getLogger(__name__)


class BarOperator(str, Enum):
    DIFFERENTIAL = "b"
    EULER = "e_D"
    CONNES = "B"
    LIE = "L_D"
    EULER_CUP = "D_cup"


class HigherHochschildKind(str, Enum):
    HOMOLOGY = "homology"
    DE_RHAM = "de_rham"
    COHOMOLOGY = "cohomology"


@dataclass(frozen=True, eq=False)
class HochschildSpace:
    """Hochschild (co)homology in one degree and one weight."""

    kind: ComplexKind
    p: int
    weight: int
    indices: tuple[int, ...]
    homology: Homology

    @property
    def dim(self) -> int:
        return self.homology.dim

    def _local(self, vector: Vector) -> Vector:
        position = {index: local for local, index in enumerate(self.indices)}
        local: Vector = {}
        for index, value in vector.items():
            if not value:
                continue
            if index not in position:
                raise InvariantError(f"Bar element leaves weight {self.weight} in degree {self.p}.")
            local[position[index]] = value
        return local

    def representative(self, index: int) -> Vector:
        return {self.indices[local]: value for local, value in self.homology.representative(index).items()}

    def representatives(self) -> list[Vector]:
        return [self.representative(index) for index in range(self.dim)]

    def is_cycle(self, vector: Vector) -> bool:
        return self.homology.is_cycle(self._local(vector))

    def class_of(self, vector: Vector) -> Vector:
        return self.homology.class_of(self._local(vector))


@dataclass(frozen=True)
class ComparisonResult:
    """Rank of the map induced by χ̃ (chains) or χ* (cochains) in one degree."""

    kind: ComplexKind
    p: int
    source_dim: int
    target_dim: int
    rank: int

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective


@dataclass(frozen=True)
class RinehartGoodwillieResult:
    """Residual of ``e_D B + B e_D - L_D`` on the classes of ``HH_p``, per weight."""

    p: int
    residuals: dict[int, LinearMap]

    @property
    def holds(self) -> bool:
        return all(residual.is_zero() for residual in self.residuals.values())


class HochschildComplex:
    """Bases, differentials and graded operators of the normalized bar complex."""

    def __init__(self, algebra: QuadraticAlgebra) -> None:
        self.algebra = algebra
        self.domain = algebra.domain
        self.basis = algebra.global_basis()
        self.size = len(self.basis)
        self.bar = self.size - 1
        self.weights = [m for m, _ in self.basis]
        self.offsets: dict[int, int] = {}
        for index, (m, _) in enumerate(self.basis):
            self.offsets.setdefault(m, index)
        self._products: dict[tuple[int, int], Vector] = {}
        self._factor_pairs: dict[int, list[tuple[int, int, Any]]] | None = None

    def __repr__(self) -> str:
        return f"HochschildComplex({self.algebra!r}, dim={self.size})"

    def memo(self, key: Any, factory: Callable[[], Any]) -> Any:
        return self.algebra.memo(("hochschild", *key), factory)

    def require_degree(self, p: int) -> None:
        self.algebra.require_columns(self.size * self.bar ** (p + 1), f"Bar complex in degree {p + 1}")

    def mult(self, g: int, h: int) -> Vector:
        key = (g, h)
        if key not in self._products:
            m, i = self.basis[g]
            n, j = self.basis[h]
            product = self.algebra.product(m, i, n, j)
            self._products[key] = {self.offsets[m + n] + k: value for k, value in product.items()} if product else {}
        return self._products[key]

    def factor_pairs(self, e: int) -> list[tuple[int, int, Any]]:
        """Pairs ``(c, c', v)`` of positive-weight basis elements with ``v`` the e-coefficient of ``c c'``."""

        if self._factor_pairs is None:
            table: dict[int, list[tuple[int, int, Any]]] = {}
            for c in range(1, self.size):
                for c2 in range(1, self.size):
                    for target, value in self.mult(c, c2).items():
                        table.setdefault(target, []).append((c, c2, value))
            self._factor_pairs = table
        return self._factor_pairs.get(e, [])

    def encode(self, g: int, letters: tuple[int, ...]) -> int:
        index = g
        for letter in letters:
            index = index * self.bar + (letter - 1)
        return index

    def decode(self, index: int, p: int) -> tuple[int, tuple[int, ...]]:
        letters = [0] * p
        for position in range(p - 1, -1, -1):
            index, digit = divmod(index, self.bar)
            letters[position] = digit + 1
        return index, tuple(letters)

    def weight_of(self, kind: ComplexKind, index: int, p: int) -> int:
        g, letters = self.decode(index, p)
        inner = sum(self.weights[letter] for letter in letters)
        return self.weights[g] + inner if kind is ComplexKind.CHAIN else self.weights[g] - inner

    def weight_classes(self, kind: ComplexKind | str, p: int) -> dict[int, tuple[int, ...]]:
        """Basis indices of degree p grouped by weight."""

        kind = ComplexKind(kind)

        def build() -> dict[int, tuple[int, ...]]:
            if p < 0:
                return {}
            self.algebra.require_columns(self.size * self.bar**p, f"Bar complex in degree {p}")
            groups: dict[int, list[int]] = {}
            for index in range(self.size * self.bar**p):
                groups.setdefault(self.weight_of(kind, index, p), []).append(index)
            return {weight: tuple(indices) for weight, indices in sorted(groups.items())}

        return self.memo(("classes", kind, p), build)

    def indices(self, kind: ComplexKind, p: int, weight: int) -> tuple[int, ...]:
        return self.weight_classes(kind, p).get(weight, ())

    def _sign(self, exponent: int) -> Any:
        return -self.domain.one if exponent % 2 else self.domain.one

    def image(self, operator: BarOperator, kind: ComplexKind, p: int, index: int) -> Vector:
        """Image of one basis element under a bar-level operator."""

        g, letters = self.decode(index, p)
        result: Vector = {}
        if operator is BarOperator.DIFFERENTIAL and kind is ComplexKind.CHAIN:
            if p == 0:
                return result
            for h, value in self.mult(g, letters[0]).items():
                add_into(result, {self.encode(h, letters[1:]): value})
            for i in range(p - 1):
                for e, value in self.mult(letters[i], letters[i + 1]).items():
                    merged = letters[:i] + (e,) + letters[i + 2:]
                    add_into(result, {self.encode(g, merged): value}, self._sign(i + 1))
            for h, value in self.mult(letters[-1], g).items():
                add_into(result, {self.encode(h, letters[:-1]): value}, self._sign(p))
        elif operator is BarOperator.DIFFERENTIAL:
            # (bF)(c_1..c_{p+1}) = F(c_1..c_p)c_{p+1} - (-1)^p c_1F(c_2..) - (-1)^p sum (-1)^i F(..c_ic_{i+1}..)
            twist = -self._sign(p)
            for c in range(1, self.size):
                for h, value in self.mult(g, c).items():
                    add_into(result, {self.encode(h, letters + (c,)): value})
                for h, value in self.mult(c, g).items():
                    add_into(result, {self.encode(h, (c,) + letters): value}, twist)
            for i, letter in enumerate(letters):
                for c, c2, value in self.factor_pairs(letter):
                    split = letters[:i] + (c, c2) + letters[i + 1:]
                    add_into(result, {self.encode(g, split): value}, twist * self._sign(i + 1))
        elif operator is BarOperator.EULER:
            if p == 0:
                return result
            last = letters[-1]
            coeff = self._sign(p - 1) * self.domain(self.weights[last])
            for h, value in self.mult(last, g).items():
                add_into(result, {self.encode(h, letters[:-1]): value}, coeff)
        elif operator is BarOperator.CONNES:
            if g == 0:
                return result
            for i in range(p + 1):
                rotated = letters[p - i:] + (g,) + letters[: p - i]
                add_into(result, {self.encode(0, rotated): self.domain.one}, self._sign(p * i))
        elif operator is BarOperator.LIE:
            weight = self.weight_of(kind, index, p)
            if weight:
                result[index] = self.domain(weight)
        elif operator is BarOperator.EULER_CUP:
            # (D ⌣ F)(c_1..c_{p+1}) = (-1)^p |c_1| c_1 F(c_2..c_{p+1})
            for c in range(1, self.size):
                coeff = self._sign(p) * self.domain(self.weights[c])
                for h, value in self.mult(c, g).items():
                    add_into(result, {self.encode(h, (c,) + letters): value}, coeff)
        return result

    def apply(self, operator: BarOperator | str, kind: ComplexKind | str, p: int, vector: Vector) -> Vector:
        operator, kind = BarOperator(operator), ComplexKind(kind)
        result: Vector = {}
        for index, value in vector.items():
            if value:
                add_into(result, self.image(operator, kind, p, index), value)
        return result

    def operator(self, operator: BarOperator | str, kind: ComplexKind | str, p: int, weight: int) -> LinearMap:
        """Matrix of an operator out of degree p at one weight, on the local weight bases."""

        operator, kind = BarOperator(operator), ComplexKind(kind)
        target_degree = p + _degree_shift(operator, kind)

        def build() -> LinearMap:
            source = self.indices(kind, p, weight)
            target = self.indices(kind, target_degree, weight)
            position = {index: local for local, index in enumerate(target)}
            builder = MatrixBuilder(len(source), len(target), self.domain)
            for column, index in enumerate(source):
                for target_index, value in self.image(operator, kind, p, index).items():
                    if target_index not in position:
                        raise InvariantError(f"{operator.value} does not preserve weight {weight}.")
                    builder.add(position[target_index], column, value)
            return builder.build()

        if target_degree < 0:
            return LinearMap.zero(len(self.indices(kind, p, weight)), 0, self.domain)
        return self.memo(("op", operator, kind, p, weight), build)

    def bar_differential(self, kind: ComplexKind | str, p: int, weight: int) -> LinearMap:
        return self.operator(BarOperator.DIFFERENTIAL, kind, p, weight)

    def hh(self, kind: ComplexKind | str, p: int, weight: int) -> HochschildSpace:
        """``HH_p`` (chains) or ``HH^p`` (cochains) at one weight."""

        kind = ComplexKind(kind)

        def build() -> HochschildSpace:
            self.require_degree(p)
            here = self.indices(kind, p, weight)
            source = p + 1 if kind is ComplexKind.CHAIN else p - 1
            if source >= 0:
                d_in = self.bar_differential(kind, source, weight)
            else:
                d_in = LinearMap.zero(0, len(here), self.domain)
            d_out = self.bar_differential(kind, p, weight)
            space = HochschildSpace(kind, p, weight, here, homology_at(d_in, d_out))
            logger.debug("Computed Hochschild %s", kind.value, extra={"degree": p, "weight": weight, "dim": space.dim})
            return space

        return self.memo(("hh", kind, p, weight), build)

    def hh_dims(self, kind: ComplexKind | str, p: int) -> dict[int, int]:
        kind = ComplexKind(kind)
        dims = {weight: self.hh(kind, p, weight).dim for weight in self.weight_classes(kind, p)}
        return {weight: dim for weight, dim in dims.items() if dim}

    def hh_total(self, kind: ComplexKind | str, p: int) -> int:
        return sum(self.hh_dims(kind, p).values())


def _degree_shift(operator: BarOperator, kind: ComplexKind) -> int:
    if operator is BarOperator.DIFFERENTIAL:
        return -1 if kind is ComplexKind.CHAIN else 1
    if operator is BarOperator.EULER:
        return -1
    if operator is BarOperator.LIE:
        return 0
    return 1


def hochschild_complex(algebra: QuadraticAlgebra) -> HochschildComplex:
    """The cached bar complex of a finite-dimensional algebra."""

    return algebra.memo("hochschild-complex", lambda: HochschildComplex(algebra))


def hh(algebra: QuadraticAlgebra, kind: ComplexKind | str, p: int) -> dict[int, int]:
    """Nonzero Hochschild dimensions in degree p, by weight."""

    return hochschild_complex(algebra).hh_dims(kind, p)


def _class_map(source: Any, target: Any, op: Callable[[Any], Any], domain: Any) -> LinearMap:
    """Induced map on homology: lift each basis class, apply, check for a cycle, project."""

    columns = []
    for representative in source.representatives():
        image = op(representative)
        if not target.is_cycle(image):
            raise InvariantError(f"Induced map produced a non-cycle in degree {target.p}.")
        columns.append(target.class_of(image))
    return LinearMap.from_columns(columns, target.dim, domain)


def chi_tilde(complex_: HochschildComplex, chain: Any) -> Vector:
    """Include ``A_m ⊗ W_p`` into ``A ⊗ Ā^{⊗p}``."""

    algebra = complex_.algebra
    p, m = chain.p, chain.m
    rows = w_space(algebra, p).rows
    generator = complex_.offsets.get(1, 0)
    result: Vector = {}
    for j, coefficient in chain.values().items():
        for rank, entry in rows[j].items():
            letters = tuple(generator + letter for letter in rank_word(rank, algebra.n, p))
            for i, value in coefficient.items():
                add_into(result, {complex_.encode(complex_.offsets[m] + i, letters): entry * value})
    return result


def chi_star(complex_: HochschildComplex, cochain: Vector, p: int, m: int) -> Vector:
    """Restrict a bar cochain to ``W_p``; the result is a Koszul cochain of biweight ``(p, m)``."""

    algebra = complex_.algebra
    rows = w_space(algebra, p).rows
    width = len(rows)
    generator = complex_.offsets.get(1, 0)
    result: Vector = {}
    for j, row in enumerate(rows):
        for rank, entry in row.items():
            letters = tuple(generator + letter for letter in rank_word(rank, algebra.n, p))
            for i in range(algebra.dim(m)):
                value = cochain.get(complex_.encode(complex_.offsets[m] + i, letters))
                if value:
                    add_into(result, {i * width + j: entry * value})
    return result


def comparison(algebra: QuadraticAlgebra, kind: ComplexKind | str, p: int) -> ComparisonResult:
    """Rank of ``H(χ̃)_p: HK_p(A) -> HH_p(A)`` or ``H(χ*)_p: HH^p(A) -> HK^p(A)``."""

    kind = ComplexKind(kind)
    complex_ = hochschild_complex(algebra)
    module = bimodule(algebra, BimoduleKind.REGULAR)
    top = algebra.top_weight or 0
    domain = algebra.domain
    rank = 0
    koszul_total = 0

    for m in range(top + 1):
        koszul: HomologySpace = hk(module, kind, Variant.STANDARD, p, m)
        koszul_total += koszul.dim
        if kind is ComplexKind.CHAIN:
            bar_space = complex_.hh(kind, p, m + p)
            induced = _class_map(koszul, bar_space, lambda z: chi_tilde(complex_, z), domain)
        else:
            bar_space = complex_.hh(kind, p, m - p)

            def restrict(vector: Vector, m: int = m) -> Any:
                return koszul.element(chi_star(complex_, vector, p, m))

            induced = _class_map(bar_space, koszul, restrict, domain)
        rank += induced.rank()

    bar_total = complex_.hh_total(kind, p)
    if kind is ComplexKind.CHAIN:
        result = ComparisonResult(kind, p, koszul_total, bar_total, rank)
    else:
        result = ComparisonResult(kind, p, bar_total, koszul_total, rank)
    logger.info("Comparison in degree %s", p, extra={"kind": kind.value, "rank": rank})
    return result


def graded_ops(algebra: QuadraticAlgebra, which: BarOperator | str, p: int, weight: int) -> LinearMap:
    """``e_D``, ``B`` or ``L_D`` on bar chains of degree p and one total weight."""

    which = BarOperator(which)
    if which not in (BarOperator.EULER, BarOperator.CONNES, BarOperator.LIE):
        raise CoefficientError(f"{which.value} is not a graded operator on bar chains.")
    return hochschild_complex(algebra).operator(which, ComplexKind.CHAIN, p, weight)


def rg_check(algebra: QuadraticAlgebra, p: int) -> RinehartGoodwillieResult:
    """``[H(e_D), H(B)] = H(L_D)`` on ``HH_p``, as class-level residuals per weight."""

    if algebra.characteristic:
        raise CharacteristicError("The homotopy formula is checked over the rationals only.")
    complex_ = hochschild_complex(algebra)
    chain = ComplexKind.CHAIN
    residuals: dict[int, LinearMap] = {}
    for weight in complex_.weight_classes(chain, p):
        space = complex_.hh(chain, p, weight)

        def residual(z: Vector, weight: int = weight) -> Vector:
            first = complex_.apply(BarOperator.EULER, chain, p + 1, complex_.apply(BarOperator.CONNES, chain, p, z))
            second = complex_.apply(BarOperator.CONNES, chain, p - 1, complex_.apply(BarOperator.EULER, chain, p, z)) if p else {}
            total = dict(first)
            add_into(total, second)
            add_into(total, z, -algebra.domain(weight))
            return total

        residuals[weight] = _class_map(space, space, residual, algebra.domain)
    return RinehartGoodwillieResult(p, residuals)


def higher_hochschild(algebra: QuadraticAlgebra, kind: HigherHochschildKind | str, p: int) -> dict[int, int]:
    """Homology of HH under ``H(e_D)``, of HH under ``H(B)`` (de Rham), or of HH^ under ``[D] ⌣ -``."""

    kind = HigherHochschildKind(kind)
    if algebra.characteristic == 2:
        raise CharacteristicError("Higher Hochschild spaces need characteristic different from 2.")
    complex_ = hochschild_complex(algebra)
    domain = algebra.domain
    if kind is HigherHochschildKind.HOMOLOGY:
        base, operator, step = ComplexKind.CHAIN, BarOperator.EULER, -1
    elif kind is HigherHochschildKind.DE_RHAM:
        base, operator, step = ComplexKind.CHAIN, BarOperator.CONNES, 1
    else:
        base, operator, step = ComplexKind.COCHAIN, BarOperator.EULER_CUP, 1

    def induced(degree: int, weight: int) -> LinearMap:
        source = complex_.hh(base, degree, weight)
        target_degree = degree + step
        if target_degree < 0:
            return LinearMap.zero(source.dim, 0, domain)
        target = complex_.hh(base, target_degree, weight)
        return _class_map(source, target, lambda v: complex_.apply(operator, base, degree, v), domain)

    dims: dict[int, int] = {}
    for weight in complex_.weight_classes(base, p):
        here = complex_.hh(base, p, weight).dim
        source_degree = p - step
        if source_degree >= 0:
            d_in = induced(source_degree, weight)
        else:
            d_in = LinearMap.zero(0, here, domain)
        dim = homology_at(d_in, induced(p, weight)).dim
        if dim:
            dims[weight] = dim
    logger.info("Higher Hochschild %s in degree %s", kind.value, p, extra={"dims": dims})
    return dims


def check_chain_identities(algebra: QuadraticAlgebra, p: int) -> dict[str, bool]:
    """Exact chain-level identities out of degree p: b∘b, B∘B, b∘B + B∘b and b∘e_D + e_D∘b."""

    complex_ = hochschild_complex(algebra)
    chain = ComplexKind.CHAIN
    one = algebra.domain.one
    checks = {"bb": True, "BB": True, "bB+Bb": True, "be+eb": True, "cochain bb": True}
    apply = complex_.apply

    for index in range(complex_.size * complex_.bar**p):
        unit = {index: one}
        b = apply(BarOperator.DIFFERENTIAL, chain, p, unit)
        if p >= 1 and apply(BarOperator.DIFFERENTIAL, chain, p - 1, b):
            checks["bb"] = False
        big_b = apply(BarOperator.CONNES, chain, p, unit)
        if apply(BarOperator.CONNES, chain, p + 1, big_b):
            checks["BB"] = False
        total = apply(BarOperator.DIFFERENTIAL, chain, p + 1, big_b)
        if p >= 1:
            add_into(total, apply(BarOperator.CONNES, chain, p - 1, b))
        if total:
            checks["bB+Bb"] = False
        euler = apply(BarOperator.EULER, chain, p, unit)
        total = apply(BarOperator.DIFFERENTIAL, chain, p - 1, euler) if p >= 1 else {}
        if p >= 1:
            add_into(total, apply(BarOperator.EULER, chain, p - 1, b))
        if total:
            checks["be+eb"] = False
        cochain = apply(BarOperator.DIFFERENTIAL, ComplexKind.COCHAIN, p, unit)
        if apply(BarOperator.DIFFERENTIAL, ComplexKind.COCHAIN, p + 1, cochain):
            checks["cochain bb"] = False
    return checks


def commutator_quotient_dim(algebra: QuadraticAlgebra) -> int:
    """``dim A / [A, A]``, the degree-0 Hochschild homology computed directly."""

    complex_ = hochschild_complex(algebra)
    vectors = []
    for g in range(complex_.size):
        for h in range(complex_.size):
            commutator = dict(complex_.mult(g, h))
            add_into(commutator, complex_.mult(h, g), -algebra.domain.one)
            vectors.append(commutator)
    return complex_.size - LinearMap.from_columns(vectors, complex_.size, algebra.domain).rank()


__all__ = [
    "BarOperator",
    "ComparisonResult",
    "HigherHochschildKind",
    "HochschildComplex",
    "HochschildSpace",
    "RinehartGoodwillieResult",
    "check_chain_identities",
    "chi_star",
    "chi_tilde",
    "commutator_quotient_dim",
    "comparison",
    "graded_ops",
    "hh",
    "hochschild_complex",
    "higher_hochschild",
    "rg_check",
]
