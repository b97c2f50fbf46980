"""Connes-type operators on Koszul homology at small weights.

Only the weights where such an operator has an explicit formula are covered:
``HK_0(A)_1 -> HK_1(A)_0``, ``HK_0(A)_2 -> HK_1(A)_1``,
``HK_1(A)_1 -> HK_2(A)_0`` and ``HK_{p-1}(A)_1 -> HK_p(A)_0``.
"""
from __future__ import annotations

import logging
from collections.abc import Callable
from typing import Any

from koszulkit.algebra import QuadraticAlgebra
from koszulkit.bimodule import BimoduleKind, bimodule
from koszulkit.errors import CharacteristicError, CoefficientError, InvariantError
from koszulkit.higher import HigherKind, higher_differential
from koszulkit.koszul import Chain, ComplexKind, HomologySpace, Variant, hk, w_space
from koszulkit.linalg import LinearMap, Subspace, Vector, add_into, intersect
from koszulkit.tensor import rank_word, swap2, word_rank

logger = logging.getLogger(__name__)


def _require_odd_characteristic(algebra: QuadraticAlgebra, what: str) -> None:
    if algebra.characteristic == 2:
        raise CharacteristicError(f"{what} divides by 2, which is impossible in characteristic 2.")


def ant(algebra: QuadraticAlgebra, vector: Vector) -> Vector:
    """``ant(x⊗y) = (x⊗y - y⊗x)/2`` on ``V⊗V``."""

    _require_odd_characteristic(algebra, "ant")
    half = algebra.domain.one / algebra.domain(2)
    result = dict(vector)
    add_into(result, swap2(vector, algebra.n), -algebra.domain.one)
    return {rank: half * value for rank, value in result.items()}


def sym(algebra: QuadraticAlgebra, vector: Vector) -> Vector:
    """``sym(x⊗y) = (x⊗y + y⊗x)/2`` on ``V⊗V``."""

    _require_odd_characteristic(algebra, "sym")
    half = algebra.domain.one / algebra.domain(2)
    result = dict(vector)
    add_into(result, swap2(vector, algebra.n))
    return {rank: half * value for rank, value in result.items()}


def tau(algebra: QuadraticAlgebra, vector: Vector, p: int) -> Vector:
    """``τ(v_1..v_p) = (-1)^{p-1} v_p v_1..v_{p-1}`` on ``V^{⊗p}``."""

    if p == 0:
        return dict(vector)
    n = algebra.n
    sign = -algebra.domain.one if (p - 1) % 2 else algebra.domain.one
    result: Vector = {}
    for rank, value in vector.items():
        letters = rank_word(rank, n, p)
        rotated = (letters[-1], *letters[:-1])
        result[word_rank(rotated, n)] = sign * value
    return result


def gamma(algebra: QuadraticAlgebra, vector: Vector, p: int) -> Vector:
    """``γ(z) = z + τ(z) + ... + τ^{p-1}(z)``."""

    result: Vector = {}
    current = dict(vector)
    for _ in range(max(p, 1)):
        add_into(result, current)
        current = tau(algebra, current, p)
    return result


def _hk(algebra: QuadraticAlgebra, p: int, m: int) -> HomologySpace:
    return hk(bimodule(algebra, BimoduleKind.REGULAR), ComplexKind.CHAIN, Variant.STANDARD, p, m)


def _class_map(source: HomologySpace, target: HomologySpace, chain_map: Callable[[Chain], Chain]) -> LinearMap:
    columns: list[Vector] = []
    for representative in source.representatives():
        image = chain_map(representative)  # type: ignore[arg-type]
        if not target.is_cycle(image):
            raise InvariantError(f"Connes operator produced a non-cycle at {target.biweight}.")
        columns.append(target.class_of(image))
    return LinearMap.from_columns(columns, target.dim, source.module.algebra.domain)


def _flatten(chain: Chain) -> Vector:
    """``A_1 ⊗ W_q`` viewed inside ``V^{⊗(q+1)}``."""

    algebra = chain.algebra
    n, q = algebra.n, chain.p
    rows = w_space(algebra, q).rows
    width = n**q
    result: Vector = {}
    for j, coefficient in chain.values().items():
        for a, value in coefficient.items():
            for rank, entry in rows[j].items():
                add_into(result, {a * width + rank: entry}, value)
    return result


def _as_top_chain(algebra: QuadraticAlgebra, p: int, vector: Vector) -> Chain:
    """A vector of ``W_p`` as a chain of biweight ``(p, 0)``."""

    coords = w_space(algebra, p).coordinates(vector)
    return Chain(bimodule(algebra, BimoduleKind.REGULAR), p, 0, coords)


def bk_01(algebra: QuadraticAlgebra) -> LinearMap:
    """``HK_0(A)_1 = V -> HK_1(A)_0 = V``, the identity of V."""

    def chain_map(chain: Chain) -> Chain:
        return _as_top_chain(algebra, 1, chain.coords)

    return _class_map(_hk(algebra, 0, 1), _hk(algebra, 1, 0), chain_map)


def bk_02(algebra: QuadraticAlgebra) -> LinearMap:
    """``HK_0(A)_2 -> HK_1(A)_1``, ``[a] -> [a + swap(a)]`` on the normal-word lift of a."""

    n = algebra.n
    module = bimodule(algebra, BimoduleKind.REGULAR)

    def chain_map(chain: Chain) -> Chain:
        lifted: Vector = {}
        for k, value in chain.coords.items():
            add_into(lifted, algebra.word_vector(2, k), value)
        add_into(lifted, swap2(lifted, n))
        # rank a*n + b of V⊗V is the chain index of x_a ⊗ x_b in A_1 ⊗ W_1
        return Chain(module, 1, 1, lifted)

    return _class_map(_hk(algebra, 0, 2), _hk(algebra, 1, 1), chain_map)


def bk_11(algebra: QuadraticAlgebra) -> LinearMap:
    """``HK_1(A)_1 -> HK_2(A)_0``, ``[z] -> z - swap(z)``."""

    def chain_map(chain: Chain) -> Chain:
        vector = _flatten(chain)
        result = dict(vector)
        add_into(result, swap2(vector, algebra.n), -algebra.domain.one)
        return _as_top_chain(algebra, 2, result)

    return _class_map(_hk(algebra, 1, 1), _hk(algebra, 2, 0), chain_map)


def bk_p1(algebra: QuadraticAlgebra, p: int) -> LinearMap:
    """``HK_{p-1}(A)_1 -> HK_p(A)_0``, ``[z] -> γ(z)``."""

    if p < 2:
        raise CoefficientError("bk_p1 is defined for p >= 2.")
    characteristic = algebra.characteristic
    if characteristic and p % characteristic == 0:
        raise CharacteristicError(f"bk_p1 needs p = {p} to be invertible in characteristic {characteristic}.")

    def chain_map(chain: Chain) -> Chain:
        return _as_top_chain(algebra, p, gamma(algebra, _flatten(chain), p))

    return _class_map(_hk(algebra, p - 1, 1), _hk(algebra, p, 0), chain_map)


def boundary_map(algebra: QuadraticAlgebra, p: int, m: int) -> LinearMap:
    """``∂ = [e_A] ⌢ -`` from ``HK_p(A)_m`` to ``HK_{p-1}(A)_{m+1}``."""

    module = bimodule(algebra, BimoduleKind.REGULAR)
    return higher_differential(module, HigherKind.HOMOLOGY, Variant.STANDARD, p, m)


def check_b_after_boundary(algebra: QuadraticAlgebra, p: int) -> bool:
    """``B ∘ ∂ = p · id`` on ``HK_p(A)_0``."""

    composite = bk_p1(algebra, p).compose(boundary_map(algebra, p, 0))
    dim = _hk(algebra, p, 0).dim
    return composite == LinearMap.identity(dim, algebra.domain).scale(algebra.domain(p))


def check_rinehart_goodwillie_weight2(algebra: QuadraticAlgebra) -> bool:
    """``∂ B + B ∂ = 2 · id`` on ``HK_1(A)_1``."""

    _require_odd_characteristic(algebra, "The weight-2 homotopy formula")
    first = bk_02(algebra).compose(boundary_map(algebra, 1, 1))
    second = boundary_map(algebra, 2, 0).compose(bk_11(algebra))
    dim = _hk(algebra, 1, 1).dim
    return first + second == LinearMap.identity(dim, algebra.domain).scale(algebra.domain(2))


def top_homology_subspace(algebra: QuadraticAlgebra) -> Subspace:
    """``HK_2(A)_0`` as a subspace of ``V⊗V``."""

    space = _hk(algebra, 2, 0)
    rows = w_space(algebra, 2).rows
    vectors = []
    for representative in space.representatives():
        vector: Vector = {}
        for j, value in representative.coords.items():
            add_into(vector, rows[j], value)
        vectors.append(vector)
    return Subspace.span(algebra.n**2, vectors, algebra.domain)


def antisymmetric_relations(algebra: QuadraticAlgebra) -> Subspace:
    """``R ∩ ant(V⊗V)``."""

    n = algebra.n
    one = algebra.domain.one
    image = Subspace.span(n * n, [ant(algebra, {rank: one}) for rank in range(n * n)], algebra.domain)
    return intersect([algebra.relations, image])


def check_top_homology(algebra: QuadraticAlgebra) -> bool:
    """``HK_2(A)_0 = R ∩ ant(V⊗V)``."""

    return top_homology_subspace(algebra) == antisymmetric_relations(algebra)


def connes_small(algebra: QuadraticAlgebra, which: str, value: Vector, p: int = 2) -> Vector:
    """Apply one of the small Connes-type maps.

    ``ant``, ``sym``, ``tau`` and ``gamma`` act on tensor vectors; the ``bk_*``
    maps act on class coordinates.
    """

    operators: dict[str, Callable[[], Any]] = {
        "ant": lambda: ant(algebra, value),
        "sym": lambda: sym(algebra, value),
        "tau": lambda: tau(algebra, value, p),
        "gamma": lambda: gamma(algebra, value, p),
        "bk_01": lambda: bk_01(algebra).apply(value),
        "bk_02": lambda: bk_02(algebra).apply(value),
        "bk_11": lambda: bk_11(algebra).apply(value),
        "bk_p1": lambda: bk_p1(algebra, p).apply(value),
    }
    if which not in operators:
        raise CoefficientError(f"Unknown operator {which!r}; choose from {', '.join(operators)}.")
    return operators[which]()


__all__ = [
    "ant",
    "antisymmetric_relations",
    "bk_01",
    "bk_02",
    "bk_11",
    "bk_p1",
    "boundary_map",
    "check_b_after_boundary",
    "check_rinehart_goodwillie_weight2",
    "check_top_homology",
    "connes_small",
    "gamma",
    "sym",
    "tau",
    "top_homology_subspace",
]
