"""Cup and cap products, their brackets, and Koszul derivations."""
from __future__ import annotations

import logging
from dataclasses import dataclass

from koszulkit.algebra import QuadraticAlgebra
from koszulkit.bimodule import Bimodule, BimoduleKind, Side, bimodule
from koszulkit.errors import CoefficientError, TruncationError
from koszulkit.koszul import (
    Chain,
    Cochain,
    ComplexKind,
    HomologySpace,
    KoszulElement,
    Variant,
    apply_differential,
    euler_cocycle,
    hk,
    split_table,
    unit_cochain,
    w_dim,
)
from koszulkit.linalg import Vector, add_into

logger = logging.getLogger(__name__)


def _parity(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def coefficient_product(
    left: Bimodule, m: int, u: Vector, right: Bimodule, n: int, v: Vector
) -> tuple[Bimodule, int, Vector]:
    """``u ⊗_A v`` for ``u`` in ``left_m`` and ``v`` in ``right_n``.

    One of the two bimodules has to be A itself so the tensor product over A
    collapses to an action.
    """

    if left.algebra is not right.algebra:
        raise CoefficientError("Coefficients belong to different algebras.")
    if left.kind is BimoduleKind.REGULAR:
        return right, right.shift(n, m), right.act_vector(Side.LEFT, m, u, n, v)
    if right.kind is BimoduleKind.REGULAR:
        return left, left.shift(m, n), left.act_vector(Side.RIGHT, n, v, m, u)
    raise CoefficientError(
        f"Products of {left.kind.value}- and {right.kind.value}-valued elements are not supported."
    )


def result_module(left: Bimodule, m: int, right: Bimodule, n: int) -> tuple[Bimodule, int]:
    if left.kind is BimoduleKind.REGULAR:
        return right, right.shift(n, m)
    if right.kind is BimoduleKind.REGULAR:
        return left, left.shift(m, n)
    raise CoefficientError(
        f"Products of {left.kind.value}- and {right.kind.value}-valued elements are not supported."
    )


def cup(f: Cochain, g: Cochain, variant: Variant | str = Variant.STANDARD) -> Cochain:
    """``(f ⌣ g)(x_1..x_{p+q}) = sign f(x_1..x_p) g(x_{p+1}..x_{p+q})``.

    The sign is ``(-1)^{pq}`` for the standard product, ``(-1)^{mn}`` for the
    tilde product and absent for the bar product.
    """

    variant = Variant(variant)
    if f.kind is not ComplexKind.COCHAIN or g.kind is not ComplexKind.COCHAIN:
        raise CoefficientError("cup expects two cochains.")
    module, weight = result_module(f.module, f.m, g.module, g.m)
    total = f.p + g.p
    if variant is Variant.STANDARD:
        sign = _parity(f.p * g.p)
    elif variant is Variant.TILDE:
        sign = _parity(f.m * g.m)
    else:
        sign = 1
    domain = f.algebra.domain
    if not w_dim(f.algebra, total):
        return Cochain(module, total, weight, {})

    fv, gv = f.values(), g.values()
    table = split_table(f.algebra, total, f.p)
    products: dict[tuple[int, int], Vector] = {}
    values: dict[int, Vector] = {}
    for big, entries in enumerate(table):
        acc: Vector = {}
        for k, l, c in entries:
            if k not in fv or l not in gv:
                continue
            key = (k, l)
            if key not in products:
                products[key] = coefficient_product(f.module, f.m, fv[k], g.module, g.m, gv[l])[2]
            add_into(acc, products[key], c)
        if acc:
            values[big] = {i: domain(sign) * value for i, value in acc.items()}
    return Cochain.from_values(module, total, weight, values)  # type: ignore[return-value]


def cap(side: Side | str, f: Cochain, z: Chain, variant: Variant | str = Variant.STANDARD) -> Chain:
    """Left cap ``f ⌢ z`` or right cap ``z ⌢ f``.

    Left: ``sign (f(x_{q-p+1}..x_q) u) ⊗ x_1..x_{q-p}``; right:
    ``sign (u f(x_1..x_p)) ⊗ x_{p+1}..x_q``. Standard signs are
    ``(-1)^{(q-p)p}`` and ``(-1)^{pq}``, tilde signs ``(-1)^{(n-m)m}`` and
    ``(-1)^{mn}``.
    """

    side, variant = Side(side), Variant(variant)
    if f.kind is not ComplexKind.COCHAIN or z.kind is not ComplexKind.CHAIN:
        raise CoefficientError("cap expects a cochain and a chain.")
    p, q, m, n = f.p, z.p, f.m, z.m
    if side is Side.LEFT:
        module, weight = result_module(f.module, m, z.module, n)
    else:
        module, weight = result_module(z.module, n, f.module, m)
    if q < p:
        return Chain(module, q - p, weight, {})

    if variant is Variant.STANDARD:
        sign = _parity((q - p) * p) if side is Side.LEFT else _parity(p * q)
    elif variant is Variant.TILDE:
        sign = _parity((n - m) * m) if side is Side.LEFT else _parity(m * n)
    else:
        sign = 1
    domain = f.algebra.domain
    fv, zv = f.values(), z.values()
    values: dict[int, Vector] = {}

    if side is Side.LEFT:
        table = split_table(f.algebra, q, q - p)
        for big, u in zv.items():
            for k, l, c in table[big]:
                if l in fv:
                    product = coefficient_product(f.module, m, fv[l], z.module, n, u)[2]
                    add_into(values.setdefault(k, {}), product, domain(sign) * c)
    else:
        table = split_table(f.algebra, q, p)
        for big, u in zv.items():
            for k, l, c in table[big]:
                if k in fv:
                    product = coefficient_product(z.module, n, u, f.module, m, fv[k])[2]
                    add_into(values.setdefault(l, {}), product, domain(sign) * c)
    return Chain.from_values(module, q - p, weight, values)  # type: ignore[return-value]


def cup_bracket(f: Cochain, g: Cochain, variant: Variant | str = Variant.STANDARD) -> Cochain:
    """``[f, g] = f ⌣ g - (-1)^{pq} g ⌣ f`` (tilde: ``(-1)^{mn}``)."""

    variant = Variant(variant)
    sign = _parity(f.m * g.m) if variant is Variant.TILDE else _parity(f.p * g.p)
    first, second = cup(f, g, variant), cup(g, f, variant)
    return first - second.scale(f.algebra.domain(sign))  # type: ignore[return-value]


def cap_bracket(f: Cochain, z: Chain, variant: Variant | str = Variant.STANDARD) -> Chain:
    """``[f, z] = f ⌢ z - (-1)^{pq} z ⌢ f`` (tilde: ``(-1)^{mn}``)."""

    variant = Variant(variant)
    sign = _parity(f.m * z.m) if variant is Variant.TILDE else _parity(f.p * z.p)
    first, second = cap(Side.LEFT, f, z, variant), cap(Side.RIGHT, f, z, variant)
    return first - second.scale(f.algebra.domain(sign))  # type: ignore[return-value]


def bracket(kind: str, a: Cochain, b: KoszulElement, variant: Variant | str = Variant.STANDARD) -> KoszulElement:
    if kind == "cup":
        return cup_bracket(a, b, variant)  # type: ignore[arg-type]
    if kind == "cap":
        return cap_bracket(a, b, variant)  # type: ignore[arg-type]
    raise CoefficientError(f"Unknown bracket {kind!r}; expected 'cup' or 'cap'.")


def is_koszul_derivation(f: Cochain) -> bool:
    """``f(x_1) x_2 + x_1 f(x_2) = 0`` on R, i.e. f is a Koszul 1-cocycle."""

    if f.p != 1:
        raise CoefficientError("Koszul derivations have homological weight 1.")
    return apply_differential(f).is_zero()


def derivation_from_images(algebra: QuadraticAlgebra, images: dict[int, Vector], weight: int) -> Cochain:
    """The 1-cochain sending generator ``a`` to ``images[a]`` in ``A_weight``."""

    return Cochain.from_values(bimodule(algebra, BimoduleKind.REGULAR), 1, weight, images)  # type: ignore[return-value]


@dataclass(frozen=True)
class BracketCandidate:
    """A pair of classes whose bracket did not vanish in (co)homology."""

    product: str
    left: tuple[int, int, int]
    right: tuple[int, int, int]


def bracket_survey(
    algebra: QuadraticAlgebra, max_p: int, max_weight: int, variant: Variant | str = Variant.STANDARD
) -> list[BracketCandidate]:
    """Look for nonvanishing brackets of basis classes with coefficients in A.

    Returns ``(p, m, index)`` labels of the offending pairs; nothing is asserted.
    """

    variant = Variant(variant)
    module = bimodule(algebra, BimoduleKind.REGULAR)
    found: list[BracketCandidate] = []

    def spaces(kind: ComplexKind) -> list[HomologySpace]:
        result = []
        for p in range(max_p + 1):
            for m in range(max_weight + 1):
                try:
                    space = hk(module, kind, variant, p, m)
                except TruncationError:
                    continue
                if space.dim:
                    result.append(space)
        return result

    cohomology = spaces(ComplexKind.COCHAIN)
    homology = spaces(ComplexKind.CHAIN)
    for left in cohomology:
        for right in cohomology:
            _survey_pair("cup", left, right, variant, found)
        for right in homology:
            _survey_pair("cap", left, right, variant, found)
    logger.info("Bracket survey found %s candidates", len(found))
    return found


def _survey_pair(
    product: str, left: HomologySpace, right: HomologySpace, variant: Variant, found: list[BracketCandidate]
) -> None:
    module = left.module
    for i, alpha in enumerate(left.representatives()):
        for j, beta in enumerate(right.representatives()):
            try:
                value = bracket(product, alpha, beta, variant)
                if value.p < 0:
                    continue
                target = hk(module, value.kind, variant, value.p, value.m)
            except TruncationError:
                continue
            if target.class_of(value):
                found.append(BracketCandidate(product, (left.p, left.m, i), (right.p, right.m, j)))


__all__ = [
    "BracketCandidate",
    "bracket",
    "bracket_survey",
    "cap",
    "cap_bracket",
    "coefficient_product",
    "cup",
    "cup_bracket",
    "derivation_from_images",
    "euler_cocycle",
    "is_koszul_derivation",
    "result_module",
    "unit_cochain",
]
