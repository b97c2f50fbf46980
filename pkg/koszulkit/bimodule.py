"""Coefficient bimodules: A itself, the trivial bimodule k and the graded dual A*."""
from __future__ import annotations

import logging
from enum import Enum

from koszulkit.algebra import QuadraticAlgebra
from koszulkit.errors import InvariantError, TruncationError
from koszulkit.linalg import LinearMap, Vector, add_into

logger = logging.getLogger(__name__)


class BimoduleKind(str, Enum):
    REGULAR = "A"
    TRIVIAL = "k"
    DUAL = "dual"


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class Bimodule:
    """A weight-graded A-bimodule described by its actions on basis elements.

    The dual ``A*`` is stored with nonnegative weights: ``A*_m`` is the dual
    of ``A_m`` and acting by ``A_n`` lands in ``A*_{m-n}``.
    """

    def __init__(self, algebra: QuadraticAlgebra, kind: BimoduleKind) -> None:
        self.algebra = algebra
        self.kind = BimoduleKind(kind)
        if self.kind is BimoduleKind.DUAL and not algebra.is_finite and algebra.weight_limit is None:
            algebra.discover_top_weight()
            if not algebra.is_finite:
                raise TruncationError(
                    "The graded dual of an infinite-dimensional algebra needs a weight limit."
                )

    def __repr__(self) -> str:
        return f"Bimodule({self.kind.value}, {self.algebra!r})"

    @property
    def step(self) -> int:
        """Weight change caused by acting with ``V``."""

        return -1 if self.kind is BimoduleKind.DUAL else 1

    def shift(self, m: int, n: int) -> int:
        return m - n if self.kind is BimoduleKind.DUAL else m + n

    def dim(self, m: int) -> int:
        if m < 0:
            return 0
        if self.kind is BimoduleKind.TRIVIAL:
            return 1 if m == 0 else 0
        return self.algebra.dim(m)

    def describe(self, m: int, coords: Vector) -> str:
        if self.kind is BimoduleKind.TRIVIAL:
            return self.algebra.field.format(coords.get(0, self.algebra.field.zero))
        text = self.algebra.describe(m, coords)
        if self.kind is BimoduleKind.DUAL:
            return f"({text})*"
        return text

    def action_map(self, side: Side, n: int, a: int, m: int) -> LinearMap:
        """Matrix of ``u -> a.u`` (left) or ``u -> u.a`` (right) from ``M_m``.

        ``a`` is basis element ``a`` of ``A_n``.
        """

        side = Side(side)
        return self.algebra.memo(("act", self.kind, side, n, a, m), lambda: self._build_action(side, n, a, m))

    def _build_action(self, side: Side, n: int, a: int, m: int) -> LinearMap:
        algebra = self.algebra
        domain = algebra.domain
        source = self.dim(m)
        target_weight = self.shift(m, n)
        target = self.dim(target_weight)
        columns: list[Vector] = []

        if self.kind is BimoduleKind.REGULAR:
            for i in range(source):
                if side is Side.LEFT:
                    columns.append(algebra.product(n, a, m, i))
                else:
                    columns.append(algebra.product(m, i, n, a))
        elif self.kind is BimoduleKind.TRIVIAL:
            identity = n == 0 and m == 0
            columns = [{0: domain.one} if identity else {} for _ in range(source)]
        else:
            columns = [{} for _ in range(source)]
            if target:
                sign = -domain.one if side is Side.LEFT and n % 2 else domain.one
                for k in range(target):
                    # (a.u)(c) = (-1)^n u(c a) and (u.a)(c) = u(a c) on c in A_{m-n}
                    if side is Side.LEFT:
                        product = algebra.product(target_weight, k, n, a)
                    else:
                        product = algebra.product(n, a, target_weight, k)
                    for i, value in product.items():
                        columns[i][k] = sign * value
        return LinearMap.from_columns(columns, target, domain)

    def act(self, side: Side, n: int, a: int, m: int, i: int) -> Vector:
        return self.action_map(side, n, a, m).columns[i]

    def act_vector(self, side: Side, n: int, element: Vector, m: int, vector: Vector) -> Vector:
        """Act with an arbitrary element of ``A_n`` on an arbitrary element of ``M_m``."""

        result: Vector = {}
        for a, coeff in element.items():
            if not coeff:
                continue
            image = self.action_map(side, n, a, m).apply(vector)
            add_into(result, image, coeff)
        return result

    def check_actions(self, bound: int) -> int:
        """Audit ``(ab).u = a.(b.u)``, its right mirror and ``(a.u).b = a.(u.b)``.

        Checks every weight triple up to ``bound`` that stays inside the
        computed range and returns the number of triples audited.
        """

        algebra = self.algebra
        checked = 0
        for m in range(bound + 1):
            for n1 in range(bound + 1):
                for n2 in range(bound + 1 - n1):
                    try:
                        dims = (self.dim(m), algebra.dim(n1), algebra.dim(n2))
                        self.dim(self.shift(self.shift(m, n1), n2))
                        algebra.dim(n1 + n2)
                    except TruncationError:
                        continue
                    if not all(dims):
                        continue
                    self._check_triple(m, n1, n2)
                    checked += 1
        logger.debug("Audited %s action triples", checked, extra={"bimodule": self.kind.value})
        return checked

    def _check_triple(self, m: int, n1: int, n2: int) -> None:
        algebra = self.algebra
        one = algebra.domain.one
        for a in range(algebra.dim(n1)):
            for b in range(algebra.dim(n2)):
                ab = algebra.product(n1, a, n2, b)
                for i in range(self.dim(m)):
                    u = {i: one}
                    inner = self.act_vector(Side.LEFT, n2, {b: one}, m, u)
                    nested = self.act_vector(Side.LEFT, n1, {a: one}, self.shift(m, n2), inner)
                    direct = self.act_vector(Side.LEFT, n1 + n2, ab, m, u)
                    if nested != direct:
                        raise InvariantError(f"Left action is not associative at weights {(n1, n2, m)}.")

                    inner = self.act_vector(Side.RIGHT, n1, {a: one}, m, u)
                    nested = self.act_vector(Side.RIGHT, n2, {b: one}, self.shift(m, n1), inner)
                    direct = self.act_vector(Side.RIGHT, n1 + n2, ab, m, u)
                    if nested != direct:
                        raise InvariantError(f"Right action is not associative at weights {(n1, n2, m)}.")

                    left_first = self.act_vector(
                        Side.RIGHT, n2, {b: one}, self.shift(m, n1),
                        self.act_vector(Side.LEFT, n1, {a: one}, m, u),
                    )
                    right_first = self.act_vector(
                        Side.LEFT, n1, {a: one}, self.shift(m, n2),
                        self.act_vector(Side.RIGHT, n2, {b: one}, m, u),
                    )
                    if left_first != right_first:
                        raise InvariantError(f"Left and right actions do not commute at weights {(n1, n2, m)}.")


def bimodule(algebra: QuadraticAlgebra, kind: BimoduleKind | str) -> Bimodule:
    """The coefficient bimodule of the requested kind, cached on the algebra."""

    kind = BimoduleKind(kind)
    return algebra.memo(("bimodule", kind), lambda: Bimodule(algebra, kind))


__all__ = ["Bimodule", "BimoduleKind", "Side", "bimodule"]
