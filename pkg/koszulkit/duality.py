"""Koszul duality between A and A^!: the maps ψ, φ and θ and their verification.

Words of ``V^{⊗p}`` and ``V*^{⊗p}`` are paired by rank without signs, so a
vector of ``W^!_p`` reads off as a linear form on ``V^{⊗p}``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Final

import numpy as np

from koszulkit.algebra import QuadraticAlgebra, relation_annihilator
from koszulkit.bimodule import Bimodule, BimoduleKind, Side, bimodule
from koszulkit.calculus import cap, cup, cup_bracket
from koszulkit.errors import CoefficientError, InvariantError, TruncationError
from koszulkit.higher import HigherKind, higher_space
from koszulkit.koszul import (
    Chain,
    Cochain,
    ComplexKind,
    Variant,
    apply_differential,
    hk,
    random_element,
    w_space,
)
from koszulkit.linalg import LinearMap, Vector, add_into
from koszulkit.tensor import lift_form

logger = logging.getLogger(__name__)

ATTEMPTS_PER_TRIAL: Final = 10


@dataclass(frozen=True, eq=False)
class DualityContext:
    """A quadratic algebra together with its Koszul dual, generators aligned."""

    algebra: QuadraticAlgebra
    dual: QuadraticAlgebra
    _cache: dict[Any, LinearMap] = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, algebra: QuadraticAlgebra, weight_limit: int | None = None) -> "DualityContext":
        """Pair ``algebra`` with ``A^!``; ``weight_limit`` truncates the dual."""

        presentation = algebra.koszul_dual().presentation
        limit = algebra.weight_limit if weight_limit is None else weight_limit
        label = f"{algebra.label}!" if algebra.label else ""
        return cls(algebra, QuadraticAlgebra(presentation, weight_limit=limit, label=label))

    def reverse(self) -> "DualityContext":
        """The context of ``A^!`` with A playing the dual, once ``R^⊥⊥ = R`` is confirmed."""

        double = relation_annihilator(self.dual.relations, self.dual.n, self.dual.domain)
        if double != self.algebra.relations:
            raise InvariantError("The annihilator of the dual relations is not R.")
        return DualityContext(self.dual, self.algebra)

    def _memo(self, key: Any, factory: Any) -> LinearMap:
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]

    def _pairing(self, words: QuadraticAlgebra, forms: QuadraticAlgebra, p: int) -> LinearMap:
        """Values of the basis of ``W_p(forms)`` on the normal words of ``words_p``."""

        reps = words.component(p).reps
        rows = w_space(forms, p).rows
        columns = [{k: row[rank] for k, rank in enumerate(reps) if row.get(rank)} for row in rows]
        pairing = LinearMap.from_columns(columns, len(reps), words.domain)
        if pairing.src_dim != pairing.dst_dim or pairing.rank() != pairing.src_dim:
            raise InvariantError(f"The degree {p} duality pairing is not invertible.")
        return pairing

    def psi(self, p: int) -> LinearMap:
        """``ψ_p: W^!_p -> A_p^*``; column j holds the values of ``w^!_j`` on the basis of ``A_p``."""

        return self._memo(("psi", p), lambda: self._pairing(self.algebra, self.dual, p))

    def psi_dual(self, p: int) -> LinearMap:
        """``ψ^!_p: W_p -> A^{!*}_p``."""

        return self._memo(("psi_dual", p), lambda: self._pairing(self.dual, self.algebra, p))

    def _form_images(self, p: int, lift: Any = None) -> list[Vector]:
        """Projections to ``A^!_p`` of lifted dual basis forms of ``W_p``."""

        space = w_space(self.algebra, p)
        piece = self.dual.component(p)
        one = self.algebra.domain.one
        images = []
        for i in range(space.dim):
            form = lift_form({i: one}, space) if lift is None else lift(i, space)
            images.append(piece.project(form))
        return images

    def phi(self, f: Cochain, lift: Any = None) -> Cochain:
        """``φ``: a cochain of A at ``(p, m)`` to a cochain of ``A^!`` at ``(m, p)``."""

        self._check(f, BimoduleKind.REGULAR)
        p, m = f.p, f.m
        module = bimodule(self.dual, BimoduleKind.REGULAR)
        if p < 0 or m < 0:
            return Cochain(module, m, p, {})
        reps = self.algebra.component(m).reps
        dual_rows = w_space(self.dual, m).rows
        images = self._form_images(p, lift)
        values: dict[int, Vector] = {}
        for j, row in enumerate(dual_rows):
            acc: Vector = {}
            for i, coefficient in f.values().items():
                pairing = None
                for k, value in coefficient.items():
                    entry = row.get(reps[k])
                    if entry:
                        pairing = value * entry if pairing is None else pairing + value * entry
                if pairing:
                    add_into(acc, images[i], pairing)
            if acc:
                values[j] = acc
        return Cochain.from_values(module, m, p, values)  # type: ignore[return-value]

    def theta(self, z: Chain) -> Cochain:
        """``θ``: a chain of A at ``(p, m)`` to an ``A^{!*}``-valued cochain of ``A^!`` at ``(m, p)``."""

        self._check(z, BimoduleKind.REGULAR)
        p, m = z.p, z.m
        module = bimodule(self.dual, BimoduleKind.DUAL)
        if p < 0 or m < 0:
            return Cochain(module, m, p, {})
        psi_m = self.psi(m).columns
        psi_dual = self.psi_dual(p).columns
        values: dict[int, Vector] = {}
        for j, column in enumerate(psi_m):
            acc: Vector = {}
            for i, coefficient in z.values().items():
                pairing = None
                for k, value in coefficient.items():
                    entry = column.get(k)
                    if entry:
                        pairing = value * entry if pairing is None else pairing + value * entry
                if pairing:
                    add_into(acc, psi_dual[i], pairing)
            if acc:
                values[j] = acc
        return Cochain.from_values(module, m, p, values)  # type: ignore[return-value]

    def theta_inverse(self, f: Cochain) -> Chain:
        """Inverse of :meth:`theta`."""

        if f.algebra is not self.dual or f.module.kind is not BimoduleKind.DUAL:
            raise CoefficientError("theta_inverse expects an A^!*-valued cochain of the dual algebra.")
        m, p = f.p, f.m
        inverse_psi = self.psi(m).inverse().columns
        inverse_dual = self.psi_dual(p).inverse()
        values: dict[int, Vector] = {}
        for j, theta_j in f.values().items():
            u = inverse_dual.apply(theta_j)
            for k, column in enumerate(inverse_psi):
                weight = column.get(j)
                if not weight:
                    continue
                for i, value in u.items():
                    add_into(values.setdefault(i, {}), {k: value * weight})
        module = bimodule(self.algebra, BimoduleKind.REGULAR)
        return Chain.from_values(module, p, m, values)  # type: ignore[return-value]

    def _check(self, element: Any, kind: BimoduleKind) -> None:
        if element.algebra is not self.algebra or element.module.kind is not kind:
            raise CoefficientError(f"Expected a {kind.value}-valued element of {self.algebra!r}.")


def lift_independence(ctx: DualityContext, f: Cochain, rng: np.random.Generator) -> bool:
    """``φ(f)`` does not depend on how the dual basis forms of ``W_p`` are lifted."""

    space = w_space(ctx.algebra, f.p)
    constraints = space.constraints
    domain = ctx.algebra.domain
    one = domain.one

    def perturbed(i: int, subspace: Any) -> Vector:
        form = lift_form({i: one}, subspace)
        for constraint in constraints:
            draw = int(rng.integers(-2, 3))
            if draw:
                add_into(form, constraint, domain(draw))
        return form

    return ctx.phi(f) == ctx.phi(f, perturbed)


@dataclass(frozen=True)
class DimensionRow:
    table: str
    biweight: tuple[int, int]
    left: int | None
    right: int | None

    @property
    def status(self) -> str:
        """``unknown`` when a side lies beyond the truncation."""

        if self.left is None or self.right is None:
            return "unknown"
        return "agrees" if self.left == self.right else "differs"

    @property
    def agrees(self) -> bool:
        return self.status == "agrees"


@dataclass(frozen=True)
class NegativeControl:
    """Two spaces that only match after the tilde and the index swap."""

    name: str
    weight: int
    left: int | None
    right: int | None

    @property
    def differs(self) -> bool:
        return self.left is not None and self.right is not None and self.left != self.right


@dataclass
class DualityReport:
    rows: list[DimensionRow] = field(default_factory=list)
    identities: dict[str, int] = field(default_factory=dict)
    trials: int = 0

    @property
    def unknown(self) -> list[DimensionRow]:
        return [row for row in self.rows if row.status == "unknown"]

    def count(self, name: str) -> None:
        self.identities[name] = self.identities.get(name, 0) + 1


def _dim(module: Bimodule, kind: ComplexKind, variant: Variant, p: int, m: int) -> int | None:
    try:
        return hk(module, kind, variant, p, m).dim
    except TruncationError:
        return None


def _higher_dim(module: Bimodule, kind: HigherKind, variant: Variant, p: int, m: int) -> int | None:
    try:
        return higher_space(module, kind, variant, p, m).dim
    except TruncationError:
        return None


def _expect(condition: bool, message: str) -> None:
    if not condition:
        logger.error("Duality identity failed: %s", message)
        raise InvariantError(message)


def dimension_tables(ctx: DualityContext, max_p: int, max_weight: int, higher: bool = True) -> list[DimensionRow]:
    """Side-by-side dimensions of the spaces the duality identifies."""

    A, dual = ctx.algebra, ctx.dual
    regular, dual_regular = bimodule(A, BimoduleKind.REGULAR), bimodule(dual, BimoduleKind.REGULAR)
    dual_star = bimodule(dual, BimoduleKind.DUAL)
    rows: list[DimensionRow] = []
    for p in range(max_p + 1):
        for m in range(max_weight + 1):
            rows.append(DimensionRow(
                "cohomology",
                (p, m),
                _dim(regular, ComplexKind.COCHAIN, Variant.STANDARD, p, m),
                _dim(dual_regular, ComplexKind.COCHAIN, Variant.TILDE, m, p),
            ))
            rows.append(DimensionRow(
                "homology",
                (p, m),
                _dim(regular, ComplexKind.CHAIN, Variant.STANDARD, p, m),
                _dim(dual_star, ComplexKind.COCHAIN, Variant.TILDE, m, p),
            ))
            if higher:
                rows.append(DimensionRow(
                    "higher cohomology",
                    (p, m),
                    _higher_dim(regular, HigherKind.COHOMOLOGY, Variant.STANDARD, p, m),
                    _higher_dim(dual_regular, HigherKind.COHOMOLOGY, Variant.TILDE, m, p),
                ))
                rows.append(DimensionRow(
                    "higher homology",
                    (p, m),
                    _higher_dim(regular, HigherKind.HOMOLOGY, Variant.STANDARD, p, m),
                    _higher_dim(dual_star, HigherKind.COHOMOLOGY, Variant.TILDE, m, p),
                ))
    return rows


def check_phi_identities(ctx: DualityContext, f: Cochain, g: Cochain, report: DualityReport) -> None:
    back = ctx.reverse()
    _expect(back.phi(ctx.phi(f)) == f, f"phi is not an involution on {f!r}")
    report.count("phi round trip")

    _expect(
        ctx.phi(cup(f, g)) == cup(ctx.phi(f), ctx.phi(g), Variant.TILDE),
        f"phi does not carry the cup product of {f!r} and {g!r} to the tilde cup",
    )
    report.count("phi cup")

    _expect(
        ctx.phi(cup_bracket(f, g)) == cup_bracket(ctx.phi(f), ctx.phi(g), Variant.TILDE),
        f"phi does not carry the bracket of {f!r} and {g!r}",
    )
    report.count("phi bracket")

    _expect(
        ctx.phi(apply_differential(f)) == apply_differential(ctx.phi(f), Variant.TILDE),  # type: ignore[arg-type]
        f"phi does not intertwine the differentials on {f!r}",
    )
    report.count("phi differential")


def check_theta_identities(ctx: DualityContext, f: Cochain, z: Chain, report: DualityReport) -> None:
    theta_z = ctx.theta(z)
    _expect(ctx.theta_inverse(theta_z) == z, f"theta_inverse does not invert theta on {z!r}")
    report.count("theta round trip")

    _expect(
        ctx.theta(apply_differential(z)) == apply_differential(theta_z, Variant.TILDE),  # type: ignore[arg-type]
        f"theta does not intertwine the differentials on {z!r}",
    )
    report.count("theta differential")

    if z.p < f.p:
        return
    phi_f = ctx.phi(f)
    _expect(
        ctx.theta(cap(Side.LEFT, f, z)) == cup(phi_f, theta_z, Variant.TILDE),
        f"theta does not carry the left cap of {f!r} on {z!r}",
    )
    report.count("theta left cap")
    _expect(
        ctx.theta(cap(Side.RIGHT, f, z)) == cup(theta_z, phi_f, Variant.TILDE),
        f"theta does not carry the right cap of {f!r} on {z!r}",
    )
    report.count("theta right cap")


def duality_report(
    ctx: DualityContext,
    max_p: int,
    max_weight: int,
    trials: int,
    rng: np.random.Generator,
    higher: bool = True,
) -> DualityReport:
    """Compare dimension tables and check the duality identities on random elements.

    Rows with a side beyond the truncation stay ``unknown``; only rows that
    differ fail. Each trial draws ``f`` at ``(p, m)``, ``g`` at ``(q, n)`` and a
    chain ``z`` at ``(p + q, n)`` with ``p + q <= max_p`` and ``m + n <= max_weight``,
    so products and caps stay inside the bounds. Trials hitting the truncation
    anyway are redrawn; :class:`TruncationError` is raised when ``trials`` of
    them cannot be completed. Any failed identity raises
    :class:`InvariantError` naming the inputs.
    """

    report = DualityReport(rows=dimension_tables(ctx, max_p, max_weight, higher))
    for row in report.rows:
        _expect(row.status != "differs", f"{row.table} dimensions differ at {row.biweight}: {row.left} != {row.right}")
    if report.unknown:
        logger.warning("Duality rows beyond the truncation", extra={"unknown": len(report.unknown)})

    regular = bimodule(ctx.algebra, BimoduleKind.REGULAR)
    pairs = [
        ((p, m), (q, n))
        for p in range(max_p + 1)
        for q in range(max_p - p + 1)
        for m in range(max_weight + 1)
        for n in range(max_weight - m + 1)
    ]
    attempts = 0
    while report.trials < trials and attempts < trials * ATTEMPTS_PER_TRIAL:
        attempts += 1
        (p, m), (q, n) = pairs[int(rng.integers(0, len(pairs)))]
        try:
            f = random_element(regular, ComplexKind.COCHAIN, p, m, rng)
            g = random_element(regular, ComplexKind.COCHAIN, q, n, rng)
            z = random_element(regular, ComplexKind.CHAIN, p + q, n, rng)
            checked = DualityReport()
            check_phi_identities(ctx, f, g, checked)  # type: ignore[arg-type]
            check_theta_identities(ctx, f, z, checked)  # type: ignore[arg-type]
        except TruncationError:
            logger.info("Redrawing duality trial beyond the truncation", extra={"biweights": ((p, m), (q, n))})
            continue
        for name in checked.identities:
            report.count(name)
        report.trials += 1
    if report.trials < trials:
        raise TruncationError(
            f"Only {report.trials} of {trials} duality trials fit inside the truncation; raise the weight limit."
        )
    logger.info("Duality report", extra={"identities": report.identities, "trials": report.trials})
    return report


def negative_controls(ctx: DualityContext, max_weight: int) -> list[NegativeControl]:
    """Comparisons that drop the index swap or the tilde; reported, never asserted."""

    regular = bimodule(ctx.algebra, BimoduleKind.REGULAR)
    dual_regular = bimodule(ctx.dual, BimoduleKind.REGULAR)
    controls = []
    for m in range(1, max_weight + 1):
        controls.append(NegativeControl(
            "HK^0(A^!)_m vs HK^0(A)_m",
            m,
            _dim(dual_regular, ComplexKind.COCHAIN, Variant.STANDARD, 0, m),
            _dim(regular, ComplexKind.COCHAIN, Variant.STANDARD, 0, m),
        ))
        controls.append(NegativeControl(
            "HK^m(A^!)_0 vs HK^0(A)_m",
            m,
            _dim(dual_regular, ComplexKind.COCHAIN, Variant.STANDARD, m, 0),
            _dim(regular, ComplexKind.COCHAIN, Variant.STANDARD, 0, m),
        ))
    return controls


__all__ = [
    "DimensionRow",
    "DualityContext",
    "DualityReport",
    "NegativeControl",
    "check_phi_identities",
    "check_theta_identities",
    "dimension_tables",
    "duality_report",
    "lift_independence",
    "negative_controls",
]
