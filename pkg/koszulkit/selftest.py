"""Property suite run by ``koszulkit selftest``.

Every check takes an algebra, a :class:`SuiteConfig` and a random generator,
returns a short detail string and raises :class:`InvariantError` when an
identity fails. Checks that cannot run on a given algebra (characteristic,
truncation, resources) are reported as skipped.
"""
from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from koszulkit import settings
from koszulkit.algebra import QuadraticAlgebra, make_rng, random_presentation
from koszulkit.bimodule import BimoduleKind, Side, bimodule
from koszulkit.calculus import cap, cap_bracket, cup, cup_bracket
from koszulkit.catalogue import get_entry
from koszulkit.connes import (
    bk_01,
    boundary_map,
    check_b_after_boundary,
    check_rinehart_goodwillie_weight2,
    check_top_homology,
)
from koszulkit.duality import DualityContext, duality_report
from koszulkit.errors import CharacteristicError, InvariantError, ResourceLimitError, TruncationError
from koszulkit.higher import HigherKind, higher_space
from koszulkit.hochschild import check_chain_identities, rg_check
from koszulkit.koszul import (
    ComplexKind,
    KoszulElement,
    Variant,
    apply_differential,
    differential,
    euler_cocycle,
    random_element,
    target_biweight,
    w_space,
    w_space_definitional,
)
from koszulkit.linalg import LinearMap
from koszulkit.scalars import Field

logger = logging.getLogger(__name__)

SUITE_ENTRIES = ("ex9", "sym2")
SUITE_FIELDS = ("Q", "F 7")
SIGNED_VARIANTS = (Variant.STANDARD, Variant.TILDE)


@dataclass(frozen=True)
class SuiteConfig:
    max_p: int = 4
    max_weight: int = 4
    trials: int = field(default_factory=lambda: settings.DEFAULT_TRIALS)
    seed: int = field(default_factory=lambda: settings.RANDOM_SEED)


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    algebra: str
    passed: bool
    detail: str
    skipped: bool = False

    @property
    def status(self) -> str:
        if self.skipped:
            return "skipped"
        return "passed" if self.passed else "failed"

    def as_dict(self) -> dict[str, Any]:
        return {"name": self.name, "algebra": self.algebra, "status": self.status, "detail": self.detail}


Check = Callable[[QuadraticAlgebra, SuiteConfig, np.random.Generator], str]


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise InvariantError(message)


def _sign(algebra: QuadraticAlgebra, exponent: int) -> Any:
    return algebra.domain(-1 if exponent % 2 else 1)


def _degree(element: KoszulElement, variant: Variant) -> int:
    """The exponent the signed Leibniz rules use: homological weight, or coefficient weight for tilde."""

    return element.m if variant is Variant.TILDE else element.p


def _draw(config: SuiteConfig, rng: np.random.Generator, share: int = 1) -> tuple[int, int]:
    """A biweight inside the bounds; ``share`` splits the bounds between several factors."""

    return int(rng.integers(0, config.max_p // share + 1)), int(rng.integers(0, config.max_weight // share + 1))


def _is_finite(algebra: QuadraticAlgebra, config: SuiteConfig) -> bool:
    return algebra.discover_top_weight(config.max_weight + 2) is not None


def _trials(config: SuiteConfig, rng: np.random.Generator, body: Callable[[], None]) -> int:
    """Run ``body`` ``config.trials`` times; trials hitting the truncation do not count."""

    done = 0
    for _ in range(config.trials):
        try:
            body()
        except TruncationError:
            continue
        done += 1
    return done


def check_differential_squares(algebra: QuadraticAlgebra, config: SuiteConfig, rng: np.random.Generator) -> str:
    """``b∘b = 0`` for chains and cochains, both signed variants, and ``b = 0`` with coefficients k."""

    setups = [(BimoduleKind.REGULAR, SIGNED_VARIANTS), (BimoduleKind.TRIVIAL, (Variant.STANDARD,))]
    if _is_finite(algebra, config):
        setups.append((BimoduleKind.DUAL, (Variant.STANDARD,)))
    checked = 0
    for kind_of_module, variants in setups:
        module = bimodule(algebra, kind_of_module)
        for kind in ComplexKind:
            for variant in variants:
                for p in range(config.max_p + 1):
                    for m in range(config.max_weight + 1):
                        try:
                            d = differential(module, kind, variant, p, m)
                            tp, tm = target_biweight(module, kind, p, m)
                            if kind_of_module is BimoduleKind.TRIVIAL:
                                _expect(d.is_zero(), f"Differential with coefficients k is nonzero at {(p, m)}.")
                            if tp < 0 or tm < 0:
                                continue
                            square = differential(module, kind, variant, tp, tm).compose(d)
                        except TruncationError:
                            continue
                        _expect(
                            square.is_zero(),
                            f"b∘b != 0 for {kind.value} {variant.value} {kind_of_module.value} at {(p, m)}.",
                        )
                        checked += 1
    return f"{checked} squares vanish"


def check_leibniz(algebra: QuadraticAlgebra, config: SuiteConfig, rng: np.random.Generator) -> str:
    """Cup Leibniz rule and both cap Leibniz rules on random elements."""

    module = bimodule(algebra, BimoduleKind.REGULAR)

    def trial() -> None:
        (p, m), (q, n) = _draw(config, rng, 2), _draw(config, rng, 2)
        f = random_element(module, ComplexKind.COCHAIN, p, m, rng)
        g = random_element(module, ComplexKind.COCHAIN, q, n, rng)
        z = random_element(module, ComplexKind.CHAIN, p + 1 + int(rng.integers(0, 2)), n, rng)
        for variant in SIGNED_VARIANTS:

            def d(element: KoszulElement) -> KoszulElement:
                return apply_differential(element, variant)

            lhs = d(cup(f, g, variant))
            rhs = cup(d(f), g, variant) + cup(f, d(g), variant).scale(_sign(algebra, _degree(f, variant)))  # type: ignore[arg-type]
            _expect(lhs == rhs, f"Cup Leibniz rule fails ({variant.value}) for {f!r}, {g!r}.")

            lhs = d(cap(Side.LEFT, f, z, variant))
            rhs = cap(Side.LEFT, d(f), z, variant) + cap(Side.LEFT, f, d(z), variant).scale(  # type: ignore[arg-type]
                _sign(algebra, _degree(f, variant))
            )
            _expect(lhs == rhs, f"Left cap Leibniz rule fails ({variant.value}) for {f!r}, {z!r}.")
            lhs = d(cap(Side.RIGHT, f, z, variant))
            rhs = cap(Side.RIGHT, f, d(z), variant) + cap(Side.RIGHT, d(f), z, variant).scale(  # type: ignore[arg-type]
                _sign(algebra, _degree(z, variant))
            )
            _expect(lhs == rhs, f"Right cap Leibniz rule fails ({variant.value}) for {f!r}, {z!r}.")

    return f"{_trials(config, rng, trial)} trials"


def check_associativity(algebra: QuadraticAlgebra, config: SuiteConfig, rng: np.random.Generator) -> str:
    """Cup associativity (every variant) and the three cap associativity relations (signed variants)."""

    module = bimodule(algebra, BimoduleKind.REGULAR)

    def trial() -> None:
        (p, m), (q, n), (r, k) = (_draw(config, rng, 2) for _ in range(3))
        f = random_element(module, ComplexKind.COCHAIN, p, m, rng)
        g = random_element(module, ComplexKind.COCHAIN, q, n, rng)
        h = random_element(module, ComplexKind.COCHAIN, r, k, rng)
        z = random_element(module, ComplexKind.CHAIN, p + q + r, k, rng)
        for variant in Variant:
            _expect(
                cup(cup(f, g, variant), h, variant) == cup(f, cup(g, h, variant), variant),
                f"Cup product is not associative ({variant.value}).",
            )
        for variant in SIGNED_VARIANTS:
            _expect(
                cap(Side.LEFT, f, cap(Side.LEFT, g, z, variant), variant)
                == cap(Side.LEFT, cup(f, g, variant), z, variant),
                f"Left cap action is not associative ({variant.value}).",
            )
            _expect(
                cap(Side.RIGHT, f, cap(Side.RIGHT, g, z, variant), variant)
                == cap(Side.RIGHT, cup(g, f, variant), z, variant),
                f"Right cap action is not associative ({variant.value}).",
            )
            _expect(
                cap(Side.LEFT, f, cap(Side.RIGHT, g, z, variant), variant)
                == cap(Side.RIGHT, g, cap(Side.LEFT, f, z, variant), variant),
                f"Left and right cap actions do not commute ({variant.value}).",
            )

    return f"{_trials(config, rng, trial)} trials"


def check_fundamental_formulas(algebra: QuadraticAlgebra, config: SuiteConfig, rng: np.random.Generator) -> str:
    """``[e_A, f] = -b(f)`` and ``[e_A, z] = -b(z)``, standard and tilde."""

    regular = bimodule(algebra, BimoduleKind.REGULAR)
    trivial = bimodule(algebra, BimoduleKind.TRIVIAL)
    euler = euler_cocycle(algebra)

    def trial() -> None:
        p, m = _draw(config, rng)
        for module, variants in ((regular, SIGNED_VARIANTS), (trivial, (Variant.STANDARD,))):
            f = random_element(module, ComplexKind.COCHAIN, p, m, rng)
            z = random_element(module, ComplexKind.CHAIN, p, m, rng)
            for variant in variants:
                _expect(
                    cup_bracket(euler, f, variant) == -apply_differential(f, variant),  # type: ignore[arg-type]
                    f"Cup bracket with e_A is not -b ({variant.value}, {module.kind.value}) at {(p, m)}.",
                )
                _expect(
                    cap_bracket(euler, z, variant) == -apply_differential(z, variant),  # type: ignore[arg-type]
                    f"Cap bracket with e_A is not -b ({variant.value}, {module.kind.value}) at {(p, m)}.",
                )

    return f"{_trials(config, rng, trial)} trials"


def check_w_spaces(algebra: QuadraticAlgebra, config: SuiteConfig, rng: np.random.Generator) -> str:
    """The incremental W_p agrees with the full intersection."""

    top = min(5, config.max_p + 1)
    for p in range(top + 1):
        _expect(w_space(algebra, p) == w_space_definitional(algebra, p), f"W_{p} differs from the intersection.")
    return f"W_0..W_{top}"


def check_actions(algebra: QuadraticAlgebra, config: SuiteConfig, rng: np.random.Generator) -> str:
    kinds = [BimoduleKind.REGULAR, BimoduleKind.TRIVIAL]
    if _is_finite(algebra, config):
        kinds.append(BimoduleKind.DUAL)
    audited = sum(bimodule(algebra, kind).check_actions(config.max_weight) for kind in kinds)
    return f"{audited} weight triples"


def check_duality(algebra: QuadraticAlgebra, config: SuiteConfig, rng: np.random.Generator) -> str:
    """Dimension tables against A^!, the involution φ∘φ, and the φ and θ identities."""

    ctx = DualityContext.build(algebra, weight_limit=max(config.max_p, config.max_weight) + 2)
    report = duality_report(ctx, config.max_p, config.max_weight, config.trials, rng)
    identities = sum(report.identities.values())
    return (
        f"{len(report.rows)} dimension rows ({len(report.unknown)} unknown), "
        f"{identities} identities over {report.trials} trials"
    )


def check_small_weights(algebra: QuadraticAlgebra, config: SuiteConfig, rng: np.random.Generator) -> str:
    """Boundary and Connes-type identities at small weights, and the vanishing they force."""

    n = algebra.n
    module = bimodule(algebra, BimoduleKind.REGULAR)
    _expect(
        bk_01(algebra).compose(boundary_map(algebra, 1, 0)) == LinearMap.identity(n, algebra.domain),
        "The boundary map is not the identity on HK_1(A)_0.",
    )
    for p, m in ((0, 1), (1, 0)):
        _expect(
            higher_space(module, HigherKind.HOMOLOGY, Variant.STANDARD, p, m).dim == 0,
            f"Higher homology does not vanish at {(p, m)}.",
        )
    _expect(check_rinehart_goodwillie_weight2(algebra), "∂B + B∂ is not 2·id on HK_1(A)_1.")
    _expect(check_top_homology(algebra), "HK_2(A)_0 differs from R ∩ ant(V⊗V).")
    verified = []
    for p in range(2, config.max_p + 1):
        if not algebra.field.can_divide_by(p):
            continue
        _expect(check_b_after_boundary(algebra, p), f"B∘∂ is not {p}·id on HK_{p}(A)_0.")
        if p <= 3:
            _expect(
                higher_space(module, HigherKind.HOMOLOGY, Variant.STANDARD, p, 0).dim == 0,
                f"Higher homology does not vanish at {(p, 0)}.",
            )
        verified.append(p)
    return f"B∘∂ = p·id for p in {verified}"


def check_bar_complex(algebra: QuadraticAlgebra, config: SuiteConfig, rng: np.random.Generator) -> str:
    """Chain-level bar identities and, over the rationals, the homotopy formula on HH."""

    if not _is_finite(algebra, config):
        raise TruncationError("The bar complex needs a finite-dimensional algebra.")
    degrees = range(1, min(config.max_p, 2) + 1)
    for p in degrees:
        for name, holds in check_chain_identities(algebra, p).items():
            _expect(holds, f"Bar identity {name} fails in degree {p}.")
    detail = f"bar identities in degrees {list(degrees)}"
    if algebra.characteristic == 0:
        for p in range(min(config.max_p, 2) + 1):
            _expect(rg_check(algebra, p).holds, f"e_D B + B e_D != L_D on HH_{p}.")
        detail += ", homotopy formula"
    return detail


CHECKS: dict[str, Check] = {
    "differential squares": check_differential_squares,
    "leibniz rules": check_leibniz,
    "associativity": check_associativity,
    "fundamental formulas": check_fundamental_formulas,
    "W intersection": check_w_spaces,
    "bimodule actions": check_actions,
    "duality": check_duality,
    "small weights": check_small_weights,
    "bar complex": check_bar_complex,
}


def suite_algebras(seed: int | None = None, random_count: int = 5) -> list[QuadraticAlgebra]:
    """Catalogue algebras and ``random_count`` random presentations, each over Q and over F_7.

    The catalogue entries over Q come first under their own names. Both fields
    see the same integer coefficients: the generator is reseeded per field.
    """

    algebras = [get_entry(name).algebra() for name in SUITE_ENTRIES]
    for descriptor in SUITE_FIELDS[1:]:
        field_ = Field.parse(descriptor)
        for name in SUITE_ENTRIES:
            presentation = get_entry(name).presentation(field_)
            algebras.append(QuadraticAlgebra(presentation, label=f"{name} over {field_}"))
    for descriptor in SUITE_FIELDS:
        field_ = Field.parse(descriptor)
        rng = make_rng(seed)
        for index in range(1, random_count + 1):
            presentation = random_presentation(rng, field_)
            algebras.append(QuadraticAlgebra(presentation, label=f"random{index} over {field_}"))
    return algebras


def run_check(name: str, algebra: QuadraticAlgebra, config: SuiteConfig, rng: np.random.Generator) -> CheckOutcome:
    label = algebra.label or repr(algebra)
    try:
        detail = CHECKS[name](algebra, config, rng)
    except InvariantError as exc:
        logger.error("Check %s failed on %s: %s", name, label, exc)
        return CheckOutcome(name, label, False, str(exc))
    except (CharacteristicError, TruncationError, ResourceLimitError) as exc:
        logger.info("Check %s skipped on %s: %s", name, label, exc)
        return CheckOutcome(name, label, True, str(exc), skipped=True)
    logger.info("Check %s passed on %s", name, label, extra={"detail": detail})
    return CheckOutcome(name, label, True, detail)


def run_selftest(
    config: SuiteConfig | None = None,
    algebras: Sequence[QuadraticAlgebra] | None = None,
    checks: Sequence[str] | None = None,
) -> list[CheckOutcome]:
    """Run the property suite; the outcome list follows algebra order, then check order."""

    config = config or SuiteConfig()
    algebras = list(algebras) if algebras is not None else suite_algebras(config.seed)
    names = list(checks) if checks is not None else list(CHECKS)
    rng = make_rng(config.seed)
    outcomes = [run_check(name, algebra, config, rng) for algebra in algebras for name in names]
    failed = sum(not outcome.passed for outcome in outcomes)
    logger.info("Selftest finished", extra={"checks": len(outcomes), "failed": failed})
    return outcomes


__all__ = [
    "CHECKS",
    "CheckOutcome",
    "SuiteConfig",
    "run_check",
    "run_selftest",
    "suite_algebras",
]
