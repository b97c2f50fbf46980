"""Command-line front end: ``python -m koszulkit <command> <presentation> [options]``.

Exit codes: 0 on success, 1 when the input is at fault, 2 when an internal
identity failed (always a bug).
"""
from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Final

import sentry_sdk

from koszulkit import __version__, settings
from koszulkit.algebra import QuadraticAlgebra, make_rng
from koszulkit.bimodule import BimoduleKind, bimodule
from koszulkit.calculus import bracket_survey
from koszulkit.catalogue import resolve_presentation
from koszulkit.duality import DualityContext, duality_report, negative_controls
from koszulkit.errors import ConfigurationError, InputError, InvariantError, TruncationError
from koszulkit.higher import HigherKind, higher_product_table, higher_space
from koszulkit.hochschild import HigherHochschildKind, comparison, hochschild_complex, higher_hochschild, rg_check
from koszulkit.koszul import ComplexKind, Variant, hk, koszulity, left_homology, render_w, w_dim
from koszulkit.reports import Report, algebra_summary, biweight_key, render
from koszulkit.scalars import Field
from koszulkit.selftest import SuiteConfig, run_selftest, suite_algebras

logger = logging.getLogger(__name__)

EXIT_OK: Final = 0
EXIT_INPUT: Final = 1
EXIT_INTERNAL: Final = 2

_COEFF_SUFFIX: Final = {BimoduleKind.REGULAR: "", BimoduleKind.TRIVIAL: ",k", BimoduleKind.DUAL: ",A*"}


def _positive(value: str) -> int:
    try:
        number = int(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer") from exc
    if number <= 0:
        raise argparse.ArgumentTypeError(f"{value} must be a positive integer")
    return number


def _shared_options(max_p: int | None = None, max_weight: int | None = None) -> argparse.ArgumentParser:
    """Options common to every command, built afresh for each one."""

    max_p = settings.DEFAULT_MAX_P if max_p is None else max_p
    max_weight = settings.DEFAULT_MAX_WEIGHT if max_weight is None else max_weight
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--max-p",
        type=_positive,
        default=max_p,
        help=f"Largest homological weight (default: {max_p}).",
    )
    parent.add_argument(
        "--max-weight",
        type=_positive,
        default=max_weight,
        help=f"Largest coefficient weight (default: {max_weight}).",
    )
    parent.add_argument(
        "--coeff",
        choices=[kind.value for kind in BimoduleKind],
        default=BimoduleKind.REGULAR.value,
        help="Coefficient bimodule: A, the trivial bimodule k or the graded dual (default: A).",
    )
    parent.add_argument(
        "--variant",
        choices=[Variant.STANDARD.value, Variant.TILDE.value],
        default=Variant.STANDARD.value,
        help="Sign convention of the differentials (default: standard).",
    )
    parent.add_argument(
        "--format",
        choices=["table", "json"],
        default="table",
        help="Output format for the report (default: table).",
    )
    parent.add_argument(
        "--seed",
        type=int,
        default=settings.RANDOM_SEED,
        help=f"Seed for random trials (default: {settings.RANDOM_SEED}).",
    )
    parent.add_argument(
        "--trials",
        type=_positive,
        default=settings.DEFAULT_TRIALS,
        help=f"Number of random trials (default: {settings.DEFAULT_TRIALS}).",
    )
    parent.add_argument("--field", help="Override the field of the presentation: Q or F<prime>.")
    parent.add_argument("--verbose", action="store_true", help="Log debug output to stderr.")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="koszulkit", description="Exact Koszul calculus for quadratic algebras.")
    parser.add_argument("--version", action="version", version=f"koszulkit {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str, **defaults: int) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[_shared_options(**defaults)], help=help_text)
        sub.add_argument("source", help="Presentation file, or @name for a catalogue entry.")
        return sub

    command("info", "Summarize the algebra and its Koszul dual.")
    command("wspaces", "List bases of the spaces W_p.")
    command("homology", "Koszul homology HK_p(A, M)_m.")
    cohomology = command("cohomology", "Koszul cohomology HK^p(A, M)_m.")
    cohomology.add_argument(
        "--brackets",
        action="store_true",
        help="Also list basis classes with coefficients in A whose cup or cap bracket is nonzero.",
    )
    higher = command("higher", "Higher Koszul (co)homology.")
    higher.add_argument("--kind", choices=[kind.value for kind in HigherKind], default=HigherKind.COHOMOLOGY.value)
    higher.add_argument("--products", action="store_true", help="Also list nonzero higher products.")
    dual = command("dual", "Write the presentation of the Koszul dual.")
    dual.add_argument("-o", "--output", help="File receiving the dual presentation.")
    duality = command("duality-check", "Compare A with its Koszul dual.")
    duality.add_argument("--no-higher", action="store_true", help="Skip the higher dimension tables.")
    hochschild = command("hochschild", "Hochschild (co)homology through the bar complex.", max_p=3)
    hochschild.add_argument("--kind", choices=["homology", "cohomology"], default="homology")
    koszul = command("koszulity", "Check exactness of the left Koszul complex.")
    koszul.add_argument("--max-degree", type=_positive, default=6, help="Degree bound N, at least 2 (default: 6).")

    selftest = commands.add_parser(
        "selftest", parents=[_shared_options(max_p=4, max_weight=4)], help="Run the property suite."
    )
    selftest.add_argument("--random", type=int, default=5, help="Random presentations per field (default: 5).")
    return parser


def load_algebra(args: argparse.Namespace) -> QuadraticAlgebra:
    """Parse the presentation and prepare an algebra truncated one weight past ``--max-weight``."""

    field = Field.parse(args.field) if args.field else None
    presentation, label = resolve_presentation(args.source, field)
    limit = args.max_weight + 1
    algebra = QuadraticAlgebra(presentation, weight_limit=limit, label=label)
    algebra.discover_top_weight(limit)
    return algebra


def _table_name(symbol: str, coeff: BimoduleKind, variant: Variant) -> str:
    if variant is Variant.TILDE:
        symbol = symbol.replace("HK", "H̃K", 1)
    return symbol.format(coeff=_COEFF_SUFFIX[coeff])


def _koszul_table(args: argparse.Namespace, kind: ComplexKind, algebra: QuadraticAlgebra) -> Report:
    coeff, variant = BimoduleKind(args.coeff), Variant(args.variant)
    module = bimodule(algebra, coeff)
    symbol = "HK_p(A{coeff})_m" if kind is ComplexKind.CHAIN else "HK^p(A{coeff})_m"
    name = _table_name(symbol, coeff, variant)
    report = Report(args.command, algebra_summary(algebra, args.max_weight, args.max_p))
    for p in range(args.max_p + 1):
        for m in range(args.max_weight + 1):
            try:
                space = hk(module, kind, variant, p, m)
            except TruncationError:
                report.add_cell(name, p, m, None)
                continue
            report.add_cell(name, p, m, space.dim)
            report.add_generators(name, biweight_key(p, m), space.describe())
    return report


def cmd_info(args: argparse.Namespace) -> Report:
    algebra = load_algebra(args)
    report = Report(args.command, algebra_summary(algebra, args.max_weight, args.max_p))
    dual = algebra.koszul_dual().presentation
    report.facts["dual_relations"] = [dual.format_relation(vector) for vector in dual.relations]
    report.facts["finite"] = algebra.is_finite
    return report


def cmd_wspaces(args: argparse.Namespace) -> Report:
    algebra = load_algebra(args)
    report = Report(args.command, algebra_summary(algebra, args.max_weight, args.max_p))
    for p in range(args.max_p + 1):
        report.add_generators("W_p", str(p), [render_w(algebra, p, j) for j in range(w_dim(algebra, p))])
    return report


def cmd_homology(args: argparse.Namespace) -> Report:
    return _koszul_table(args, ComplexKind.CHAIN, load_algebra(args))


def cmd_cohomology(args: argparse.Namespace) -> Report:
    algebra = load_algebra(args)
    report = _koszul_table(args, ComplexKind.COCHAIN, algebra)
    if args.brackets:
        candidates = bracket_survey(algebra, args.max_p, args.max_weight, args.variant)
        report.facts["nonzero_brackets"] = [
            f"{candidate.product} {candidate.left} × {candidate.right}" for candidate in candidates
        ]
        report.facts["graded_commutative"] = not candidates
    return report


def cmd_higher(args: argparse.Namespace) -> Report:
    algebra = load_algebra(args)
    coeff, variant, kind = BimoduleKind(args.coeff), Variant(args.variant), HigherKind(args.kind)
    module = bimodule(algebra, coeff)
    symbol = "HK^hi_p(A{coeff})_m" if kind is HigherKind.HOMOLOGY else "HK_hi^p(A{coeff})_m"
    name = _table_name(symbol, coeff, variant)
    report = Report(args.command, algebra_summary(algebra, args.max_weight, args.max_p))
    for p in range(args.max_p + 1):
        for m in range(args.max_weight + 1):
            try:
                space = higher_space(module, kind, variant, p, m)
            except TruncationError:
                report.add_cell(name, p, m, None)
                continue
            report.add_cell(name, p, m, space.dim)
            report.add_generators(name, biweight_key(p, m), space.describe())
    if args.products:
        bound = min(args.max_p, args.max_weight)
        report.facts["higher_products"] = [
            f"{entry.product} {entry.left} × {entry.right} → {entry.result}: {list(entry.coords)}"
            for entry in higher_product_table(algebra, bound, variant)
        ]
    return report


def cmd_dual(args: argparse.Namespace) -> Report:
    algebra = load_algebra(args)
    presentation = algebra.koszul_dual().presentation
    text = presentation.to_text()
    report = Report(args.command, algebra_summary(algebra, args.max_weight))
    report.facts["dual_relations"] = len(presentation.relations)
    report.facts["presentation"] = text
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"Cannot write {args.output}: {exc}.") from exc
        report.facts["output"] = args.output
    return report


def cmd_duality_check(args: argparse.Namespace) -> Report:
    algebra = load_algebra(args)
    ctx = DualityContext.build(algebra, weight_limit=max(args.max_p, args.max_weight) + 2)
    outcome = duality_report(ctx, args.max_p, args.max_weight, args.trials, make_rng(args.seed), not args.no_higher)
    report = Report(args.command, algebra_summary(algebra, args.max_weight, args.max_p))
    for row in outcome.rows:
        p, m = row.biweight
        report.add_cell(f"{row.table} of A", p, m, row.left)
        report.add_cell(f"{row.table} of A^! (swapped, tilde)", p, m, row.right)
    report.facts["identities"] = outcome.identities
    report.facts["trials"] = outcome.trials
    report.facts["uncertified_rows"] = [
        {"table": row.table, "biweight": list(row.biweight)} for row in outcome.unknown
    ]
    report.facts["negative_controls"] = [
        {"name": control.name, "weight": control.weight, "left": control.left, "right": control.right,
         "differs": control.differs}
        for control in negative_controls(ctx, args.max_weight)
    ]
    return report


def cmd_hochschild(args: argparse.Namespace) -> Report:
    algebra = load_algebra(args)
    kind = ComplexKind.CHAIN if args.kind == "homology" else ComplexKind.COCHAIN
    complex_ = hochschild_complex(algebra)
    name = "HH_p(A)_w" if kind is ComplexKind.CHAIN else "HH^p(A)_w"
    report = Report(args.command, algebra_summary(algebra, args.max_weight, args.max_p))
    comparisons = {}
    totals = {}
    for p in range(args.max_p + 1):
        for weight in complex_.weight_classes(kind, p):
            report.add_cell(name, p, weight, complex_.hh(kind, p, weight).dim)
        totals[str(p)] = complex_.hh_total(kind, p)
        result = comparison(algebra, kind, p)
        comparisons[str(p)] = {
            "rank": result.rank,
            "injective": result.injective,
            "surjective": result.surjective,
            "isomorphism": result.isomorphism,
        }
    report.facts["totals"] = totals
    report.facts["comparison"] = comparisons

    if kind is ComplexKind.CHAIN and algebra.characteristic == 0:
        report.facts["homotopy_formula"] = {str(p): rg_check(algebra, p).holds for p in range(args.max_p)}
    if algebra.characteristic != 2:
        if kind is ComplexKind.CHAIN:
            higher_kinds = [HigherHochschildKind.HOMOLOGY, HigherHochschildKind.DE_RHAM]
        else:
            higher_kinds = [HigherHochschildKind.COHOMOLOGY]
        for higher_kind in higher_kinds:
            table = f"higher Hochschild {higher_kind.value}"
            for p in range(args.max_p):
                for weight, dim in higher_hochschild(algebra, higher_kind, p).items():
                    report.add_cell(table, p, weight, dim)
    return report


def cmd_koszulity(args: argparse.Namespace) -> Report:
    field = Field.parse(args.field) if args.field else None
    presentation, label = resolve_presentation(args.source, field)
    bound = args.max_degree
    algebra = QuadraticAlgebra(presentation, weight_limit=bound + 1, label=label)
    algebra.discover_top_weight(bound + 1)
    result = koszulity(algebra, bound)
    report = Report(args.command, algebra_summary(algebra, bound))
    name = "H_p(K_l(A))_m"
    for p in range(bound + 1):
        for m in range(bound + 1):
            report.add_cell(name, p, m, left_homology(algebra, p, m).dim)
    report.facts["verdict"] = result.verdict
    report.facts["koszul_up_to"] = bound if result.is_koszul else None
    report.facts["failures"] = [list(failure) for failure in result.failures]
    return report


def cmd_selftest(args: argparse.Namespace) -> Report:
    config = SuiteConfig(max_p=args.max_p, max_weight=args.max_weight, trials=args.trials, seed=args.seed)
    outcomes = run_selftest(config, suite_algebras(args.seed, args.random))
    report = Report(args.command)
    report.checks = [outcome.as_dict() for outcome in outcomes]
    report.facts["passed"] = sum(outcome.status == "passed" for outcome in outcomes)
    report.facts["failed"] = sum(outcome.status == "failed" for outcome in outcomes)
    report.facts["skipped"] = sum(outcome.status == "skipped" for outcome in outcomes)
    return report


COMMANDS: dict[str, Callable[[argparse.Namespace], Report]] = {
    "info": cmd_info,
    "wspaces": cmd_wspaces,
    "homology": cmd_homology,
    "cohomology": cmd_cohomology,
    "higher": cmd_higher,
    "dual": cmd_dual,
    "duality-check": cmd_duality_check,
    "hochschild": cmd_hochschild,
    "koszulity": cmd_koszulity,
    "selftest": cmd_selftest,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT

    settings.configure_logging(args.verbose)
    sentry_enabled = settings.init_sentry()
    try:
        report = COMMANDS[args.command](args)
    except InvariantError as exc:
        logger.error("Internal invariant failed: %s", exc, extra={"command": args.command})
        if sentry_enabled:
            sentry_sdk.capture_exception(exc)
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    print(render(report.payload(), args.format))
    if report.failed:
        return EXIT_INTERNAL
    return EXIT_OK


__all__ = ["COMMANDS", "EXIT_INPUT", "EXIT_INTERNAL", "EXIT_OK", "build_parser", "load_algebra", "main"]
