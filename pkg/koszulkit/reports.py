"""Report payloads shared by the CLI: JSON serialization and markdown rendering.

The markdown view is computed from the JSON payload alone, so both formats
always describe the same numbers.
"""
from __future__ import annotations

import json
import logging
import re
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any, Final

from koszulkit.algebra import QuadraticAlgebra
from koszulkit.errors import TruncationError
from koszulkit.koszul import w_dim

logger = logging.getLogger(__name__)

SCHEMA_VERSION: Final = "1"
UNKNOWN: Final = "?"
_KEY: Final = re.compile(r"^\((-?\d+),(-?\d+)\)$")


def biweight_key(p: int, m: int) -> str:
    return f"({p},{m})"


def parse_key(key: str) -> tuple[int, int]:
    match = _KEY.match(key)
    if not match:
        raise ValueError(f"{key!r} is not a biweight key")
    return int(match.group(1)), int(match.group(2))


@dataclass
class Report:
    """Everything one CLI command produced."""

    command: str
    algebra: dict[str, Any] = field(default_factory=dict)
    tables: dict[str, dict[str, int | None]] = field(default_factory=dict)
    generators: dict[str, dict[str, list[str]]] = field(default_factory=dict)
    facts: dict[str, Any] = field(default_factory=dict)
    checks: list[dict[str, Any]] = field(default_factory=list)

    def add_cell(self, table: str, p: int, m: int, dim: int | None) -> None:
        if dim is None:
            logger.info("Cell %s of %s rendered as unknown", biweight_key(p, m), table)
        self.tables.setdefault(table, {})[biweight_key(p, m)] = dim

    def add_generators(self, table: str, key: str, descriptions: Iterable[str]) -> None:
        descriptions = list(descriptions)
        if descriptions:
            self.generators.setdefault(table, {})[key] = descriptions

    @property
    def failed(self) -> bool:
        return any(check.get("status") == "failed" for check in self.checks)

    def payload(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "algebra": self.algebra,
            "tables": self.tables,
            "generators": self.generators,
            "facts": self.facts,
            "checks": self.checks,
        }

    def to_json(self) -> str:
        return to_json(self.payload())


def to_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=True)


def algebra_summary(algebra: QuadraticAlgebra, max_weight: int, max_p: int | None = None) -> dict[str, Any]:
    """Generators, relations and the dimensions that are computable within the truncation."""

    presentation = algebra.presentation
    dims: list[int | None] = []
    for m in range(max_weight + 1):
        try:
            dims.append(algebra.dim(m))
        except TruncationError:
            dims.append(None)
    summary: dict[str, Any] = {
        "label": algebra.label,
        "field": str(algebra.field),
        "gens": list(algebra.gens),
        "relations": [presentation.format_relation(vector) for vector in presentation.relations],
        "dims": dims,
        "top_weight": algebra.top_weight,
    }
    if max_p is not None:
        summary["w_dims"] = [w_dim(algebra, p) for p in range(max_p + 1)]
    return summary


def _cell(value: Any) -> str:
    return UNKNOWN if value is None else str(value)


def _escape(value: Any) -> str:
    return str(value).replace("|", "\\|")


def _markdown_table(headers: list[str], rows: Iterable[list[Any]]) -> str:
    lines: list[str] = [
        "| " + " | ".join(headers) + " |",
        "| " + " | ".join(["---"] * len(headers)) + " |",
    ]
    for row in rows:
        lines.append("| " + " | ".join(_escape(value) for value in row) + " |")
    return "\n".join(lines)


def _grid(name: str, cells: dict[str, int | None]) -> str:
    parsed = {parse_key(key): value for key, value in cells.items()}
    rows = sorted({p for p, _ in parsed})
    columns = sorted({m for _, m in parsed})
    body = [
        [str(p), *(_cell(parsed[(p, m)]) if (p, m) in parsed else "" for m in columns)]
        for p in rows
    ]
    lines = [f"### {name}", "", _markdown_table(["p \\ m", *(str(m) for m in columns)], body), ""]
    for p in rows:
        values = [value for (q, _), value in parsed.items() if q == p]
        total = sum(value for value in values if value is not None)
        bound = "≥" if any(value is None for value in values) else ""
        lines.append(f"({p},*) total {bound}{total}")
    return "\n".join(lines)


def _render_value(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    return _cell(value)


def render_table(payload: dict[str, Any]) -> str:
    """Markdown rendering of a report payload."""

    algebra = payload.get("algebra") or {}
    sections: list[str] = []
    title = f"## {payload.get('command', '')}"
    if algebra.get("label"):
        title += f": {algebra['label']}"
    sections.append(title)

    if algebra:
        lines = [
            f"field: {algebra.get('field', '')}",
            f"gens: {' '.join(algebra.get('gens', []))}",
            f"relations: {', '.join(algebra.get('relations', [])) or 'none'}",
            f"dims: {', '.join(_cell(value) for value in algebra.get('dims', []))}",
            f"top weight: {_cell(algebra.get('top_weight'))}",
        ]
        if "w_dims" in algebra:
            lines.append(f"dim W_p: {', '.join(str(value) for value in algebra['w_dims'])}")
        sections.append("\n".join(lines))

    for name in sorted(payload.get("tables") or {}):
        sections.append(_grid(name, payload["tables"][name]))

    generators = payload.get("generators") or {}
    for name in sorted(generators):
        lines = [f"### generators of {name}", ""]
        for key in sorted(generators[name], key=_generator_order):
            lines.append(f"- {key}: " + "; ".join(generators[name][key]))
        sections.append("\n".join(lines))

    facts = payload.get("facts") or {}
    if facts:
        sections.append("\n".join(f"- {key}: {_render_value(facts[key])}" for key in sorted(facts)))

    checks = payload.get("checks") or []
    if checks:
        rows = [[check["name"], check["algebra"], check["status"], check.get("detail", "")] for check in checks]
        sections.append(_markdown_table(["Check", "Algebra", "Status", "Detail"], rows))

    return "\n\n".join(sections)


def _generator_order(key: str) -> tuple[int, ...]:
    try:
        return parse_key(key)
    except ValueError:
        return (int(key),) if key.lstrip("-").isdigit() else (0,)


def render(payload: dict[str, Any], fmt: str) -> str:
    return to_json(payload) if fmt == "json" else render_table(payload)


__all__ = [
    "SCHEMA_VERSION",
    "Report",
    "algebra_summary",
    "biweight_key",
    "parse_key",
    "render",
    "render_table",
    "to_json",
]
