"""Named algebras shipped with the package and the ``@name`` lookup used by the CLI."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Final

import yaml

from koszulkit.algebra import Presentation, QuadraticAlgebra, load_presentation, parse_presentation
from koszulkit.errors import ConfigurationError, InputError
from koszulkit.scalars import Field

logger = logging.getLogger(__name__)

CATALOGUE_FILE: Final = Path(__file__).resolve().with_name("catalogue.yml")


@dataclass(frozen=True)
class CatalogueEntry:
    """A presentation together with the facts known about it."""

    name: str
    description: str
    text: str
    koszul: bool | None = None
    dims: tuple[int, ...] = ()

    def presentation(self, field: Field | None = None) -> Presentation:
        return parse_presentation(self.text, field)

    def algebra(self, field: Field | None = None, weight_limit: int | None = None) -> QuadraticAlgebra:
        return QuadraticAlgebra(self.presentation(field), weight_limit=weight_limit, label=self.name)


def _entry(name: str, data: Any) -> CatalogueEntry:
    if not isinstance(data, dict) or not isinstance(data.get("presentation"), str):
        raise ConfigurationError(f"Catalogue entry {name!r} needs a 'presentation' text block.")
    koszul = data.get("koszul")
    if koszul is not None and not isinstance(koszul, bool):
        raise ConfigurationError(f"Catalogue entry {name!r}: 'koszul' must be true or false.")
    dims = data.get("dims") or []
    if not all(isinstance(value, int) and value >= 0 for value in dims):
        raise ConfigurationError(f"Catalogue entry {name!r}: 'dims' must list nonnegative integers.")
    return CatalogueEntry(
        name=name,
        description=str(data.get("description", "")),
        text=data["presentation"],
        koszul=koszul,
        dims=tuple(dims),
    )


def load_catalogue(path: str | Path | None = None) -> dict[str, CatalogueEntry]:
    """Return the catalogue keyed by entry name, in file order."""

    path = Path(path) if path is not None else CATALOGUE_FILE
    if not path.exists():
        raise ConfigurationError(f"Catalogue file not found: {path}.")
    try:
        with path.open("r", encoding="utf-8") as handle:
            data = yaml.safe_load(handle) or {}
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"Catalogue file {path} is not valid YAML: {exc}") from exc

    algebras = data.get("algebras") or {}
    if not isinstance(algebras, dict):
        raise ConfigurationError(f"Catalogue file {path}: 'algebras' must be a mapping.")
    return {str(name): _entry(str(name), body) for name, body in algebras.items()}


def get_entry(name: str, path: str | Path | None = None) -> CatalogueEntry:
    entries = load_catalogue(path)
    if name not in entries:
        raise InputError(f"Unknown catalogue entry {name!r}; available: {', '.join(entries)}.")
    return entries[name]


def resolve_presentation(source: str, field: Field | None = None) -> tuple[Presentation, str]:
    """Read ``source`` as ``@name`` or as a presentation file; returns the presentation and a label."""

    if source.startswith("@"):
        entry = get_entry(source[1:])
        logger.debug("Using catalogue entry %s", entry.name)
        return entry.presentation(field), entry.name
    try:
        return load_presentation(source, field), Path(source).stem
    except FileNotFoundError as exc:
        raise InputError(f"Presentation file not found: {source}.") from exc
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"Cannot read presentation file {source}: {exc}.") from exc


__all__ = [
    "CATALOGUE_FILE",
    "CatalogueEntry",
    "get_entry",
    "load_catalogue",
    "resolve_presentation",
]
