"""Words in the generators and the subspaces of tensor powers built from them.

A word ``x_{i_1} ... x_{i_p}`` is stored as its rank ``sum i_k n^(p-k)``, so the
first letter is the most significant digit and rank order is the
lexicographic order of words under the declared generator order.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from typing import Any

from koszulkit.errors import InvariantError
from koszulkit.linalg import Subspace, Vector, add_into

logger = logging.getLogger(__name__)

SplitTable = list[list[tuple[int, int, Any]]]


def word_rank(letters: Sequence[int], n: int) -> int:
    rank = 0
    for letter in letters:
        rank = rank * n + letter
    return rank


def rank_word(rank: int, n: int, p: int) -> tuple[int, ...]:
    letters = [0] * p
    for position in range(p - 1, -1, -1):
        rank, letters[position] = divmod(rank, n)
    return tuple(letters)


def concat_rank(left: int, right: int, n: int, right_length: int) -> int:
    return left * n**right_length + right


def render_word(letters: Sequence[int], names: Sequence[str]) -> str:
    """Render a word with runs compressed, e.g. ``x^2y`` or ``xyx``; the empty word is ``1``."""

    if not letters:
        return "1"
    pieces: list[str] = []
    index = 0
    while index < len(letters):
        run = 1
        while index + run < len(letters) and letters[index + run] == letters[index]:
            run += 1
        name = names[letters[index]]
        pieces.append(name if run == 1 else f"{name}^{run}")
        index += run
    separator = " " if any(len(name) > 1 for name in names) else ""
    return separator.join(pieces)


def render_combination(terms: Iterable[tuple[str, str]]) -> str:
    """Join ``(coefficient, monomial)`` pairs into ``"y^2 - xy"`` style text."""

    text = ""
    for coeff, monomial in terms:
        negative = coeff.startswith("-")
        magnitude = coeff[1:] if negative else coeff
        if magnitude == "1" and monomial != "1":
            body = monomial
        elif monomial == "1":
            body = magnitude
        elif "/" in magnitude:
            body = f"({magnitude}){monomial}"
        else:
            body = f"{magnitude}{monomial}"
        if not text:
            text = f"-{body}" if negative else body
        else:
            text += f" - {body}" if negative else f" + {body}"
    return text or "0"


def render_vector(vector: Vector, n: int, p: int, names: Sequence[str], fmt: Any) -> str:
    """Render a vector of ``V^{⊗p}``, leading (largest) word first."""

    terms = [
        (fmt(vector[rank]), render_word(rank_word(rank, n, p), names))
        for rank in sorted(vector, reverse=True)
        if vector[rank]
    ]
    return render_combination(terms)


def swap2(vector: Vector, n: int) -> Vector:
    """Exchange the two tensor factors of a vector of ``V⊗V``."""

    result: Vector = {}
    for rank, value in vector.items():
        first, second = divmod(rank, n)
        result[second * n + first] = value
    return result


def embed_block(space: Subspace, n: int, left: int, right: int) -> Subspace:
    """``V^{⊗left} ⊗ space ⊗ V^{⊗right}`` inside ``V^{⊗(left+r+right)}``.

    The tensor basis of an echelon basis is again in reduced echelon form, so
    no elimination is needed.
    """

    if left == 0 and right == 0:
        return space
    inner = space.ambient_dim
    outer_right = n**right
    block = inner * outer_right
    pairs: list[tuple[int, Vector]] = []
    for prefix in range(n**left):
        base = prefix * block
        for pivot, row in zip(space.pivots, space.rows):
            for suffix in range(outer_right):
                shifted = {base + col * outer_right + suffix: value for col, value in row.items()}
                pairs.append((base + pivot * outer_right + suffix, shifted))
    pairs.sort(key=lambda item: item[0])
    return Subspace(
        n**left * block,
        tuple(row for _, row in pairs),
        tuple(pivot for pivot, _ in pairs),
        space.domain,
    )


def split(total: Subspace, left: Subspace, right: Subspace, n: int, right_length: int) -> SplitTable:
    """Write every basis vector of ``total`` in the basis ``left_k ⊗ right_l``.

    Returns, for each basis index of ``total``, the list of ``(k, l, coeff)``.
    Raises :class:`InvariantError` when ``total`` is not inside ``left ⊗ right``.
    """

    width = n**right_length
    table: SplitTable = []
    for row in total.rows:
        by_prefix: dict[int, Vector] = {}
        for rank, value in row.items():
            prefix, suffix = divmod(rank, width)
            by_prefix.setdefault(prefix, {})[suffix] = value

        # right coordinates of each prefix slice, regrouped per right basis vector
        per_right: dict[int, Vector] = {}
        for prefix, slice_ in by_prefix.items():
            for l, value in right.coordinates(slice_).items():
                per_right.setdefault(l, {})[prefix] = value

        entries: list[tuple[int, int, Any]] = []
        for l in sorted(per_right):
            for k, value in sorted(left.coordinates(per_right[l]).items()):
                entries.append((k, l, value))
        table.append(entries)
    return table


def restrict_form(form: Vector, space: Subspace) -> Vector:
    """Values of a linear form on ``V^{⊗p}`` at the basis vectors of ``space``."""

    values: Vector = {}
    for index, row in enumerate(space.rows):
        total = None
        for rank, value in row.items():
            coeff = form.get(rank)
            if coeff:
                total = coeff * value if total is None else total + coeff * value
        if total:
            values[index] = total
    return values


def lift_form(target: Vector, space: Subspace) -> Vector:
    """A linear form on ``V^{⊗p}`` restricting to ``target`` on ``space``.

    The lift is supported on the leading words of the basis, which is the
    smallest possible support.
    """

    return {space.pivots[index]: value for index, value in target.items() if value}


def expand(space: Subspace, coords: Vector) -> Vector:
    """The ambient vector with the given coordinates in ``space``."""

    result: Vector = {}
    for index, value in coords.items():
        if value:
            add_into(result, space.rows[index], value)
    return result


def check_split(table: SplitTable, total: Subspace, left: Subspace, right: Subspace, n: int, right_length: int) -> None:
    """Recompose ``total`` from a split table; raise on any mismatch."""

    width = n**right_length
    for index, entries in enumerate(table):
        rebuilt: Vector = {}
        for k, l, coeff in entries:
            for lrank, lvalue in left.rows[k].items():
                for rrank, rvalue in right.rows[l].items():
                    add_into(rebuilt, {lrank * width + rrank: lvalue * rvalue}, coeff)
        if rebuilt != {rank: value for rank, value in total.rows[index].items() if value}:
            raise InvariantError(f"Split table does not recompose basis vector {index}.")


__all__ = [
    "SplitTable",
    "check_split",
    "concat_rank",
    "embed_block",
    "expand",
    "lift_form",
    "rank_word",
    "render_combination",
    "render_vector",
    "render_word",
    "restrict_form",
    "split",
    "swap2",
    "word_rank",
]
