from sympy.polys.domains import QQ

from koszulkit.linalg import Subspace
from koszulkit.tensor import (
    check_split,
    embed_block,
    lift_form,
    rank_word,
    render_vector,
    render_word,
    restrict_form,
    split,
    swap2,
    word_rank,
)


def test_word_rank_uses_the_first_letter_as_most_significant():
    assert word_rank((1, 0, 1), 2) == 5
    assert rank_word(5, 2, 3) == (1, 0, 1)
    assert rank_word(0, 3, 0) == ()


def test_render_word_compresses_runs():
    assert render_word((0, 0, 1), ("x", "y")) == "x^2y"
    assert render_word((), ("x", "y")) == "1"
    assert render_word((0, 1), ("x*", "y*")) == "x* y*"


def test_render_vector_puts_the_leading_word_first():
    vector = {3: QQ(1), 1: QQ(-1)}

    assert render_vector(vector, 2, 2, ("x", "y"), str) == "y^2 - xy"


def test_swap2_exchanges_factors():
    assert swap2({1: QQ(2)}, 2) == {2: QQ(2)}


def test_embed_block_matches_direct_span():
    relation = Subspace.span(4, [{0: QQ(1)}, {3: QQ(1), 1: QQ(-1)}], QQ)
    embedded = embed_block(relation, 2, 1, 0)
    direct = Subspace.span(
        8,
        [{prefix * 4 + col: value for col, value in row.items()} for prefix in range(2) for row in relation.rows],
        QQ,
    )

    assert embedded == direct


def test_split_recomposes_each_basis_vector():
    full = Subspace.full(2, QQ)
    relation = Subspace.span(4, [{0: QQ(1)}, {3: QQ(1), 1: QQ(-1)}], QQ)
    table = split(relation, full, full, 2, 1)

    check_split(table, relation, full, full, 2, 1)
    assert len(table) == 2


def test_lifted_forms_restrict_back():
    space = Subspace.span(4, [{0: QQ(1)}, {3: QQ(1), 1: QQ(-1)}], QQ)
    target = {0: QQ(2), 1: QQ(-1)}

    assert restrict_form(lift_form(target, space), space) == target
