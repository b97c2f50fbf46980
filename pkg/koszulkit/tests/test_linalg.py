import pytest
from sympy.polys.domains import QQ

from koszulkit import settings
from koszulkit.algebra import make_rng
from koszulkit.errors import InvariantError
from koszulkit.linalg import (
    LinearMap,
    Subspace,
    add_into,
    homology_at,
    image_basis,
    intersect,
    kernel_basis,
    quotient,
    rref,
)


def q(value):
    return QQ(value)


def test_add_into_drops_cancelled_entries():
    target = {0: q(1), 1: q(2)}
    add_into(target, {0: q(1), 1: q(1)}, q(-1))

    assert target == {1: q(1)}


def test_rref_leads_with_the_largest_column():
    rows, pivots = rref([{0: q(1), 2: q(2)}, {1: q(1), 2: q(1)}], 3, QQ)

    assert pivots == [1, 2]
    assert all(row[pivot] == q(1) for row, pivot in zip(rows, pivots))
    assert 2 not in rows[0]


def test_subspace_membership_and_coordinates():
    space = Subspace.span(3, [{0: q(1), 2: q(1)}], QQ)

    assert space.dim == 1
    assert space.pivots == (2,)
    assert space.contains({0: q(2), 2: q(2)})
    assert not space.contains({0: q(1)})
    assert space.coordinates({0: q(3), 2: q(3)}) == {0: q(3)}
    with pytest.raises(InvariantError):
        space.coordinates({0: q(1)})


def test_quotient_representatives_avoid_leading_columns():
    space = Subspace.span(3, [{0: q(1), 2: q(1)}], QQ)
    classes = quotient(3, space)

    assert classes.reps == (0, 1)
    assert classes.project_unit(2) == {0: q(-1)}
    assert classes.project({0: q(1), 2: q(1)}) == {}


def test_intersect_of_coordinate_planes():
    first = Subspace.span(3, [{0: q(1)}, {1: q(1)}], QQ)
    second = Subspace.span(3, [{1: q(1)}, {2: q(1)}], QQ)

    assert intersect([first, second]) == Subspace.span(3, [{1: q(1)}], QQ)


def test_kernel_and_image_have_complementary_dimensions():
    f = LinearMap.from_columns([{0: q(1)}, {0: q(1)}, {}], 1, QQ)

    kernel = kernel_basis(f)
    assert kernel.dim == 2
    assert kernel.contains({0: q(1), 1: q(-1)})
    assert image_basis(f).dim == 1
    assert f.rank() == 1


def test_inverse_composes_to_identity():
    f = LinearMap.from_columns([{0: q(2), 1: q(1)}, {1: q(1)}], 2, QQ)

    assert f.compose(f.inverse()) == LinearMap.identity(2, QQ)


def test_homology_at_counts_cycles_modulo_boundaries():
    d_in = LinearMap.from_columns([{0: q(1)}], 2, QQ)
    d_out = LinearMap.from_columns([{}, {0: q(1)}], 1, QQ)

    assert homology_at(d_in, d_out).dim == 0
    assert homology_at(LinearMap.zero(0, 2, QQ), d_out).dim == 1
    homology = homology_at(LinearMap.zero(0, 2, QQ), LinearMap.zero(2, 0, QQ))
    assert homology.dim == 2
    assert homology.is_cycle(homology.representative(1))


def test_homology_at_rejects_non_complexes():
    d_in = LinearMap.from_columns([{0: q(1)}], 1, QQ)
    d_out = LinearMap.from_columns([{0: q(1)}], 1, QQ)

    with pytest.raises(InvariantError):
        homology_at(d_in, d_out)


def naive_rank(matrix):
    rows = [[q(value) for value in row] for row in matrix]
    rank = 0
    for col in range(len(rows[0]) if rows else 0):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col] / rows[rank][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def random_matrix(rng, rows, cols):
    return [[int(value) for value in rng.integers(-2, 3, size=cols)] for _ in range(rows)]


@pytest.mark.parametrize("shape", [(3, 3), (4, 6), (6, 4), (5, 5)])
def test_rank_matches_dense_elimination(shape):
    rng = make_rng(42)
    for _ in range(5):
        matrix = random_matrix(rng, *shape)
        columns = [{i: q(matrix[i][j]) for i in range(shape[0]) if matrix[i][j]} for j in range(shape[1])]

        assert LinearMap.from_columns(columns, shape[0], QQ).rank() == naive_rank(matrix)


def test_fraction_free_path_agrees(mocker):
    rows = [{0: q(2), 1: q(4), 2: q(6)}, {0: q(1), 2: q(3)}, {1: q(1)}]
    expected = rref(rows, 3, QQ)

    mocker.patch.object(settings, "USE_BAREISS", True)

    assert rref(rows, 3, QQ) == expected
