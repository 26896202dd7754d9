"""Rank machinery: exact and modular backends, span membership, primes."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from segsyz.linalg import (
    SparseIntMatrix,
    compose,
    in_column_span,
    is_probable_prime,
    random_prime,
    rank,
)


def dense_to_sparse(grid):
    rows = len(grid)
    cols = len(grid[0]) if rows else 0
    entries = {
        (i, j): v for i, row in enumerate(grid) for j, v in enumerate(row) if v
    }
    return SparseIntMatrix(rows, cols, entries)


def fraction_rank(matrix: SparseIntMatrix) -> int:
    """Plain Gaussian elimination over Fractions; the reference of references."""
    grid = [[Fraction(0)] * matrix.cols for _ in range(matrix.rows)]
    for (i, j), v in matrix.entries.items():
        grid[i][j] = Fraction(v)
    rk = 0
    for col in range(matrix.cols):
        piv = next((i for i in range(rk, matrix.rows) if grid[i][col]), None)
        if piv is None:
            continue
        grid[rk], grid[piv] = grid[piv], grid[rk]
        inv = 1 / grid[rk][col]
        grid[rk] = [x * inv for x in grid[rk]]
        for i in range(matrix.rows):
            if i != rk and grid[i][col]:
                f = grid[i][col]
                grid[i] = [x - f * y for x, y in zip(grid[i], grid[rk])]
        rk += 1
    return rk


def random_matrix(rng, rows, cols, density=0.4, scale=9):
    entries = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                v = rng.randint(-scale, scale)
                if v:
                    entries[(i, j)] = v
    return SparseIntMatrix(rows, cols, entries)


# ---------------------------------------------------------------- shapes


def test_is_zero():
    assert SparseIntMatrix(3, 4, {}).is_zero()
    assert not SparseIntMatrix(3, 4, {(0, 0): 1}).is_zero()


def test_compose_small():
    a = dense_to_sparse([[1, 2], [0, 1]])
    b = dense_to_sparse([[1, 0], [3, -1]])
    ab = compose(a, b)
    assert ab.rows == 2 and ab.cols == 2
    assert ab.entries == {(0, 0): 7, (0, 1): -2, (1, 0): 3, (1, 1): -1}


def test_compose_cancellation_drops_zeros():
    a = dense_to_sparse([[1, 1]])
    b = dense_to_sparse([[1], [-1]])
    assert compose(a, b).is_zero()


def test_compose_shape_mismatch():
    with pytest.raises(ValueError):
        compose(SparseIntMatrix(2, 3, {}), SparseIntMatrix(2, 3, {}))


# ------------------------------------------------------------------ rank


def test_rank_handmade():
    assert rank(dense_to_sparse([[1, 0], [0, 1]]), backend="exact") == 2
    assert rank(dense_to_sparse([[1, 2], [2, 4]]), backend="exact") == 1
    assert rank(SparseIntMatrix(5, 5, {}), backend="exact") == 0
    # block-diagonal: ranks add over components
    m = dense_to_sparse(
        [
            [2, 1, 0, 0],
            [4, 2, 0, 0],
            [0, 0, 3, 0],
            [0, 0, 0, 7],
        ]
    )
    assert rank(m, backend="exact") == 3
    assert rank(m, backend="modular") == 3


def test_rank_backend_name_checked():
    with pytest.raises(ValueError):
        rank(SparseIntMatrix(1, 1, {(0, 0): 1}), backend="float")


def test_rank_random_grid_against_fractions():
    rng = random.Random(20260816)
    for _ in range(40):
        m = random_matrix(rng, rng.randint(1, 12), rng.randint(1, 12))
        want = fraction_rank(m)
        assert rank(m, backend="exact") == want
        assert rank(m, backend="modular") == want


def test_rank_huge_entries():
    """Bareiss growth and mod-p reduction both survive 130-bit entries."""
    big = 10**40
    full = dense_to_sparse(
        [
            [big, big + 1, 3],
            [2 * big, 2 * big + 3, 6],
            [1, 0, big * big],
        ]
    )
    assert fraction_rank(full) == 3
    assert rank(full, backend="exact") == 3
    assert rank(full, backend="modular") == 3
    deficient = dense_to_sparse(
        [
            [big, big + 1, 3],
            [2 * big, 2 * big + 2, 6],  # exactly twice the first row
            [1, 0, big * big],
        ]
    )
    assert fraction_rank(deficient) == 2
    assert rank(deficient, backend="exact") == 2
    assert rank(deficient, backend="modular") == 2


def test_rank_rectangular_rank_deficient():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [1, 1, 1, 1], [0, 1, 2, 3]]
    m = dense_to_sparse(rows)
    assert rank(m, backend="exact") == 2
    assert rank(m, backend="modular") == 2


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_rank_property_random_seeds(seed):
    rng = random.Random(seed)
    m = random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8), density=0.5)
    assert rank(m, backend="exact") == fraction_rank(m)


# ----------------------------------------------------------- column span


def test_in_column_span_basics():
    m = dense_to_sparse([[1, 0], [0, 2], [1, 2]])
    assert in_column_span(m, {0: 1, 2: 1})  # first column
    assert in_column_span(m, {0: 2, 1: 2, 2: 4})  # 2*(c1 + c2/... ) any combo
    assert in_column_span(m, {})  # zero vector
    assert not in_column_span(m, {0: 1})  # (1,0,0) needs c1 minus half c2's rows


def test_in_column_span_rational_combination():
    # vector = (1/2) * column: membership is over the rationals
    m = dense_to_sparse([[2], [4]])
    assert in_column_span(m, {0: 1, 1: 2})


def test_in_column_span_disjoint_component():
    # vector supported on rows no column touches
    m = SparseIntMatrix(4, 2, {(0, 0): 1, (1, 1): 1})
    assert not in_column_span(m, {3: 1})
    assert in_column_span(m, {0: 5})


def test_in_column_span_row_bounds():
    m = SparseIntMatrix(2, 2, {(0, 0): 1})
    with pytest.raises(ValueError):
        in_column_span(m, {2: 1})


def test_in_column_span_random_combinations():
    rng = random.Random(7)
    for _ in range(25):
        m = random_matrix(rng, rng.randint(2, 10), rng.randint(1, 6), density=0.5)
        x = [rng.randint(-3, 3) for _ in range(m.cols)]
        vec = {}
        for (i, j), v in m.entries.items():
            vec[i] = vec.get(i, 0) + v * x[j]
        vec = {i: v for i, v in vec.items() if v}
        assert in_column_span(m, vec)
        # spoil it on a fresh row that no column reaches
        wide = SparseIntMatrix(m.rows + 1, m.cols, dict(m.entries))
        spoiled = dict(vec)
        spoiled[m.rows] = 1
        assert not in_column_span(wide, spoiled)


# ---------------------------------------------------------------- primes


@pytest.mark.parametrize("p", [2, 3, 5, 31, 61, 2**31 - 1, 2**61 - 1])
def test_known_primes(p):
    assert is_probable_prime(p)


@pytest.mark.parametrize(
    "n",
    [
        0,
        1,
        4,
        561,  # Carmichael numbers: Fermat liars to every coprime base
        1105,
        2465,
        6601,
        2**67 - 1,  # Mersenne composite
        (2**31 - 1) * (2**13 - 1),
    ],
)
def test_known_composites(n):
    assert not is_probable_prime(n)


def test_random_prime_bits_and_determinism():
    rng = random.Random(123)
    p = random_prime(30, rng)
    assert is_probable_prime(p)
    assert p.bit_length() == 30
    assert random_prime(30, random.Random(123)) == p
    q = random_prime(62, random.Random(5))
    assert is_probable_prime(q) and q.bit_length() == 62
    with pytest.raises(ValueError):
        random_prime(2)
