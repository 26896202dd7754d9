"""Dotted Weyl action, cohomology dichotomy, Weyl dimension formula."""

import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from segsyz.bott import SINGULAR, BottResult, bwb_cohomology, dotted_sort, schur_dim


def brute_force_dotted_sort(v):
    """Try every permutation; at most one arranges v + rho strictly decreasing."""
    m = len(v)
    rho = tuple(range(m - 1, -1, -1))
    shifted = [x + r for x, r in zip(v, rho)]
    hits = []
    for perm in itertools.permutations(range(m)):
        arranged = [shifted[i] for i in perm]
        if all(x > y for x, y in zip(arranged, arranged[1:])):
            inversions = sum(
                1 for x in range(m) for y in range(x + 1, m) if perm[x] > perm[y]
            )
            dominant = tuple(s - r for s, r in zip(arranged, rho))
            hits.append((inversions, dominant))
    return hits


# ------------------------------------------------------------ dotted sort


def test_dominant_weights_are_fixed_in_degree_zero():
    assert dotted_sort((3, 1, 0)) == BottResult(0, (3, 1, 0))
    assert dotted_sort((0, 0)) == BottResult(0, (0, 0))


def test_singular_cases():
    assert dotted_sort((-1, 0)) is SINGULAR
    assert dotted_sort((-1, 0)).singular
    assert dotted_sort((0, 1)).singular  # shifted (1, 1)
    assert repr(dotted_sort((-1, 0))) == "SINGULAR"


def test_reflection_example():
    got = dotted_sort((-2, 0))
    assert not got.singular
    assert (got.degree, got.dominant) == (1, (-1, -1))


def test_empty_weight_rejected():
    with pytest.raises(ValueError):
        dotted_sort(())


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_dichotomy_against_permutation_search(m):
    rng = random.Random(20260816 + m)
    for _ in range(120):
        v = tuple(rng.randint(-6, 6) for _ in range(m))
        hits = brute_force_dotted_sort(v)
        got = dotted_sort(v)
        if got.singular:
            assert hits == []
        else:
            assert len(hits) == 1
            assert hits[0] == (got.degree, got.dominant)
            assert 0 <= got.degree <= m * (m - 1) // 2
            assert all(x >= y for x, y in zip(got.dominant, got.dominant[1:]))


# ------------------------------------------------------------- cohomology


def test_bwb_validates_alpha():
    with pytest.raises(ValueError):
        bwb_cohomology(0, (1, 2), 3)  # increasing
    with pytest.raises(ValueError):
        bwb_cohomology(0, (1,), 3)  # wrong length


def test_bwb_is_dotted_sort_of_prepended_weight():
    assert bwb_cohomology(3, (1, 0), 3) == dotted_sort((3, 1, 0))
    assert bwb_cohomology(-4, (2, 1, 1), 4) == dotted_sort((-4, 2, 1, 1))


@pytest.mark.parametrize("d", range(-6, 6))
def test_line_bundles_on_p1(d):
    """The classical picture: H^0 for d >= 0, nothing at d = -1, H^1 below."""
    got = bwb_cohomology(d, (0,), 2)
    if d >= 0:
        assert (got.degree, got.dominant) == (0, (d, 0))
        assert schur_dim(got.dominant, 2) == d + 1
    elif d == -1:
        assert got.singular
    else:
        assert (got.degree, got.dominant) == (1, (-1, d + 1))
        assert schur_dim(got.dominant, 2) == -d - 1


def test_serre_duality_on_p1():
    for d in range(2, 8):
        upper = bwb_cohomology(-d, (0,), 2)
        lower = bwb_cohomology(d - 2, (0,), 2)
        assert upper.degree == 1 and lower.degree == 0
        assert schur_dim(upper.dominant, 2) == schur_dim(lower.dominant, 2)


weights = st.integers(-5, 5)


@given(st.integers(-8, 8), st.lists(weights, min_size=1, max_size=3))
@settings(max_examples=200, deadline=None)
def test_positive_degree_needs_a_large_alpha_entry(d, alpha):
    """H^j with j >= 1 forces alpha_j >= d + j + 1 (the jumping condition)."""
    alpha = tuple(sorted(alpha, reverse=True))
    m = len(alpha) + 1
    got = bwb_cohomology(d, alpha, m)
    if not got.singular and got.degree >= 1:
        j = got.degree
        assert alpha[j - 1] >= d + j + 1


# -------------------------------------------------------------- dimensions


def test_schur_dim_reference_values():
    assert schur_dim((8, 1), 2) == 8
    assert schur_dim((7, 1), 2) == 7
    assert schur_dim((3, 3, 2), 3) == 3
    assert schur_dim((3, 3, 2), 3) ** 2 * schur_dim((7, 1), 2) == 63


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_schur_dim_classical_series(m):
    assert schur_dim((0,), m) == 1
    assert schur_dim((1,), m) == m
    for d in range(1, 5):
        assert schur_dim((d,), m) == math.comb(m + d - 1, d)  # Sym^d
    for k in range(1, m + 1):
        assert schur_dim((1,) * k, m) == math.comb(m, k)  # wedge^k


def test_schur_dim_det_twist_invariance():
    lam = (4, 2, 1)
    for m in (3, 4):
        padded = lam + (0,) * (m - len(lam))
        twisted = tuple(x + 1 for x in padded)
        assert schur_dim(twisted, m) == schur_dim(lam, m)


def test_schur_dim_padding_and_validation():
    assert schur_dim((2, 1), 3) == schur_dim((2, 1, 0), 3)
    assert schur_dim((2, -1), 2) == 4  # negative tails fine without padding
    with pytest.raises(ValueError):
        schur_dim((2, -1), 3)  # padding would break monotonicity
    with pytest.raises(ValueError):
        schur_dim((1, 2), 2)
    with pytest.raises(ValueError):
        schur_dim((1, 1, 1), 2)
    with pytest.raises(ValueError):
        schur_dim((1,), 0)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=4), st.integers(1, 5))
@settings(max_examples=150, deadline=None)
def test_schur_dim_positive_integer(lam, m):
    lam = tuple(sorted(lam, reverse=True))
    if len(lam) > m:
        with pytest.raises(ValueError):
            schur_dim(lam, m)
    else:
        assert schur_dim(lam, m) >= 1
