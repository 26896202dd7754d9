"""Lattice-path combinatorics on a product of chains.

For a dimension vector a = (a_1 >= ... >= a_n) the ambient poset is

    P(a) = { v in Z^n : 0 <= v_k <= a_k },  ordered componentwise.

A *lattice path* is a maximal chain from 0 to a, recorded by its step
sequence s_1..s_{|a|}, where s_t in {1..n} names the coordinate that
increases at time t.  A *descent* of a path is a time t with s_t > s_{t+1}.
Paths with d descents index a basis of the degree-d piece of the reduced
coordinate ring, which is why everything downstream (straightening, Koszul
homology) is phrased in terms of the functions in this module.

Coordinates are numbered 1..n throughout, matching the usual convention
for the comparison indices first_diff/last_diff.
"""

from __future__ import annotations

import itertools

# A point of P(a) is a plain tuple of ints; a dimension vector likewise.
MultiIndex = tuple

_MAX_ENTRY = 255


def normalize_dims(a) -> tuple[int, ...]:
    """Canonical form of a dimension vector: sorted descending, zeros dropped.

    Dropping zero entries never changes any output (a factor of dimension
    zero is a point), and sorting collapses permuted inputs, which describe
    the same variety.  Entries above 255 are rejected: the package targets
    desk-scale inputs and several encodings assume small coordinates.
    """
    vals = [int(x) for x in a]
    if not vals:
        raise ValueError("dimension vector is empty")
    if any(x < 0 for x in vals):
        raise ValueError("dimension vector entries must be non-negative")
    if any(x > _MAX_ENTRY for x in vals):
        raise ValueError(f"dimension vector entries above {_MAX_ENTRY} are not supported")
    vals = sorted((x for x in vals if x > 0), reverse=True)
    if not vals:
        raise ValueError("dimension vector needs at least one positive entry")
    return tuple(vals)


def weight(v) -> int:
    """|v| = v_1 + ... + v_n."""
    return sum(v)


def _check_lengths(u, v):
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")


def leq(u, v) -> bool:
    """Componentwise comparison u <= v in P(a)."""
    _check_lengths(u, v)
    return all(x <= y for x, y in zip(u, v))


def meet_join(u, v):
    """Componentwise (min, max).  Note |min| + |max| = |u| + |v|."""
    _check_lengths(u, v)
    mn = tuple(min(x, y) for x, y in zip(u, v))
    mx = tuple(max(x, y) for x, y in zip(u, v))
    return mn, mx


def first_diff(u, v) -> int:
    """Smallest 1-based index i with u_i < v_i.

    Raises ValueError when no coordinate of u is below the matching
    coordinate of v (in particular when u = v).
    """
    _check_lengths(u, v)
    for i, (x, y) in enumerate(zip(u, v), start=1):
        if x < y:
            return i
    raise ValueError(f"no coordinate with u < v for u={u}, v={v}")


def last_diff(u, v) -> int:
    """Largest 1-based index i with u_i < v_i (ValueError when none)."""
    _check_lengths(u, v)
    for i in range(len(u), 0, -1):
        if u[i - 1] < v[i - 1]:
            return i
    raise ValueError(f"no coordinate with u < v for u={u}, v={v}")


def poset_elements(a) -> list[MultiIndex]:
    """All points of P(a), sorted by (weight, lex).  Size = prod(a_k + 1)."""
    a = normalize_dims(a)
    pts = itertools.product(*(range(x + 1) for x in a))
    return sorted(pts, key=lambda v: (sum(v), v))


class LatticePath:
    """An increasing lattice path from 0 to some endpoint, as its steps.

    ``steps[t-1]`` is the coordinate (1-based) that jumps at time t; the
    ambient length n must be given since trailing coordinates may never
    move.  Instances are immutable and hashable.
    """

    __slots__ = ("steps", "n")

    def __init__(self, steps, n: int):
        steps = tuple(steps)
        if any(not 1 <= s <= n for s in steps):
            raise ValueError(f"step indices must lie in 1..{n}: {steps}")
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("LatticePath is immutable")

    def point(self, t: int) -> MultiIndex:
        """The lattice point reached after t steps; point(0) = 0."""
        if not 0 <= t <= len(self.steps):
            raise ValueError(f"time {t} outside 0..{len(self.steps)}")
        v = [0] * self.n
        for s in self.steps[:t]:
            v[s - 1] += 1
        return tuple(v)

    @property
    def endpoint(self) -> MultiIndex:
        return self.point(len(self.steps))

    @property
    def descents(self) -> frozenset:
        """Times t with steps[t] < steps[t-1] (1-based, in 1..len-1)."""
        s = self.steps
        return frozenset(t for t in range(1, len(s)) if s[t - 1] > s[t])

    def support(self) -> tuple[MultiIndex, ...]:
        """Points at descent times, in chain order -- the monomial support."""
        return tuple(self.point(t) for t in sorted(self.descents))

    def __eq__(self, other):
        return (
            isinstance(other, LatticePath)
            and self.steps == other.steps
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.steps, self.n))

    def __repr__(self):
        return f"LatticePath({self.steps}, n={self.n})"


def enumerate_paths(a) -> list[LatticePath]:
    """All increasing lattice paths from 0 to a, in lex order on steps.

    The count is the multinomial coefficient |a|! / (a_1! ... a_n!); the
    lex order on step sequences is what fixes every downstream basis
    layout, so it must not change.
    """
    a = normalize_dims(a)
    n = len(a)
    total = sum(a)
    remaining = list(a)
    out: list[LatticePath] = []
    steps: list[int] = []

    def rec():
        if len(steps) == total:
            out.append(LatticePath(steps, n))
            return
        for k in range(n):
            if remaining[k]:
                remaining[k] -= 1
                steps.append(k + 1)
                rec()
                steps.pop()
                remaining[k] += 1

    rec()
    return out


def no_descent_path(v) -> LatticePath:
    """The unique descent-free path from 0 to v: fill coordinate 1, then 2, ..."""
    if any(x < 0 for x in v):
        raise ValueError(f"negative coordinate in {v}")
    steps = []
    for k, x in enumerate(v, start=1):
        steps.extend([k] * x)
    return LatticePath(steps, len(v))


def concat_paths(points) -> LatticePath:
    """Path through a chain 0 = u^0 < u^1 < ... < u^{r+1}, descent-free between stops.

    Concatenates the no-descent paths of the consecutive differences, so
    the result visits every chain point: point(|u^i|) = u^i.  The chain
    must be strictly increasing (componentwise) and start at 0.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("empty chain")
    if any(x != 0 for x in pts[0]):
        raise ValueError(f"chain must start at the zero vector, got {pts[0]}")
    steps: list[int] = []
    for lo, hi in zip(pts, pts[1:]):
        if lo == hi or not leq(lo, hi):
            raise ValueError(f"chain is not strictly increasing at {lo} -> {hi}")
        diff = tuple(y - x for x, y in zip(lo, hi))
        steps.extend(no_descent_path(diff).steps)
    return LatticePath(steps, len(pts[0]))


def standard_basis_indices(a) -> dict[int, list[tuple[LatticePath, tuple[MultiIndex, ...]]]]:
    """Standard basis index data, grouped by degree.

    Maps d to the list of (path, support) pairs over all paths with exactly
    d descents, where support = (gamma(t) : t in Desc(gamma)) is the factor
    list of the corresponding standard monomial.  Within a degree the order
    is inherited from enumerate_paths, i.e. lex on step sequences.  The
    total count over all degrees is the multinomial coefficient.
    """
    out: dict[int, list[tuple[LatticePath, tuple[MultiIndex, ...]]]] = {}
    for path in enumerate_paths(a):
        supp = path.support()
        out.setdefault(len(supp), []).append((path, supp))
    return out


def basis_R1(a) -> list[MultiIndex]:
    """Degree-1 standard basis: {v : last_diff(0,v) > first_diff(v,a)}.

    These are the poset elements that are neither 0 nor a nor on the
    "staircase" filling coordinates left to right; exactly one element of
    each weight class 0..|a| is excluded, so the size is
    prod(a_k + 1) - (|a| + 1).  Sorted by (weight, lex) -- the fixed total
    order used for every wedge basis downstream.
    """
    a = normalize_dims(a)
    out = []
    for v in itertools.product(*(range(x + 1) for x in a)):
        last_nonzero = 0
        first_nonfull = 0
        for i in range(len(a), 0, -1):
            if v[i - 1] > 0:
                last_nonzero = i
                break
        for i in range(1, len(a) + 1):
            if v[i - 1] < a[i - 1]:
                first_nonfull = i
                break
        if last_nonzero and first_nonfull and last_nonzero > first_nonfull:
            out.append(v)
    out.sort(key=lambda v: (sum(v), v))
    return out
