"""Normal forms in the reduced coordinate ring via the straightening law.

The ring in question is generated by variables z_v, one per poset element
v in P(a), subject to two families of relations:

  * incomparable products rewrite through the lattice operations,
    z_u z_v = z_{min(u,v)} z_{max(u,v)};
  * for each weight w the sum of all z_v with |v| = w is zero (these are
    the linear forms cut out by the Artinian reduction), which lets a
    single factor be replaced by minus the sum of the rest of its weight
    class; z_0 and z_a themselves are zero.

A monomial is *standard* when its factors form a strict chain
u^1 < ... < u^r whose consecutive comparison indices satisfy
first_diff(u^i, u^{i+1}) < last_diff(u^{i-1}, u^i) for every i, with the
conventions u^0 = 0, u^{r+1} = a, first_diff(u, u) = +oo and
last_diff(u, u) = -oo.  Standard monomials are a vector-space basis, and
``straighten`` rewrites an arbitrary monomial into that basis.

Monomials are tuples of MultiIndex factors sorted by (weight, lex); linear
combinations are plain dicts {monomial: int} with no zero values.
"""

from __future__ import annotations

from collections import defaultdict
from math import inf

from .lattice import (
    basis_R1,
    first_diff,
    last_diff,
    leq,
    meet_join,
    normalize_dims,
    poset_elements,
    standard_basis_indices,
    weight,
)


class StraighteningLoopError(RuntimeError):
    """Internal guard tripped: a rewriting chain revisited a monomial.

    Step-1 rewrites strictly decrease the sorted weight sequence (lexrk)
    of a monomial and Step-2 rewrites preserve it, so any loop would have
    to sit inside a constant-lexrk stretch; we detect exactly that and
    abort loudly instead of looping or emitting a wrong normal form.
    """


def _factor_key(v):
    return (sum(v), v)


def monomial(factors) -> tuple:
    """Canonical form: factors sorted by weight, ties broken lexicographically."""
    return tuple(sorted((tuple(v) for v in factors), key=_factor_key))


def bidegree(m) -> tuple[int, int]:
    """(degree, rank) = (number of factors, total weight of the factors)."""
    return (len(m), sum(sum(v) for v in m))


def lexrk(m) -> tuple[int, ...]:
    """The sorted weight sequence of the factors."""
    return tuple(sum(v) for v in m)


class _Ring:
    """Per-dimension-vector context: weight classes, caches."""

    __slots__ = ("a", "zero", "classes", "memo", "_standard")

    def __init__(self, a):
        self.a = a
        self.zero = (0,) * len(a)
        classes: dict[int, list] = defaultdict(list)
        for v in poset_elements(a):
            classes[sum(v)].append(v)
        self.classes = dict(classes)
        # memo: monomial -> normal form dict; values must never be mutated.
        self.memo: dict[tuple, dict] = {}
        self._standard = None

    def standard_by_degree(self):
        if self._standard is None:
            by_deg = standard_basis_indices(self.a)
            self._standard = {
                d: [supp for _, supp in entries] for d, entries in by_deg.items()
            }
        return self._standard


_RINGS: dict[tuple, _Ring] = {}


def _ring(a) -> _Ring:
    a = normalize_dims(a)
    ring = _RINGS.get(a)
    if ring is None:
        # setdefault keeps a single instance even under concurrent first use
        ring = _RINGS.setdefault(a, _Ring(a))
    return ring


def _validate_factor(a, v):
    v = tuple(int(x) for x in v)
    if len(v) != len(a):
        raise ValueError(f"factor {v} has length {len(v)}, expected {len(a)}")
    if any(x < 0 or x > b for x, b in zip(v, a)):
        raise ValueError(f"factor {v} outside the box 0..{a}")
    return v


def _f_ext(u, v):
    return inf if u == v else first_diff(u, v)


def _l_ext(u, v):
    return -inf if u == v else last_diff(u, v)


def is_standard(a, factors) -> bool:
    """Whether the monomial is in the standard basis (empty monomial: yes)."""
    ring = _ring(a)
    m = monomial(_validate_factor(ring.a, v) for v in factors)
    r = len(m)
    if r == 0:
        return True
    for i in range(r - 1):
        if m[i] == m[i + 1] or not leq(m[i], m[i + 1]):
            return False
    chain = (ring.zero,) + m + (ring.a,)
    # the chain condition at every interior index, endpoints included
    return all(
        _f_ext(chain[i], chain[i + 1]) < _l_ext(chain[i - 1], chain[i])
        for i in range(1, r + 1)
    )


def _step(m, ring):
    """One rewriting step.

    Returns ("value", lincomb) for base cases (zero or standard) and
    ("children", [(coeff, child_monomial), ...]) otherwise.  Children from
    the incomparable-pair rule (Step 1) strictly decrease lexrk; children
    from the weight-class substitution (Step 2) preserve it.
    """
    r = len(m)
    if r == 0:
        return "value", {(): 1}
    # z_0 = z_a = 0; by the sort order they can only sit at the ends.
    if m[0] == ring.zero or m[-1] == ring.a:
        return "value", {}

    # Step 1: smallest incomparable consecutive pair -> min/max rewrite.
    for i in range(r - 1):
        u, v = m[i], m[i + 1]
        if not leq(u, v):
            mn, mx = meet_join(u, v)
            rest = m[:i] + m[i + 2 :]
            child = monomial(rest + (mn, mx))
            return "children", [(1, child)]

    # Now the factors form a weakly increasing chain.  Step 2: maximal
    # index violating the standardness inequality gets its factor replaced
    # through its weight-class relation.
    chain = (ring.zero,) + m + (ring.a,)
    bad = 0
    for i in range(1, r + 1):
        if not _f_ext(chain[i], chain[i + 1]) < _l_ext(chain[i - 1], chain[i]):
            bad = i
    if bad == 0:
        return "value", {m: 1}
    pos = bad - 1
    u = m[pos]
    rest = m[:pos] + m[pos + 1 :]
    children = []
    for v in ring.classes[weight(u)]:
        if v != u:
            children.append((-1, monomial(rest + (v,))))
    return "children", children


def _add_scaled(acc, terms, coeff):
    for mono, c in terms.items():
        acc[mono] = acc.get(mono, 0) + coeff * c


def _straighten_monomial(m, ring) -> dict:
    """Iterative DFS evaluation of the rewriting, with memo and loop guard.

    An explicit stack avoids deep native recursion (rewriting chains can
    get long), and the on-path set turns any would-be infinite loop into a
    StraighteningLoopError.
    """
    memo = ring.memo
    done = memo.get(m)
    if done is not None:
        return done

    kind, payload = _step(m, ring)
    if kind == "value":
        memo[m] = payload
        return payload

    path = {m}
    base_rk = lexrk(m)
    # frame: [monomial, its lexrk, edge list, next edge index, accumulator]
    stack = [[m, base_rk, payload, 0, {}]]
    while stack:
        frame = stack[-1]
        node, node_rk, edges, idx, acc = frame
        if idx == len(edges):
            memo[node] = {k: v for k, v in acc.items() if v}
            path.discard(node)
            stack.pop()
            continue
        coeff, child = edges[idx]
        got = memo.get(child)
        if got is not None:
            _add_scaled(acc, got, coeff)
            frame[3] = idx + 1
            continue
        if child in path:
            raise StraighteningLoopError(
                f"rewriting revisited {child} while straightening {m}"
            )
        child_rk = lexrk(child)
        if child_rk > node_rk:
            raise StraighteningLoopError(
                f"rewrite increased lexrk: {node} ({node_rk}) -> {child} ({child_rk})"
            )
        kind, payload = _step(child, ring)
        if kind == "value":
            memo[child] = payload
        else:
            path.add(child)
            stack.append([child, child_rk, payload, 0, {}])
    return memo[m]


def straighten(a, factors) -> dict:
    """Normal form of a monomial: {standard_monomial: coefficient}.

    The result is empty exactly when the monomial is zero in the ring
    (e.g. whenever a factor is 0 or a itself).  Every term has the same
    (degree, rank) bidegree as the input.
    """
    ring = _ring(a)
    m = monomial(_validate_factor(ring.a, v) for v in factors)
    return dict(_straighten_monomial(m, ring))


def multiply(a, v, factors) -> dict:
    """Normal form of z_v * m for a standard monomial m.

    Plumbing for the Koszul differential; the result is just the
    straightening of the combined factor list, so the standardness of m is
    assumed, not enforced.
    """
    ring = _ring(a)
    v = _validate_factor(ring.a, v)
    m = monomial((v,) + tuple(tuple(f) for f in factors))
    return dict(_straighten_monomial(m, ring))


def expand_in_B1(a, v) -> dict:
    """Coordinates of z_v in the degree-1 basis, as {(u,): coefficient}.

    Identity on basis elements; the zero dict when |v| is 0 or |a| (those
    weight classes consist of relations only).  Otherwise v is the single
    excluded element of its weight class and the result is -1 on each
    basis element of the class.
    """
    ring = _ring(a)
    v = _validate_factor(ring.a, v)
    if weight(v) in (0, weight(ring.a)):
        return {}
    return dict(_straighten_monomial((v,), ring))


def divides(a, u, factors) -> bool:
    """Whether z_u divides the standard monomial m in the reduced ring.

    True when m appears (nonzero coefficient) in z_u * m' for some standard
    m' of the complementary bidegree; decided by brute force over the
    finitely many candidates, which is fine at the scales this is used.
    """
    ring = _ring(a)
    u = _validate_factor(ring.a, u)
    m = monomial(_validate_factor(ring.a, v) for v in factors)
    if not is_standard(a, m):
        raise ValueError(f"divides() needs a standard monomial, got {m}")
    deg, rk = bidegree(m)
    want_deg, want_rk = deg - 1, rk - weight(u)
    if want_deg < 0 or want_rk < 0:
        return False
    for cand in ring.standard_by_degree().get(want_deg, ()):
        if sum(sum(x) for x in cand) != want_rk:
            continue
        if multiply(a, u, cand).get(m):
            return True
    return False
