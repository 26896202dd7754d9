"""Explicit non-vanishing certificates: Koszul cycles that are not boundaries.

Two constructions are implemented.  For the first table row (q = 1) on an
arbitrary dimension vector, the core monomial is z_{(0,...,0,1)} and the
wedge factors come from an explicit annihilator family of size
(a_1+1)...(a_{n-1}+1) + a_n - 2.  For every row on the all-ones vector
1^n, the core is the chain monomial z_{(0^{n-1},1)} ... z_{(0^{n-q},1^q)}
and the wedge factors are 0/1-vectors from an annihilator set A containing
a distinguished divisor subset D that any valid support must include.

A witness is verified machine-exactly: the built chain element must map to
zero under the differential, and must stay outside the column span of the
incoming differential (a rank comparison done with exact arithmetic
regardless of any configured fast path).
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from .koszul import differential, koszul_basis
from .lattice import basis_R1, normalize_dims, weight
from .linalg import in_column_span
from .straighten import _ring, expand_in_B1, is_standard, monomial, multiply

_ORDER = lambda v: (sum(v), v)  # the package-wide total order on indices


@dataclass(frozen=True)
class CycleSpec:
    """A candidate witness: (wedge of z_v over support) tensor core.

    support lists p distinct lattice points whose z_v all annihilate the
    standard monomial core; the cycle property follows from exactly that.
    """

    a: tuple
    p: int
    q: int
    support: tuple
    core: tuple


def witness_core(n: int, q: int) -> tuple:
    """Core monomial for row q on 1^n: the staircase chain of q factors.

    Factor k is (0^{n-k}, 1^k); the result is standard with rank
    1 + 2 + ... + q.
    """
    n, q = int(n), int(q)
    if not 1 <= q <= n - 1:
        raise ValueError(f"need 1 <= q <= n-1, got q={q}, n={n}")
    return monomial(tuple((0,) * (n - k) + (1,) * k) for k in range(1, q + 1))


def annihilator_set(n: int, q: int) -> set:
    """0/1 vectors whose variables annihilate witness_core(n, q).

    All v with some zero among the last q coordinates, plus the top factor
    (0^{n-q}, 1^q) itself, minus the leading-zero staircase
    {(0, 1^i, 0^{n-i-1})}.  Size: 2^n - 2^{n-q} - q.
    """
    n, q = int(n), int(q)
    if not 1 <= q <= n - 1:
        raise ValueError(f"need 1 <= q <= n-1, got q={q}, n={n}")
    out = set()
    for v in itertools.product((0, 1), repeat=n):
        if any(v[i] == 0 for i in range(n - q, n)):
            out.add(v)
    out.add((0,) * (n - q) + (1,) * q)
    for i in range(q + 1):
        out.discard((0,) + (1,) * i + (0,) * (n - i - 1))
    return out


def divisor_set(n: int, q: int) -> set:
    """The 0/1 vectors supported on coordinate 1 and the last q coordinates,
    except 0 and (1, 0^{n-q-1}, 1^q).  Size 2^{q+1} - 2; contained in
    annihilator_set(n, q) whenever n >= q + 2 (at n = q + 1 the two support
    blocks overlap and part of the staircase leaks in).

    Every degree-1 basis element dividing the core's annihilator products
    lies here, which is what pins wedge supports of surviving terms.
    """
    n, q = int(n), int(q)
    if not 1 <= q <= n - 1:
        raise ValueError(f"need 1 <= q <= n-1, got q={q}, n={n}")
    out = set()
    for first in (0, 1):
        for tail in itertools.product((0, 1), repeat=q):
            v = (first,) + (0,) * (n - q - 1) + tail
            out.add(v)
    out.discard((0,) * n)
    out.discard((1,) + (0,) * (n - q - 1) + (1,) * q)
    return out


def kp1_annihilator_set(a) -> set:
    """Annihilators of z_{(0,...,0,1)} for the q = 1 witnesses, any a.

    The union of {(i_1,...,i_{n-1}, 0) != 0} and {(0,...,0,j) : 2 <= j <= a_n},
    of size (a_1+1)...(a_{n-1}+1) + a_n - 2.  Every entry of a must be
    positive: a zero entry means the factor contributes no coordinates and
    the construction below would silently describe a different variety.
    """
    raw = [int(x) for x in a]
    if any(x == 0 for x in raw):
        raise ValueError("kp1_annihilator_set needs every a_i >= 1")
    a = normalize_dims(raw)
    n = len(a)
    out = set()
    for prefix in itertools.product(*(range(x + 1) for x in a[: n - 1])):
        v = prefix + (0,)
        if any(v):
            out.add(v)
    for j in range(2, a[-1] + 1):
        out.add((0,) * (n - 1) + (j,))
    return out


def make_cycle_spec(a, p: int, q: int = 1) -> CycleSpec:
    """The package's fixed witness choice at (p, q).

    q = 1 works for any dimension vector: the support is the first p
    elements of the annihilator family in (weight, lex) order.  q >= 2
    requires the all-ones vector; the support is the divisor set extended
    by the smallest elements of the annihilator set, again in the fixed
    order.
    """
    a = normalize_dims(a)
    n = len(a)
    p = int(p)
    q = int(q)
    if q == 1:
        pool = sorted(kp1_annihilator_set(a), key=_ORDER)
        if not 1 <= p <= len(pool):
            raise ValueError(f"q=1 witnesses exist for 1 <= p <= {len(pool)}, got {p}")
        support = tuple(pool[:p])
        core = monomial([(0,) * (n - 1) + (1,)])
    else:
        if any(x != 1 for x in a):
            raise ValueError("rows q >= 2 have witness constructions only for all-ones vectors")
        if n < q + 2:
            # at n = q+1 the divisor set escapes the annihilator set and the
            # construction below stops producing cycles
            raise ValueError(f"row-{q} witnesses need at least {q + 2} factors, got {n}")
        core = witness_core(n, q)
        dset = sorted(divisor_set(n, q), key=_ORDER)
        extras = sorted(annihilator_set(n, q) - set(dset))
        if not len(dset) <= p <= len(dset) + len(extras):
            raise ValueError(
                f"row-{q} witnesses exist for {len(dset)} <= p <= {len(dset) + len(extras)}, got {p}"
            )
        support = tuple(sorted(dset + extras[: p - len(dset)], key=_ORDER))
    return CycleSpec(a=a, p=p, q=q, support=support, core=core)


def _support_is_independent(a, support) -> bool:
    # Independence of {z_v : v in support} in the degree-1 piece: no weight
    # class may be entirely contained in the support (one linear relation
    # per class is all there is).
    ring = _ring(a)
    chosen = defaultdict(set)
    for v in support:
        chosen[weight(v)].add(v)
    return all(
        len(chosen[w]) < len(ring.classes[w]) for w in chosen
    )


def build_cycle(spec: CycleSpec) -> dict:
    """Coordinates of the witness element in the wedge^p B_1 (x) R_q basis.

    Non-basis support members are rewritten through their weight-class
    relations, the wedge is expanded multilinearly (repetitions drop out,
    transpositions flip signs), and the core rides along unchanged.
    Raises if the spec is malformed: wrong support size, a support member
    failing to annihilate the core, or a linearly dependent support.
    """
    a = normalize_dims(spec.a)
    support = tuple(tuple(v) for v in spec.support)
    core = monomial(spec.core)
    if len(set(support)) != len(support) or len(support) != spec.p:
        raise ValueError("support must consist of p distinct lattice points")
    if not is_standard(a, core):
        raise ValueError(f"core {core} is not a standard monomial")
    if len(core) != spec.q:
        raise ValueError(f"core degree {len(core)} does not match q = {spec.q}")
    for v in support:
        if multiply(a, v, core):
            raise ValueError(f"support member {v} does not annihilate the core")
    if not _support_is_independent(a, support):
        raise ValueError("support is linearly dependent in the degree-1 piece")

    index = {v: i for i, v in enumerate(basis_R1(a))}
    expansions = []
    for v in support:
        terms = [(index[u], c) for (u,), c in expand_in_B1(a, v).items()]
        expansions.append(terms)

    out: dict = {}
    for combo in itertools.product(*expansions):
        idxs = [i for i, _ in combo]
        if len(set(idxs)) != len(idxs):
            continue  # repeated wedge factor
        coeff = 1
        for _, c in combo:
            coeff *= c
        # sign of the permutation sorting idxs ascending
        inversions = sum(
            1
            for x in range(len(idxs))
            for y in range(x + 1, len(idxs))
            if idxs[x] > idxs[y]
        )
        if inversions % 2:
            coeff = -coeff
        key = (tuple(sorted(idxs)), core)
        val = out.get(key, 0) + coeff
        if val:
            out[key] = val
        else:
            out.pop(key, None)
    if not out:
        raise ValueError("witness expansion collapsed to zero")
    return out


def verify_witness(spec: CycleSpec, budget: int | None = None) -> dict:
    """Machine check of a witness: {"is_cycle": ..., "is_boundary": ...}.

    is_cycle applies the differential to the built element term by term and
    checks for exact cancellation.  is_boundary compares the exact rank of
    the incoming differential with and without the element appended -- the
    fast modular path is deliberately not trusted for this.
    """
    a = normalize_dims(spec.a)
    cycle = build_cycle(spec)
    b1 = basis_R1(a)

    image: dict = defaultdict(int)
    for (subset, mono), coeff in cycle.items():
        for pos, b1_index in enumerate(subset):
            sign = -1 if pos % 2 else 1
            for out_mono, c in multiply(a, b1[b1_index], mono).items():
                image[(subset[:pos] + subset[pos + 1 :], out_mono)] += sign * coeff * c
    is_cycle = not any(image.values())

    rows = {key: i for i, key in enumerate(koszul_basis(a, spec.p, spec.q))}
    vector = {rows[key]: coeff for key, coeff in cycle.items()}
    incoming = differential(a, spec.p + 1, spec.q - 1, budget=budget)
    is_boundary = in_column_span(incoming, vector)
    return {"is_cycle": is_cycle, "is_boundary": is_boundary}
