"""Graded Betti numbers through the three-term Koszul strand.

For the reduced ring R with degree-1 basis B_1 (size N), the (p, q) Betti
number is the middle homology dimension of

    wedge^{p+1} B_1 (x) R_{q-1}  -->  wedge^p B_1 (x) R_q  -->  wedge^{p-1} B_1 (x) R_{q+1},

where the differential takes out one wedge factor at a time and multiplies
it into the monomial part:

    d(z_1 ^ ... ^ z_p (x) m) = sum_i (-1)^{i+1} z_1 ^ ... z_i-hat ... ^ z_p (x) z_i m.

Because the differential preserves the total weight (wedge weights plus
monomial rank), every matrix splits into independent blocks, which is what
keeps the rank computations desk-sized.  Homology dimensions come from
rank-nullity: dim - rank(outgoing) - rank(incoming), with each rank shared
between the two cells that use it.
"""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .lattice import basis_R1, normalize_dims, standard_basis_indices
from .linalg import SparseIntMatrix, rank
from .straighten import multiply

__all__ = [
    "BettiTable",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "SparseIntMatrix",
    "betti_table",
    "differential",
    "format_json",
    "format_m2",
    "hilbert_consistency",
    "hilbert_function",
    "koszul_basis",
    "kpq_dim",
    "regularity",
]

# Refusal threshold: no dense elimination block may exceed this many
# entries.  The default keeps every required table well inside laptop
# memory while refusing genuinely out-of-scale inputs.
DEFAULT_BUDGET = 50_000_000


class BudgetExceeded(RuntimeError):
    """A requested cell would materialize more dense entries than allowed."""


@dataclass(frozen=True)
class BettiTable:
    """Computed Betti numbers: dims maps (p, q) to a positive dimension.

    Zero cells are simply absent; ``dim`` is the total lookup.  pmax/qmax
    record the computed window (full window: pmax = N, qmax = regularity).
    """

    a: tuple
    pmax: int
    qmax: int
    dims: dict = field(default_factory=dict)

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)


def regularity(a) -> int:
    """Largest q with a nonzero table row: a_2 + ... + a_n."""
    a = normalize_dims(a)
    return sum(a) - a[0]


def hilbert_function(a) -> list[int]:
    """Dimensions of the graded pieces of the reduced ring, q = 0..regularity."""
    a = normalize_dims(a)
    by_degree = standard_basis_indices(a)
    out = [0] * (regularity(a) + 1)
    for d, entries in by_degree.items():
        out[d] = len(entries)
    return out


def _standard_monomials(a, q: int) -> list[tuple]:
    if q < 0:
        return []
    return [supp for _, supp in standard_basis_indices(a).get(q, [])]


def koszul_basis(a, p: int, q: int) -> list[tuple]:
    """Basis of wedge^p B_1 (x) R_q: (index-subset, monomial) pairs.

    Subsets are p-tuples of indices into basis_R1(a), lexicographic; the
    monomial runs through the degree-q standard basis in its fixed order.
    Empty when p or q is out of range.  This ordering defines every matrix
    layout in the package.
    """
    a = normalize_dims(a)
    n1 = len(basis_R1(a))
    if p < 0 or p > n1 or q < 0 or q > regularity(a):
        return []
    monos = _standard_monomials(a, q)
    return [
        (subset, mono)
        for subset in itertools.combinations(range(n1), p)
        for mono in monos
    ]


def _subset_weight_counts(weights, size: int) -> dict[int, int]:
    """How many size-subsets of the weight multiset have each total weight."""
    if size < 0 or size > len(weights):
        return {}
    layers: list[dict[int, int]] = [{} for _ in range(size + 1)]
    layers[0][0] = 1
    for w in weights:
        for k in range(min(size, len(weights)) - 1, -1, -1):
            if not layers[k]:
                continue
            target = layers[k + 1]
            for tot, cnt in layers[k].items():
                target[tot + w] = target.get(tot + w, 0) + cnt
    return layers[size]


def _monomial_rank_counts(a, q: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    for supp in _standard_monomials(a, q):
        r = sum(sum(v) for v in supp)
        counts[r] = counts.get(r, 0) + 1
    return counts


def _check_budget(a, p: int, q: int, budget: int):
    """Refuse cells whose dense elimination blocks would blow the budget.

    The differential preserves total weight, so its largest materialized
    block is bounded by the largest single-weight slice of domain x
    codomain; that bound is computable combinatorially before any
    assembly work happens.
    """
    weights = [sum(v) for v in basis_R1(a)]
    dom_sub = _subset_weight_counts(weights, p)
    cod_sub = _subset_weight_counts(weights, p - 1)
    dom_mono = _monomial_rank_counts(a, q)
    cod_mono = _monomial_rank_counts(a, q + 1)

    def slice_sizes(subs, monos):
        out: dict[int, int] = {}
        for w, cs in subs.items():
            for r, cm in monos.items():
                out[w + r] = out.get(w + r, 0) + cs * cm
        return out

    dom = slice_sizes(dom_sub, dom_mono)
    cod = slice_sizes(cod_sub, cod_mono)
    worst = 0
    for t, ncols in dom.items():
        worst = max(worst, ncols * cod.get(t, 0))
    if worst > budget:
        raise BudgetExceeded(
            f"cell (p={p}, q={q}) of {a} needs a dense block of about "
            f"{worst} entries, above the budget of {budget}; "
            f"raise --budget only with the memory to back it"
        )


def differential(a, p: int, q: int, budget: int | None = None) -> SparseIntMatrix:
    """Matrix of the Koszul differential out of wedge^p B_1 (x) R_q.

    Rows are indexed by koszul_basis(a, p-1, q+1), columns by
    koszul_basis(a, p, q); out-of-range (p, q) yield a zero-dimensional
    matrix.  Sign convention: removing the i-th smallest wedge factor
    carries (-1)^{i+1}.
    """
    a = normalize_dims(a)
    if budget is None:
        budget = DEFAULT_BUDGET
    b1 = basis_R1(a)
    n1 = len(b1)
    reg = regularity(a)

    dom_ok = 0 <= p <= n1 and 0 <= q <= reg
    cod_ok = 0 <= p - 1 <= n1 and 0 <= q + 1 <= reg
    dom_monos = _standard_monomials(a, q) if dom_ok else []
    cod_monos = _standard_monomials(a, q + 1) if cod_ok else []
    ncols = math.comb(n1, p) * len(dom_monos) if dom_ok else 0
    nrows = math.comb(n1, p - 1) * len(cod_monos) if cod_ok else 0
    if ncols == 0 or nrows == 0:
        return SparseIntMatrix(nrows, ncols, {})

    _check_budget(a, p, q, budget)

    cod_mono_pos = {m: k for k, m in enumerate(cod_monos)}
    cod_sub_pos = {s: k for k, s in enumerate(itertools.combinations(range(n1), p - 1))}
    width = len(cod_monos)

    entries: dict = {}
    ci = 0
    for subset in itertools.combinations(range(n1), p):
        for mono in dom_monos:
            for pos, b1_index in enumerate(subset):
                image = multiply(a, b1[b1_index], mono)
                if not image:
                    continue
                sign = -1 if pos % 2 else 1
                sub2 = subset[:pos] + subset[pos + 1 :]
                base = cod_sub_pos[sub2] * width
                for out_mono, coeff in image.items():
                    key = (base + cod_mono_pos[out_mono], ci)
                    val = entries.get(key, 0) + sign * coeff
                    if val:
                        entries[key] = val
                    else:
                        entries.pop(key, None)
            ci += 1
    return SparseIntMatrix(nrows, ncols, entries)


def _rank_of(a, p, q, rank_backend, budget):
    mat = differential(a, p, q, budget=budget)
    if mat.is_zero():
        return 0
    return rank(mat, backend=rank_backend)


def kpq_dim(a, p: int, q: int, rank_backend: str = "modular", budget: int | None = None) -> int:
    """dim K_{p,q}: middle homology dimension at wedge^p B_1 (x) R_q."""
    a = normalize_dims(a)
    middle = len(koszul_basis(a, p, q))
    if middle == 0:
        return 0
    out_rank = _rank_of(a, p, q, rank_backend, budget)
    in_rank = _rank_of(a, p + 1, q - 1, rank_backend, budget)
    return middle - out_rank - in_rank


def betti_table(
    a,
    pmax: int | None = None,
    qmax: int | None = None,
    rank_backend: str = "modular",
    budget: int | None = None,
    threads: int = 1,
) -> BettiTable:
    """The full table of K_{p,q} dimensions for p <= pmax, q <= qmax.

    Defaults cover everything that can be nonzero: pmax = |B_1| and
    qmax = regularity.  Each differential's rank is computed once and
    shared by the two homology cells using it; with threads > 1 the rank
    jobs run concurrently (results are deterministic either way).
    """
    a = normalize_dims(a)
    n1 = len(basis_R1(a))
    reg = regularity(a)
    pmax = n1 if pmax is None else max(0, min(int(pmax), n1))
    qmax = reg if qmax is None else max(0, min(int(qmax), reg))
    hilb = hilbert_function(a)

    jobs = [
        (p, q)
        for p in range(1, min(n1, pmax + 1) + 1)
        for q in range(0, qmax + 1)
        if q + 1 <= reg  # otherwise the codomain vanishes and the rank is 0
    ]
    # refuse the whole table up front rather than after minutes of partial
    # work: the per-cell bound is combinatorial, so this pass is cheap
    effective_budget = DEFAULT_BUDGET if budget is None else budget
    for p, q in jobs:
        _check_budget(a, p, q, effective_budget)

    ranks: dict[tuple, int] = {}
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {
                (p, q): pool.submit(_rank_of, a, p, q, rank_backend, budget)
                for p, q in jobs
            }
            for key, fut in futures.items():
                ranks[key] = fut.result()
    else:
        for p, q in jobs:
            ranks[(p, q)] = _rank_of(a, p, q, rank_backend, budget)

    dims: dict = {}
    for p in range(0, pmax + 1):
        for q in range(0, qmax + 1):
            middle = math.comb(n1, p) * (hilb[q] if q < len(hilb) else 0)
            if middle == 0:
                continue
            value = middle - ranks.get((p, q), 0) - ranks.get((p + 1, q - 1), 0)
            if value < 0:
                raise RuntimeError(
                    f"negative homology dimension at (p={p}, q={q}): rank bookkeeping is broken"
                )
            if value:
                dims[(p, q)] = value
    return BettiTable(a=a, pmax=pmax, qmax=qmax, dims=dims)


def hilbert_consistency(a, table: BettiTable) -> bool:
    """Euler-characteristic identity between the table and the Hilbert function.

    Checks sum_j dim(R_j) t^j * (1-t)^N  ==  sum_{p,q} (-1)^p dim(p,q) t^{p+q}
    as integer polynomials.  Catches any mismatch in basis sizes or in the
    alternating sum of ranks; needs the complete table to hold.
    """
    a = normalize_dims(a)
    n1 = len(basis_R1(a))
    hilb = hilbert_function(a)

    size = len(hilb) + n1 + 1
    lhs = [0] * size
    for j, c in enumerate(hilb):
        for k in range(n1 + 1):
            lhs[j + k] += c * ((-1) ** k) * math.comb(n1, k)

    rhs = [0] * size
    for (p, q), d in table.dims.items():
        if p + q >= size:
            return False
        rhs[p + q] += (-1) ** p * d
    return lhs == rhs


def format_m2(table: BettiTable) -> str:
    """Render the table in the classical computer-algebra layout.

    A header row of column indices, a "total:" row, then one row per q;
    zeros print as ".", and every column is right-aligned to its widest
    entry.  The exact byte layout is pinned by golden tests.
    """
    ps = list(range(table.pmax + 1))
    qs = list(range(table.qmax + 1))
    totals = [sum(table.dim(p, q) for q in qs) for p in ps]

    def cell(v: int) -> str:
        return str(v) if v else "."

    rows = [("total:", [cell(t) for t in totals])]
    for q in qs:
        rows.append((f"{q}:", [cell(table.dim(p, q)) for p in ps]))

    widths = []
    for k, p in enumerate(ps):
        w = len(str(p))
        for _, cells in rows:
            w = max(w, len(cells[k]))
        widths.append(w)

    lines = [" " * 7 + " ".join(str(p).rjust(w) for p, w in zip(ps, widths))]
    for label, cells in rows:
        lines.append(label.rjust(6) + " " + " ".join(c.rjust(w) for c, w in zip(cells, widths)))
    return "\n".join(lines)


def format_json(table: BettiTable) -> str:
    """Machine format: {"dims": [[p, q, dim], ...], "a": [...]}, (q, p)-sorted."""
    dims = [
        [p, q, d] for (p, q), d in sorted(table.dims.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    ]
    return json.dumps({"dims": dims, "a": list(table.a)})
