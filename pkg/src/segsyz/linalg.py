"""Exact rank machinery for the sparse integer matrices of the Koszul maps.

Two backends share a common block decomposition (connected components of
the bipartite row/column graph -- the weight bigrading of the differentials
makes these blocks small, which is the whole reason the big tables fit on
a desk):

  * "exact": fraction-free Gaussian elimination (Bareiss) over Python
    ints.  Reference answer, no probabilistic component.
  * "modular": dense elimination mod a random ~30-bit prime in int64
    numpy arrays.  A full-rank block is self-certifying (the mod-p rank
    never exceeds the rational rank); otherwise a second independent
    prime must agree, and any disagreement escalates to the exact
    backend.  Matrices small enough for the exact backend to be cheap
    (max dimension <= 2000) are additionally cross-checked against it.

The membership test used by the witness verification (is a vector in the
column span?) is always exact, whatever backend is configured for ranks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

# Residues are stored in int64; elimination computes row - f*pivot_row with
# f and every entry reduced mod p, so p below 2^30 keeps all intermediates
# under 2^60 with room to spare.
_PRODUCTION_PRIME_BITS = 30
_EXACT_CROSSCHECK_MAXDIM = 2000

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass
class SparseIntMatrix:
    """rows x cols integer matrix; entries maps (row, col) to a nonzero int."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.entries


def compose(left: SparseIntMatrix, right: SparseIntMatrix) -> SparseIntMatrix:
    """Matrix product left @ right (used by the d-squared-is-zero checks)."""
    if left.cols != right.rows:
        raise ValueError(f"shape mismatch: {left.rows}x{left.cols} @ {right.rows}x{right.cols}")
    by_col: dict[int, list] = {}
    for (i, j), v in left.entries.items():
        by_col.setdefault(j, []).append((i, v))
    out: dict = {}
    for (j, k), w in right.entries.items():
        for i, v in by_col.get(j, ()):
            key = (i, k)
            out[key] = out.get(key, 0) + v * w
    out = {k: v for k, v in out.items() if v}
    return SparseIntMatrix(left.rows, right.cols, out)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the word-sized range we care about."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng=None) -> int:
    rng = rng or random
    if bits < 3:
        raise ValueError("too few bits for a useful prime")
    while True:
        cand = rng.getrandbits(bits - 1) | (1 << (bits - 1)) | 1
        if is_probable_prime(cand):
            return cand


class _Block:
    """One connected component, with its original row/column ids."""

    __slots__ = ("nrows", "ncols", "triples", "row_ids", "col_ids")

    def __init__(self, row_ids, col_ids, triples):
        self.row_ids = row_ids
        self.col_ids = col_ids
        self.nrows = len(row_ids)
        self.ncols = len(col_ids)
        self.triples = triples  # (local_row, local_col, value)


def _components(matrix: SparseIntMatrix) -> list[_Block]:
    """Split into connected components of the bipartite support graph.

    Rows/columns without entries contribute nothing to the rank and are
    dropped.  Deterministic: blocks are sorted by their smallest row id and
    local indices follow the global order.
    """
    parent: dict = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for (i, j) in matrix.entries:
        r = ("r", i)
        c = ("c", j)
        parent.setdefault(r, r)
        parent.setdefault(c, c)
        rr, rc = find(r), find(c)
        if rr != rc:
            parent[rc] = rr

    groups: dict = {}
    for (i, j), v in matrix.entries.items():
        groups.setdefault(find(("r", i)), []).append((i, j, v))

    blocks = []
    for triples in groups.values():
        row_ids = sorted({i for i, _, _ in triples})
        col_ids = sorted({j for _, j, _ in triples})
        rmap = {i: k for k, i in enumerate(row_ids)}
        cmap = {j: k for k, j in enumerate(col_ids)}
        local = [(rmap[i], cmap[j], v) for i, j, v in sorted(triples)]
        blocks.append(_Block(row_ids, col_ids, local))
    blocks.sort(key=lambda b: b.row_ids[0])
    return blocks


def _rank_block_exact(block: _Block) -> int:
    """Fraction-free (Bareiss) elimination; all intermediates are ints."""
    r, c = block.nrows, block.ncols
    m = [[0] * c for _ in range(r)]
    for i, j, v in block.triples:
        m[i][j] = v
    rank = 0
    prev = 1
    for col in range(c):
        piv = None
        for i in range(rank, r):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        pv = prow[col]
        # every row below gets the Sylvester-identity update; the division
        # by the previous pivot is exact
        for i in range(rank + 1, r):
            row = m[i]
            f = row[col]
            for j in range(col + 1, c):
                row[j] = (row[j] * pv - f * prow[j]) // prev
            row[col] = 0
        prev = pv
        rank += 1
        if rank == r:
            break
    return rank


def _rank_block_mod(block: _Block, p: int) -> int:
    """Dense elimination mod p in int64; p must stay below 2^30."""
    r, c = block.nrows, block.ncols
    a = np.zeros((r, c), dtype=np.int64)
    for i, j, v in block.triples:
        a[i, j] = v % p
    rank = 0
    for col in range(c):
        pivots = np.nonzero(a[rank:, col])[0]
        if pivots.size == 0:
            continue
        piv = rank + int(pivots[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = a[rank] * inv % p
        below = np.nonzero(a[rank + 1 :, col])[0] + rank + 1
        if below.size:
            factors = a[below, col][:, None]
            a[below] = (a[below] - factors * a[rank][None, :]) % p
        rank += 1
        if rank == r:
            break
    return rank


def _rank_block_mod_python(block: _Block, p: int) -> int:
    """Plain-Python elimination mod p, any prime size (arbitrary precision).

    Slow path used for self-tests with large primes; not wired into the
    production policy.
    """
    r, c = block.nrows, block.ncols
    m = [[0] * c for _ in range(r)]
    for i, j, v in block.triples:
        m[i][j] = v % p
    rank = 0
    for col in range(c):
        piv = None
        for i in range(rank, r):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        prow = [x * inv % p for x in m[rank]]
        m[rank] = prow
        for i in range(rank + 1, r):
            f = m[i][col]
            if f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], prow)]
        rank += 1
        if rank == r:
            break
    return rank


def _rank_block_modular_policy(block: _Block) -> int:
    r1 = _rank_block_mod(block, random_prime(_PRODUCTION_PRIME_BITS))
    if r1 == min(block.nrows, block.ncols):
        # mod-p rank is a lower bound for the rational rank, so full rank
        # certifies itself
        return r1
    r2 = _rank_block_mod(block, random_prime(_PRODUCTION_PRIME_BITS))
    if r1 == r2:
        return r1
    return _rank_block_exact(block)


def rank(matrix: SparseIntMatrix, backend: str = "modular") -> int:
    """Rank over the rationals, summed over connected components."""
    if backend not in ("exact", "modular"):
        raise ValueError(f"unknown rank backend {backend!r}")
    blocks = _components(matrix)
    if backend == "exact":
        return sum(_rank_block_exact(b) for b in blocks)
    crosscheck = max(matrix.rows, matrix.cols) <= _EXACT_CROSSCHECK_MAXDIM
    total = 0
    for block in blocks:
        if crosscheck:
            exact = _rank_block_exact(block)
            modular = _rank_block_mod(block, random_prime(_PRODUCTION_PRIME_BITS))
            if modular != exact:
                # one unlucky prime is possible in principle; two mean the
                # machinery is broken
                retry = _rank_block_mod(block, random_prime(_PRODUCTION_PRIME_BITS))
                if retry != exact:
                    raise RuntimeError(
                        f"modular elimination disagrees with exact rank "
                        f"({modular} / {retry} vs {exact}) on a "
                        f"{block.nrows}x{block.ncols} block"
                    )
            total += exact
        else:
            total += _rank_block_modular_policy(block)
    return total


def in_column_span(matrix: SparseIntMatrix, vector: dict) -> bool:
    """Exact test: does an integer column vector lie in the rational span
    of the matrix columns?

    ``vector`` maps row index -> value.  Implemented as a rank comparison
    of the matrix against the matrix augmented by the vector, restricted
    to the connected components the vector touches.
    """
    for i in vector:
        if not 0 <= i < matrix.rows:
            raise ValueError(f"vector row {i} outside 0..{matrix.rows - 1}")
    vec = {i: v for i, v in vector.items() if v}
    if not vec:
        return True

    aug = SparseIntMatrix(matrix.rows, matrix.cols + 1, dict(matrix.entries))
    for i, v in vec.items():
        aug.entries[(i, matrix.cols)] = v

    # only components touching the vector can decide membership: columns in
    # other components have no support on the vector's rows
    for block in _components(aug):
        if block.col_ids[-1] != matrix.cols:
            continue
        # the vector column sorts last inside its block
        stripped = _Block(
            block.row_ids,
            block.col_ids[:-1],
            [(i, j, v) for i, j, v in block.triples if j != block.ncols - 1],
        )
        if _rank_block_exact(block) != _rank_block_exact(stripped):
            return False
    return True
