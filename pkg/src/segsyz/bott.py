"""Cohomology of twisted bundles on projective space via the dotted Weyl action.

For a weight v in Z^m, sigma . v = sigma(v + rho) - rho with
rho = (m-1, ..., 1, 0).  Either v + rho has a repeated entry (all
cohomology vanishes) or a unique permutation sorts it strictly
decreasing, in which case exactly one cohomology group survives, in
degree equal to the permutation's inversion count, with dominant weight
the sorted-and-shifted vector.  Dimensions of the resulting irreducibles
come from the Weyl dimension formula, evaluated in exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class BottResult:
    """Outcome of the dotted sort: singular, or (cohomology degree, dominant weight)."""

    degree: int | None
    dominant: tuple | None

    @property
    def singular(self) -> bool:
        return self.degree is None

    def __repr__(self) -> str:
        if self.singular:
            return "SINGULAR"
        return f"BottResult(degree={self.degree}, dominant={self.dominant})"


SINGULAR = BottResult(None, None)


def _rho(m: int) -> tuple:
    return tuple(range(m - 1, -1, -1))


def dotted_sort(v) -> BottResult:
    """Dotted Weyl action on an arbitrary integer weight.

    Returns SINGULAR when v + rho has a repeated entry; otherwise the
    inversion count of the unique descending sort together with the
    dominant weight it produces.
    """
    v = tuple(int(x) for x in v)
    if not v:
        raise ValueError("weight must have length >= 1")
    m = len(v)
    shifted = tuple(x + r for x, r in zip(v, _rho(m)))
    if len(set(shifted)) != m:
        return SINGULAR
    inversions = sum(
        1 for i in range(m) for j in range(i + 1, m) if shifted[i] < shifted[j]
    )
    ordered = sorted(shifted, reverse=True)
    dominant = tuple(x - r for x, r in zip(ordered, _rho(m)))
    return BottResult(degree=inversions, dominant=dominant)


def bwb_cohomology(d: int, alpha, m: int) -> BottResult:
    """Cohomology of Q^d tensor S_alpha(R) on P(C^m), alpha on the rank m-1 bundle.

    The answer is dotted_sort((d, alpha_1, ..., alpha_{m-1})): SINGULAR
    means every H^j vanishes, and a result (j, beta) means H^j = S_beta of
    the ambient space with all other degrees zero.
    """
    alpha = tuple(int(x) for x in alpha)
    m = int(m)
    if len(alpha) != m - 1:
        raise ValueError(f"alpha must have length m-1 = {m - 1}, got {len(alpha)}")
    if any(alpha[i] < alpha[i + 1] for i in range(len(alpha) - 1)):
        raise ValueError(f"alpha must be weakly decreasing, got {alpha}")
    return dotted_sort((int(d),) + alpha)


def schur_dim(lam, m: int) -> int:
    """Dimension of the irreducible with highest weight lam in GL_m.

    Weyl dimension formula: product over i < j of
    (lam_i - lam_j + j - i) / (j - i).  Weights shorter than m are padded
    with zeros, which must keep them weakly decreasing.
    """
    lam = tuple(int(x) for x in lam)
    m = int(m)
    if m < 1:
        raise ValueError("m must be >= 1")
    if len(lam) > m:
        raise ValueError(f"weight has length {len(lam)} > m = {m}")
    lam = lam + (0,) * (m - len(lam))
    if any(lam[i] < lam[i + 1] for i in range(m - 1)):
        raise ValueError(f"weight must be weakly decreasing after padding, got {lam}")
    out = Fraction(1)
    for i in range(m):
        for j in range(i + 1, m):
            out *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert out.denominator == 1 and out > 0
    return int(out)
