"""The recursive vanishing-bound function P(a; q) and derived predicates.

P is defined by P(a_1; 0) = 0, P(a_1; q) = oo for q > 0, and

    P(a_1,...,a_n; q) = min over 0 <= j <= min(q, a_n) of
                        h(P(a_1,...,a_{n-1}; q - j), j),

where h(x, j) = (x + j)(j + 1).  The payoff is the vanishing statement:
the (p, q) Betti number of the Segre embedding vanishes for
p < P(a; q) - q.  Infinite values are a tagged object, never a sentinel
integer, and all arithmetic on them saturates.
"""

from __future__ import annotations

from functools import lru_cache

from .lattice import normalize_dims


class _Infinity:
    """Saturating top element for the extended naturals (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("segsyz.INFINITY")

    # INFINITY is strictly above every integer
    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _Infinity):
            raise ArithmeticError("INFINITY - INFINITY is undefined")
        return self

    def __mul__(self, other):
        return self

    __rmul__ = __mul__


INFINITY = _Infinity()


def is_infinite(x) -> bool:
    return isinstance(x, _Infinity)


def h(x, j: int):
    """(x + j) * (j + 1), saturating when x is INFINITY."""
    j = int(j)
    if j < 0:
        raise ValueError("j must be non-negative")
    if is_infinite(x):
        return INFINITY
    return (x + j) * (j + 1)


@lru_cache(maxsize=None)
def _p(prefix: tuple, q: int):
    # prefix is a normalized dimension vector; recursion peels off the
    # smallest entry, so the memo key really is (prefix, q).
    if len(prefix) == 1:
        return 0 if q == 0 else INFINITY
    rest = prefix[:-1]
    last = prefix[-1]
    return min(h(_p(rest, q - j), j) for j in range(min(q, last) + 1))


def p_function(a, q: int):
    """P(a; q) as an int, or INFINITY (exactly when q > a_2 + ... + a_n)."""
    a = normalize_dims(a)
    q = int(q)
    if q < 0:
        raise ValueError("q must be non-negative")
    return _p(a, q)


def p_closed_equal(a: int, n: int, q: int):
    """Closed form of P(a^n; q) for equal exponents.

    With r minimal such that q <= r*a (r = 1 when q = 0) and
    q0 = q - (r-1)*a, the value is

        (q0^2 + q0) (a+1)^{r-1} + (a+1)^r - (a+1)    when n > r,

    and INFINITY otherwise.  Agrees with p_function on the whole grid --
    that agreement is one of the package's test invariants.
    """
    a, n, q = int(a), int(n), int(q)
    if a < 1 or n < 1:
        raise ValueError("need a >= 1 and n >= 1")
    if q < 0:
        raise ValueError("q must be non-negative")
    if q == 0:
        return 0
    r = -(-q // a)  # ceil(q / a)
    if n <= r:
        return INFINITY
    q0 = q - (r - 1) * a
    return (q0 * q0 + q0) * (a + 1) ** (r - 1) + (a + 1) ** r - (a + 1)


def vanishing_bound(a, q: int):
    """P(a; q) - q: Betti numbers at row q vanish for all p below this."""
    value = p_function(a, q)
    return INFINITY if is_infinite(value) else value - int(q)


def predicts_zero(a, p: int, q: int) -> bool:
    """Whether the vanishing bound forces the (p, q) Betti number to be zero.

    Negative q always predicts zero (tables have no negative rows).
    """
    if q < 0:
        return True
    return p < vanishing_bound(a, q)
