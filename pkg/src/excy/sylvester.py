"""Sylvester's sequence 2, 3, 7, 43, 1807, ...

Values are gmpy2 ``mpz`` integers: in the dimensions the conjecture scan
reaches, s_j has hundreds of millions of bits and CPython's Karatsuba
multiplication is far too slow.
"""

import threading
from fractions import Fraction

from gmpy2 import mpz

from .errors import DimensionCapError

MAX_INDEX = 64

_values = [mpz(2)]
_lock = threading.Lock()


def _check_index(j, allow_large):
    if j < 0:
        raise ValueError(f"Sylvester index must be nonnegative, got {j}")
    if j > MAX_INDEX and not allow_large:
        raise DimensionCapError(
            f"s_{j} requested; indices above {MAX_INDEX} need allow_large=True")


def sylvester(j, *, allow_large=False):
    """Return s_j, with s_0 = 2 and s_{j+1} = s_j (s_j - 1) + 1."""
    _check_index(j, allow_large)
    if j < len(_values):
        return _values[j]
    with _lock:
        while len(_values) <= j:
            s = _values[-1]
            _values.append(s * (s - 1) + 1)
    return _values[j]


def sylvester_range(count, *, allow_large=False):
    """Return (s_0, ..., s_{count-1})."""
    if count <= 0:
        return ()
    sylvester(count - 1, allow_large=allow_large)
    return tuple(_values[:count])


def sylvester_partial_sum(j):
    """Return 1/s_0 + ... + 1/s_j as an exact fraction, summed term by term."""
    total = Fraction(0)
    for s in sylvester_range(j + 1):
        total += Fraction(1, int(s))
    return total


def sylvester_product(lo, hi):
    """Return s_lo * ... * s_hi (empty product is 1)."""
    p = mpz(1)
    for i in range(lo, hi + 1):
        p *= sylvester(i)
    return p
