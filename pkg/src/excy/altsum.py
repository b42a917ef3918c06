"""Alternating sums B_{i1...ik} and the exponent systems built from them.

For an exponent vector ``b`` and an index list (i1, ..., ik)::

    B_{i1...ik} = b_i1...b_ik - b_i1...b_i(k-1) + ... + (-1)^(k-1) b_i1 + (-1)^k

with the empty list giving 1. Every index list used by the small-mld and
large-index families is an interleaving of two runs, one climbing and one
descending, so all of them come out of :func:`zigzag`.
"""

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpz

from .errors import ConsistencyError
from .sylvester import sylvester


def zigzag(first, second, pairs):
    """Return (first, second, first+1, second-1, ...) with ``pairs`` pairs.

    A nonpositive pair count gives the empty list.
    """
    out = []
    for t in range(max(pairs, 0)):
        out.append(first + t)
        out.append(second - t)
    return tuple(out)


def _check_indices(b, idx):
    if len(set(idx)) != len(idx):
        raise ValueError(f"index list has repeated entries: {idx}")
    for i in idx:
        if not 0 <= i < len(b):
            raise ValueError(f"index {i} out of range for exponent vector of length {len(b)}")


def alternating_sum(b, idx):
    """Return B_{idx} for the exponent vector ``b``."""
    idx = tuple(idx)
    _check_indices(b, idx)
    # Horner from the right: B(L[k:]) = b_{L[k]} * B(L[k+1:]) + (-1)^(len - k).
    value = mpz(1)
    sign = 1
    for i in reversed(idx):
        sign = -sign
        value = b[i] * value + sign
    return value


def suffix_alternating_sum(b, idx):
    """Return B_{i1..ik} - B_{i2..ik} + ... + (-1)^(k-1) B_{ik}."""
    idx = tuple(idx)
    _check_indices(b, idx)
    k = len(idx)
    total = mpz(0)
    value = mpz(1)
    sign = 1
    for pos in range(k - 1, -1, -1):
        sign = -sign
        value = b[idx[pos]] * value + sign
        total += value if pos % 2 == 0 else -value
    return total


def product(b, lo, hi):
    """Return b_lo * ... * b_hi; empty when hi < lo."""
    p = mpz(1)
    for i in range(lo, hi + 1):
        p *= b[i]
    return p


def _require_dim(n):
    if n < 2:
        raise ValueError(f"dimension must be at least 2, got {n}")


def zigzag_m_list(n):
    """Index list of m_n: (0, n, 1, n-1, ..., r, r+1) for odd n, starting at 1 for even n."""
    _require_dim(n)
    return zigzag(0 if n % 2 else 1, n, (n + 1) // 2)


def zigzag_u_list(n):
    """Index list of u_n: (r+1, r, r+2, r-1, ...) ending at (n, 0) or (n, 1)."""
    _require_dim(n)
    r = n // 2
    return zigzag(r + 1, r, (n + 1) // 2)


@lru_cache(maxsize=None)
def _esser_b(r, top):
    """Return (b_0, ..., b_top) for the exponent system with middle index r."""
    if not 0 <= top <= 2 * r + 1:
        raise ValueError(f"exponent b_{top} undefined for r={r}")
    if top <= r:
        return tuple(sylvester(i) for i in range(top + 1))
    b = _esser_b(r, top - 1)
    i = top - r
    inner = alternating_sum(b, zigzag(r + 1, r, i - 1))
    return b + ((b[r + 1 - i] - 1) ** 2 * inner + 1,)


def esser_exponents(n, top=None):
    """Return b_0, ..., b_top of the dimension-n small-mld equation (top defaults to n)."""
    _require_dim(n)
    return _esser_b(n // 2, n if top is None else top)


@dataclass(frozen=True)
class ExponentSystem:
    """Exponents of one small-mld or large-index equation.

    ``b`` is b_0..b_n; in index mode its last entry is b'_n and
    ``shared_b_n`` keeps the small-mld b_n it replaces.
    """

    n: int
    mode: str
    b: tuple
    last_exponent: object
    E: object = None
    shared_b_n: object = None

    @property
    def r(self):
        return self.n // 2

    @property
    def parity(self):
        return "odd" if self.n % 2 else "even"


@lru_cache(maxsize=None)
def mld_exponents(n):
    """Exponents b_0..b_n and v_n of the small-mld equation in dimension n."""
    _require_dim(n)
    r = n // 2
    b = _esser_b(r, n)
    tail = suffix_alternating_sum(b, zigzag_u_list(n))
    v = tail if n % 2 else 2 * tail + 1
    return ExponentSystem(n=n, mode="mld", b=b, last_exponent=v)


def gtw(r, k, b=None):
    """Return (g_k, t_k, w_k) for the dimension 2r+1 exponents.

    ``b`` may be supplied to evaluate on another vector; it needs entries up
    to index 2r+1-k.
    """
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if not 0 <= k <= r + 1:
        raise ValueError(f"k must lie in 0..{r + 1}, got {k}")
    if b is None:
        b = _esser_b(r, 2 * r + 1 - k) if k <= r else _esser_b(r, r)
    pairs = r + 1 - k
    g = alternating_sum(b, zigzag(k, 2 * r + 1 - k, pairs))
    t_list = zigzag(r + 1, r, pairs)
    t = alternating_sum(b, t_list)
    w = (sylvester(k) - 1) * (suffix_alternating_sum(b, t_list) + 1) - 1
    return g, t, w


def _exact_div(num, den, what):
    q, rem = divmod(num, den)
    if rem:
        raise ConsistencyError(f"{what} is not an integer",
                               {"numerator": num, "denominator": den})
    return q


@dataclass(frozen=True)
class IndexNumbers:
    """Constants of the large-index equation: b'_n, E_n, u'_n, m'_n (v'_n optional)."""

    n: int
    b: tuple
    b_prime: object
    E: object
    u_prime: object
    m_prime: object
    v_prime: object = None


def index_numbers(n, with_v=True):
    """Compute the large-index constants in dimension n.

    ``b`` holds the shared exponents b_0..b_{n-1}. With ``with_v=False`` the
    last exponent v'_n is skipped, which is all the gcd scan needs.
    """
    _require_dim(n)
    r = n // 2
    s1, s2 = sylvester(1), sylvester(2)
    if n % 2:
        b = _esser_b(r, 2 * r)
        p = product(b, 1, 2 * r)
        t1 = alternating_sum(b, zigzag(r + 1, r, r))
        b_prime = _exact_div(1 + p + (s1 - 1) * t1, 2, "b'_n")
        E = _exact_div(p + 1, 2, "E_n")
        u_prime = p + (s1 - 1) * t1
        g1 = alternating_sum(b, zigzag(1, 2 * r, r))
        m_prime = b[0] * b_prime * g1 - b[0] + 1
        v_prime = None
        if with_v:
            g, _, w = gtw(r, 1, b)
            v_prime = g + w
    else:
        b = _esser_b(r, 2 * r - 1)
        q = product(b, 2, 2 * r - 1)
        t2 = alternating_sum(b, zigzag(r + 1, r, r - 1))
        b_prime = _exact_div(1 + 2 * (s1 - 1) ** 2 * q + 2 * (s2 - 1) * t2, 3, "b'_n")
        E = _exact_div(8 * q + 1, 3, "E_n")
        u_prime = (s1 - 1) * q + s1 * t2
        g2 = alternating_sum(b, zigzag(2, 2 * r - 1, r - 1))
        m_prime = b[1] * b_prime * g2 - b[1] + 1
        v_prime = None
        if with_v:
            g, _, w = gtw(r, 2, b)
            v_prime = 4 * g + w
    return IndexNumbers(n=n, b=b, b_prime=b_prime, E=E, u_prime=u_prime,
                        m_prime=m_prime, v_prime=v_prime)


@lru_cache(maxsize=None)
def index_exponents(n):
    """Exponents of the large-index equation: b_0..b_{n-1}, b'_n, v'_n and E_n."""
    nums = index_numbers(n)
    b_n = _esser_b(n // 2, n)[n]
    if nums.b_prime - b_n + 1 != nums.E:
        raise ConsistencyError("E_n differs from b'_n - b_n + 1",
                               {"E": nums.E, "b_prime": nums.b_prime, "b_n": b_n})
    return ExponentSystem(n=n, mode="index", b=nums.b + (nums.b_prime,),
                          last_exponent=nums.v_prime, E=nums.E, shared_b_n=b_n)
