"""Certified rational enclosures of alpha = 2 prod_{j>=1} [s_{j+1}/(s_j-1)^2]^(2^(j-1)).

Tail bound used by :func:`alpha` (our own estimate, not a published one):

Each factor is 1 + x_j with x_j = s_j/(s_j-1)^2, because
s_{j+1} = (s_j-1)^2 + s_j. With log(1+x) <= x the tail after T factors has
logarithm at most S = sum_{j>T} 2^(j-1) x_j. Consecutive terms of that sum
have ratio 2 x_{j+1}/x_j = 2(s^2-s+1)/s^3 < 2/s_j <= rho := 2/s_{T+1}, so
S <= 2^T x_{T+1} / (1 - rho). Finally exp(S) <= 1/(1-S) for 0 <= S < 1,
which gives hi = lo / (1 - S) as an exact rational.
"""

from dataclasses import dataclass
from fractions import Fraction

from .sylvester import sylvester

MAX_TERMS = 40


@dataclass(frozen=True)
class RationalEnclosure:
    """An interval [lo, hi] of positive rationals known to contain a real number."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not 0 < self.lo <= self.hi:
            raise ValueError(f"need 0 < lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self):
        return self.hi - self.lo

    def __mul__(self, other):
        if isinstance(other, RationalEnclosure):
            return RationalEnclosure(self.lo * other.lo, self.hi * other.hi)
        c = Fraction(other)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return RationalEnclosure(self.lo * c, self.hi * c)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, RationalEnclosure):
            return RationalEnclosure(self.lo + other.lo, self.hi + other.hi)
        c = Fraction(other)
        return RationalEnclosure(self.lo + c, self.hi + c)

    __radd__ = __add__

    def __truediv__(self, c):
        c = Fraction(c)
        if c <= 0:
            raise ValueError("divisor must be positive")
        return RationalEnclosure(self.lo / c, self.hi / c)

    def contains(self, x):
        return self.lo <= Fraction(x) <= self.hi

    def rounds_to(self, text):
        """True if every point of the enclosure rounds to the decimal ``text``.

        ``text`` like "5.522868" stands for the cell [x - u/2, x + u/2) with u
        one unit in its last place.
        """
        x = Fraction(text)
        places = len(text.split(".")[1]) if "." in text else 0
        half = Fraction(1, 2 * 10 ** places)
        return x - half <= self.lo and self.hi < x + half


def _round_places(x, places):
    """Round the positive rational x to ``places`` decimals, halves going up."""
    scaled = x * 10 ** places
    return (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)


def _format_scaled(k, places):
    s = str(k).rjust(places + 1, "0")
    return s if places == 0 else f"{s[:-places]}.{s[-places:]}"


def certified_decimal(enc, places):
    """Decimal string with ``places`` fractional digits valid for the whole enclosure, or None."""
    a, b = _round_places(enc.lo, places), _round_places(enc.hi, places)
    if a != b:
        return None
    return _format_scaled(a, places)


def alpha(terms):
    """Enclosure of alpha from the first ``terms`` factors of the product."""
    if terms < 1:
        raise ValueError(f"terms must be positive, got {terms}")
    if terms > MAX_TERMS:
        raise ValueError(f"terms above {MAX_TERMS} are never needed")
    num, den = 2, 1
    for j in range(1, terms + 1):
        s = int(sylvester(j))
        e = 2 ** (j - 1)
        num *= int(sylvester(j + 1)) ** e
        den *= (s - 1) ** (2 * e)
    lo = Fraction(num, den)
    s_next = int(sylvester(terms + 1))
    x_next = Fraction(s_next, (s_next - 1) ** 2)
    rho = Fraction(2, s_next)
    tail_log = 2 ** terms * x_next / (1 - rho)
    hi = lo / (1 - tail_log)
    return RationalEnclosure(lo, hi)


def alpha_with_width(width):
    """Smallest-term enclosure of alpha whose width is below ``width``."""
    width = Fraction(width)
    for terms in range(1, MAX_TERMS + 1):
        enc = alpha(terms)
        if enc.width < width:
            return enc
    raise ValueError(f"width {width} not reached within {MAX_TERMS} terms")


def alpha_digits(places):
    """Return (decimal string, enclosure) certified to ``places`` fractional digits."""
    if places < 1:
        raise ValueError(f"digits must be positive, got {places}")
    for terms in range(1, MAX_TERMS + 1):
        enc = alpha(terms)
        text = certified_decimal(enc, places)
        if text is not None:
            return text, enc
    raise ValueError(f"could not certify {places} digits within {MAX_TERMS} terms")


def ratio_constants(enc=None):
    """Enclosures of alpha, 3 alpha^2/4, 9 alpha/8 and 6 alpha^2/7."""
    a = alpha_with_width(Fraction(1, 10 ** 9)) if enc is None else enc
    sq = a * a
    return {
        "even": a,
        "odd": sq * Fraction(3, 4),
        "index_even": a * Fraction(9, 8),
        "index_odd": sq * Fraction(6, 7),
    }
