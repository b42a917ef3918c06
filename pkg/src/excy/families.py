"""Builders for the extremal examples, one record per (family, dimension).

Each builder computes the weights twice, from closed forms and from the
charges of the exponent matrix, and raises :class:`ConsistencyError` if any
of the stated identities fails. A record that comes back is therefore
already verified.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from .altsum import (alternating_sum, esser_exponents, index_exponents, index_numbers,
                     mld_exponents, product, zigzag_m_list, zigzag_u_list)
from .errors import ConsistencyError, DimensionCapError, ResourceLimitError
from .hypersurface import (WeightedHypersurface, canonical_degree, classify_shape,
                           common_denominator, exponent_matrix, hypersurface_from_monomials,
                           hypersurface_well_formed, mirror_charges,
                           toric_automorphism_order, volume_O1, weights_and_degree,
                           wps_well_formed)
from .sylvester import sylvester

MAX_DIM = 40

# largest estimated working size, in bits, a builder may attempt; applies
# even when the dimension cap is lifted
BIT_BUDGET = 2 ** 30

FAMILIES = ("small-volume", "esser-mld", "pair-mld", "index1-cover", "large-index",
            "kollar", "liu")


@dataclass(frozen=True)
class FamilyRecord:
    """A constructed example and its exact invariants.

    ``invariants`` maps names to ints or Fractions; a quantity that does
    not apply to the family is simply absent. ``coefficients`` is used by
    the two pairs on projective space, which have no hypersurface.
    """

    family: str
    n: int
    hypersurface: WeightedHypersurface = None
    boundary: tuple = None
    invariants: dict = field(default_factory=dict)
    action_weights: tuple = None
    coefficients: tuple = None
    flags: dict = field(default_factory=dict)


def estimated_bits(family, n):
    """Rough working size of a builder: log2 s_{n+1} is about 0.68 * 2^(n+1)."""
    s_bits = 0.68 * 2 ** (n + 1)
    if family == "liu":
        return s_bits
    if family == "kollar":
        return n * s_bits
    # charge computations touch a full (n+2) x (n+2) inverse with entries near the determinant
    return 2 * (n + 2) ** 2 * s_bits


def _check_dim(n, allow_large, lowest=2, family=None):
    if n < lowest:
        raise ValueError(f"dimension must be at least {lowest}, got {n}")
    if n > MAX_DIM and not allow_large:
        raise DimensionCapError(f"dimension {n} exceeds the cap {MAX_DIM}")
    if family is not None and estimated_bits(family, n) > BIT_BUDGET:
        raise ResourceLimitError(
            f"{family} in dimension {n} needs numbers of about {estimated_bits(family, n):.1e} bits; "
            f"the budget is {BIT_BUDGET:.1e}")


def _expect(cond, message, **witness):
    if not cond:
        raise ConsistencyError(message, witness)


def _mono(nvars, **powers):
    v = [0] * nvars
    for k, e in powers.items():
        v[int(k[1:])] += int(e)
    return tuple(v)


def loop_equation(b, last, n):
    """Monomials of the small-mld / large-index equation with exponents b_0..b_n and last.

    Odd n = 2r+1 is a single loop; even n = 2r is x_0^b_0 plus a loop on x_1..x_{2r+1}.
    """
    r = n // 2
    nv = n + 2
    monos = []
    for i in range(n + 1):
        if i == 0 and n % 2 == 0:
            monos.append(_mono(nv, x0=b[0]))
        elif i <= r:
            monos.append(_pair_mono(nv, i, b[i], 2 * r + 2 - i))
        else:
            monos.append(_pair_mono(nv, i, b[i], 2 * r + 1 - i))
    monos.append(_pair_mono(nv, n + 1, last, r + 1))
    return tuple(monos)


def _pair_mono(nv, head, exp, tail):
    v = [0] * nv
    v[head] = int(exp)
    v[tail] += 1
    return tuple(v)


def affine_chart(h, var):
    """Multiset of monomials after setting x_var = 1."""
    return Counter(tuple(e for j, e in enumerate(m) if j != var) for m in h.monomials)


# --- small volume lc pair ------------------------------------------------------

def small_volume_weights(n):
    """Closed-form (weights, degree) of the small-volume pair."""
    s_n = sylvester(n)
    d = sylvester(n + 1) - 1
    top = s_n * s_n - s_n + 2 if n % 2 == 0 else s_n * s_n - 3 * s_n + 4
    _expect(top % 4 == 0, "a_{n+1} is not an integer", numerator=top)
    weights = tuple(d // sylvester(i) for i in range(n + 1)) + (top // 4,)
    return weights, d


def small_volume_pair(n, *, allow_large=False):
    _check_dim(n, allow_large, family="small-volume")
    weights, d = small_volume_weights(n)
    nv = n + 2
    monos = [_mono(nv, **{f"x{i}": sylvester(i)}) for i in range(n + 1)]
    last = [0] + [1] * n + [2]
    if n % 2:
        last[n] = 2
    monos.append(tuple(last))
    h = WeightedHypersurface(weights=tuple(int(a) for a in weights), degree=int(d),
                             monomials=tuple(monos))
    _expect(weights_and_degree(exponent_matrix(h)) == (h.weights, h.degree),
            "charges disagree with closed-form weights", weights=weights)
    a_last = weights[-1]
    _expect(a_last % 2 == 1, "a_{n+1} is even", a_last=a_last)
    vol = volume_O1(h)
    _expect(vol == Fraction(1, int((d ** (n - 1)) * a_last)),
            "volume differs from 1/((s_{n+1}-1)^(n-1) a_{n+1})", volume=vol)
    kx = canonical_degree(h)
    _expect(kx == 1 - a_last, "K_X is not O(1 - a_{n+1})", canonical_degree=kx)
    wf = hypersurface_well_formed(h)
    return FamilyRecord(
        family="small-volume", n=n, hypersurface=h, boundary=(n + 1, Fraction(1)),
        invariants={"volume": vol, "canonical_degree": kx},
        flags={"wps_well_formed": str(wps_well_formed(h.weights)).lower(),
               "well_formed": wf.verdict.value,
               "quasi_smooth": str(classify_shape(h).quasi_smooth).lower()})


# --- small-mld Calabi-Yau --------------------------------------------------------

def pair_weights(n):
    """Closed-form (c_0, ..., c_{n+1}) and degree d of the global-lc-threshold pair."""
    r = n // 2
    b = esser_exponents(n)
    mlist = zigzag_m_list(n)
    m = alternating_sum(b, mlist)
    c = [None] * (n + 2)
    c[n + 1] = m
    if n % 2:
        d = product(b, 0, n)
        for i in range(r + 1):
            # lists end at r-i (odd length) and at the pair (r-1-i, r+2+i)
            c[r + 1 + i] = product(b, r + 1 - i, r + i) * alternating_sum(b, mlist[:2 * (r - i) + 1])
            c[r - i] = product(b, r + 1 - i, r + 1 + i) * alternating_sum(b, mlist[:2 * (r - i)])
    else:
        d = product(b, 0, n)
        c[0] = product(b, 1, n)
        for i in range(r):
            c[r + 1 + i] = 2 * product(b, r + 1 - i, r + i) * alternating_sum(b, mlist[:2 * (r - i) - 1])
            c[r - i] = 2 * product(b, r + 1 - i, r + 1 + i) * alternating_sum(b, mlist[:2 * (r - 1 - i)])
    return tuple(c), d


def esser_mld(n, *, allow_large=False):
    _check_dim(n, allow_large, family="esser-mld")
    e = mld_exponents(n)
    b, v = e.b, e.last_exponent
    h = hypersurface_from_monomials(loop_equation(b, v, n))
    m = alternating_sum(b, zigzag_m_list(n))
    u = alternating_sum(b, zigzag_u_list(n))
    odd = n % 2 == 1
    _expect(h.degree == (u if odd else 2 * u), "degree is not u_n (odd) or 2u_n (even)",
            degree=h.degree, u=u)
    _expect(h.weights[-1] == 1, "last weight is not 1", weights=h.weights)
    _expect(canonical_degree(h) == 0, "not Calabi-Yau", degree=h.degree, weight_sum=sum(h.weights))
    lhs = m * u - 1 if odd else 2 * m * u - 1
    rhs = product(b, 0 if odd else 1, n) * v
    _expect(lhs == rhs, "product formula m u - 1 = b...b v fails", lhs=lhs, rhs=rhs)
    M = exponent_matrix(h)
    order, structure = toric_automorphism_order(M, h.degree)
    _expect(order == (m if odd else 2 * m), "|Aut_T| differs from m (odd) or 2m (even)",
            order=order, m=m)
    q_min = Fraction(min(mirror_charges(M)))
    _expect(q_min == Fraction(1, int(m) * (1 if odd else 2)),
            "smallest mirror charge is not 1/m (odd) or 1/(2m) (even)", min_mirror_charge=q_min, m=m)
    c, d = pair_weights(n)
    action = tuple(int(x % m) for x in c[:n + 1]) + (0,)
    chars = {sum(a * w for a, w in zip(mono, action)) % m for mono in h.monomials}
    _expect(len(chars) == 1, "mu_m action does not preserve the equation", characters=sorted(chars))
    if n > 2:
        _expect(m > 2 ** (2 ** n), "m_n <= 2^(2^n)", m=m)
    return FamilyRecord(
        family="esser-mld", n=n, hypersurface=h, action_weights=action,
        invariants={"m": m, "u": u, "v": v, "group_order": m, "mld": Fraction(1, int(m)),
                    "min_mirror_charge": q_min, "toric_group_order": order,
                    "canonical_degree": 0},
        flags={"toric_group": structure, "quasi_smooth": "true",
               "well_formed": hypersurface_well_formed(h).verdict.value})


# --- pair with coefficient 1 - 1/m ------------------------------------------------

def _pair_equation(n):
    e = mld_exponents(n)
    monos = list(loop_equation(e.b, e.last_exponent, n))
    nv = n + 2
    r = n // 2
    if n % 2:
        monos[0] = _mono(nv, x0=2)
        monos[-1] = _pair_mono(nv, n + 1, 1, r + 1)
    else:
        monos[1] = _mono(nv, x1=3)
        monos[-1] = _pair_mono(nv, n + 1, 2, r + 1)
    return tuple(monos)


def pair_mld(n, *, allow_large=False):
    _check_dim(n, allow_large, family="pair-mld")
    c, d = pair_weights(n)
    m = c[-1]
    h = WeightedHypersurface(weights=tuple(int(x) for x in c), degree=int(d),
                             monomials=_pair_equation(n))
    _expect(weights_and_degree(exponent_matrix(h)) == (h.weights, h.degree),
            "charges disagree with closed-form weights c_j", weights=c)
    gap = d - sum(c[:n + 1])
    _expect(gap == 1, "d - sum_{j<=n} c_j != 1", gap=gap)
    _expect(m == alternating_sum(esser_exponents(n), zigzag_m_list(n)), "c_{n+1} != m_n", m=m)
    kx = canonical_degree(h)
    _expect(kx == 1 - m, "K_X is not O(1 - m)", canonical_degree=kx)
    return FamilyRecord(
        family="pair-mld", n=n, hypersurface=h,
        boundary=(n + 1, Fraction(int(m) - 1, int(m))),
        invariants={"m": m, "canonical_degree": kx, "d_minus_sum_c": gap,
                    "mld": Fraction(1, int(m))},
        flags={"shape": classify_shape(h).describe(),
               "quasi_smooth": str(classify_shape(h).quasi_smooth).lower(),
               "wps_well_formed": str(wps_well_formed(h.weights)).lower(),
               "well_formed": hypersurface_well_formed(h).verdict.value})


def index1_cover(n, *, allow_large=False):
    """The index-1 cover W of the pair, with weights (c_0, ..., c_n, 1)."""
    _check_dim(n, allow_large, family="index1-cover")
    c, d = pair_weights(n)
    m = c[-1]
    monos = list(_pair_equation(n))
    r = n // 2
    monos[-1] = _pair_mono(n + 2, n + 1, m if n % 2 else 2 * m, r + 1)
    h = WeightedHypersurface(weights=tuple(int(x) for x in c[:n + 1]) + (1,), degree=int(d),
                             monomials=tuple(monos))
    _expect(weights_and_degree(exponent_matrix(h)) == (h.weights, h.degree),
            "charges disagree with the cover weights", weights=h.weights)
    kx = canonical_degree(h)
    _expect(kx == 0, "index-1 cover is not Calabi-Yau", canonical_degree=kx)
    action = (0,) * (n + 1) + (int(m) - 1,)
    chars = {sum(a * w for a, w in zip(mono, action)) % m for mono in h.monomials}
    _expect(chars == {0}, "mu_m action on W does not fix the equation", characters=sorted(chars))
    return FamilyRecord(
        family="index1-cover", n=n, hypersurface=h, action_weights=action,
        invariants={"m": m, "group_order": m, "canonical_degree": kx},
        flags={"shape": classify_shape(h).describe(),
               "quasi_smooth": str(classify_shape(h).quasi_smooth).lower()})


# --- large index ------------------------------------------------------------------

def large_index(n, *, allow_large=False):
    _check_dim(n, allow_large, family="large-index")
    e = index_exponents(n)
    nums = index_numbers(n)
    h = hypersurface_from_monomials(loop_equation(e.b, e.last_exponent, n))
    odd = n % 2 == 1
    u, mp, E = nums.u_prime, nums.m_prime, nums.E
    _expect(h.degree == (u if odd else 2 * u), "degree is not u'_n (odd) or 2u'_n (even)",
            degree=h.degree, u_prime=u)
    _expect(h.weights[-2:] == (1, 1), "last two weights are not 1", weights=h.weights)
    _expect(canonical_degree(h) == 0, "not Calabi-Yau", degree=h.degree, weight_sum=sum(h.weights))
    if odd:
        _expect(2 * h.weights[0] == u - 1, "a'_0 != (u'-1)/2", a0=h.weights[0])
        _expect(u == 2 * e.b[n] - 1, "u' != 2b' - 1", u_prime=u)
    else:
        _expect(3 * h.weights[1] == 2 * u - 1, "a'_1 != (2u'-1)/3", a1=h.weights[1])
        _expect(4 * u == 3 * e.b[n] - 1, "4u' != 3b' - 1", u_prime=u)
    lhs = mp * u - 1 if odd else 2 * mp * u - 1
    rhs = product(e.b, 0 if odd else 1, n) * e.last_exponent
    _expect(lhs == rhs, "index identity m'u' - 1 = b...b'v' fails", lhs=lhs, rhs=rhs)
    M = exponent_matrix(h)
    order, structure = toric_automorphism_order(M, h.degree)
    _expect(order == (mp if odd else 2 * mp), "|Aut_T| differs from m' (odd) or 2m' (even)",
            order=order, m_prime=mp)
    mirror = mirror_charges(M)
    q_min = Fraction(min(mirror))
    _expect(q_min == Fraction(int(E), int(mp) * (1 if odd else 2)),
            "smallest mirror charge differs from E/m' (odd) or E/(2m') (even)", min_mirror_charge=q_min)
    g = int(gmpy2.gcd(mp, E))
    mirror_degree = common_denominator(mirror)
    faithful = mirror_degree == order
    _expect(faithful == (g == 1), "mirror degree test disagrees with gcd(m', E) test",
            gcd=g, mirror_degree=mirror_degree)
    inv = {"b_prime": e.b[n], "v_prime": e.last_exponent, "E": E, "u_prime": u,
           "m_prime": mp, "group_order": mp, "toric_group_order": order,
           "min_mirror_charge": q_min, "gcd_check": g, "canonical_degree": 0}
    if g == 1:
        inv["index_conditional"] = mp
    return FamilyRecord(
        family="large-index", n=n, hypersurface=h, invariants=inv,
        flags={"toric_group": structure, "quasi_smooth": "true",
               "index_conditional_on": "gcd(m', E) = 1",
               "well_formed": hypersurface_well_formed(h).verdict.value})


# --- comparison pairs on projective space --------------------------------------------

def kollar_volume(n):
    _check_dim(n, True, family="kollar")
    return Fraction(1, int((sylvester(n + 1) - 1) ** n))


def liu_mld(n):
    """mld 1/(s_{n+1} - 1) of Liu's pair; defined for n >= 1."""
    _check_dim(n, True, lowest=1, family="liu")
    return Fraction(1, int(sylvester(n + 1) - 1))


def threshold_gap_bound(n):
    """Conjectured bound 1/m_n for pairs (X, (1-b)S); 1/3 in dimension 1."""
    if n == 1:
        return Fraction(1, 3)
    return Fraction(1, int(alternating_sum(esser_exponents(n), zigzag_m_list(n))))


def _standard(s):
    return Fraction(int(s) - 1, int(s))


def kollar(n, *, allow_large=False):
    _check_dim(n, allow_large, family="kollar")
    coeffs = tuple(_standard(sylvester(i)) for i in range(n + 1)) + (Fraction(1),)
    deg = sum(coeffs) - (n + 1)
    vol = kollar_volume(n)
    _expect(gmpy2.mpq(deg.numerator, deg.denominator) ** n == gmpy2.mpq(vol.numerator, vol.denominator),
            "(K + B)^n differs from 1/(s_{n+1}-1)^n", degree=deg)
    return FamilyRecord(family="kollar", n=n, coefficients=coeffs,
                        invariants={"volume": vol, "degree_K_plus_B": deg})


def liu(n, *, allow_large=False):
    _check_dim(n, allow_large, lowest=1, family="liu")
    s_next = sylvester(n + 1)
    coeffs = (tuple(_standard(sylvester(i)) for i in range(n + 1))
              + (Fraction(int(s_next) - 2, int(s_next) - 1),))
    deg = sum(coeffs) - (n + 1)
    _expect(deg == 0, "Liu's pair is not Calabi-Yau", degree=deg)
    return FamilyRecord(family="liu", n=n, coefficients=coeffs,
                        invariants={"mld": liu_mld(n), "degree_K_plus_D": deg})


BUILDERS = {
    "small-volume": small_volume_pair,
    "esser-mld": esser_mld,
    "pair-mld": pair_mld,
    "index1-cover": index1_cover,
    "large-index": large_index,
    "kollar": kollar,
    "liu": liu,
}


def build(family, n, *, allow_large=False):
    try:
        builder = BUILDERS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    return builder(n, allow_large=allow_large)
