"""Weighted projective hypersurfaces given by a list of monomials.

A hypersurface with as many monomials as variables is encoded by its square
exponent matrix (one row per monomial). Its charges q solve M q = 1; the
degree is the least common denominator of the charges and the weights are
``degree * q``. The BHK mirror uses the transposed matrix.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations

import gmpy2
from gmpy2 import mpq

from .errors import SingularMatrixError, UnsupportedShapeError
from .linalg import determinant, loop_adjugate, rational_inverse_oracle


def _gcd_all(values):
    return int(reduce(gmpy2.gcd, values, gmpy2.mpz(0)))


@dataclass(frozen=True)
class WeightedHypersurface:
    """X_d in P(a_0, ..., a_{n+1}) cut out by a sum of monomials."""

    weights: tuple
    degree: int
    monomials: tuple

    def __post_init__(self):
        if not self.weights or any(a <= 0 for a in self.weights):
            raise ValueError("weights must be positive")
        if _gcd_all(self.weights) != 1:
            raise ValueError(f"weights {self.weights} are not coprime")
        for mono in self.monomials:
            if len(mono) != len(self.weights):
                raise ValueError(f"monomial {mono} has the wrong number of variables")
            if any(e < 0 for e in mono) or not any(mono):
                raise ValueError(f"bad exponent vector {mono}")
            deg = sum(e * a for e, a in zip(mono, self.weights))
            if deg != self.degree:
                raise ValueError(f"monomial {mono} has degree {deg}, expected {self.degree}")

    @property
    def dim(self):
        return len(self.weights) - 2

    @property
    def nvars(self):
        return len(self.weights)


def exponent_matrix(h):
    """Square exponent matrix of ``h`` (rows are monomials)."""
    if len(h.monomials) != h.nvars:
        raise ValueError(
            f"{len(h.monomials)} monomials in {h.nvars} variables; matrix is not square")
    return tuple(tuple(m) for m in h.monomials)


def canonical_degree(h):
    """d - sum(a_j), the degree of K_X for well-formed normal X."""
    return h.degree - sum(h.weights)


def volume_O1(h):
    """Volume of O_X(1): degree over the product of the weights."""
    p = 1
    for a in h.weights:
        p *= a
    return Fraction(int(h.degree), int(p))


def wps_well_formed(weights):
    """True iff every leave-one-out gcd of the weights is 1."""
    return all(_gcd_all(weights[:j] + weights[j + 1:]) == 1
               for j in range(len(weights)))


# --- shape classification -------------------------------------------------

@dataclass(frozen=True)
class ShapeComponent:
    """One Fermat, loop or chain summand.

    ``variables`` lists the head variables in order (cycle order for a loop,
    first link to terminal for a chain); ``exponents`` and ``rows`` are the
    head exponents and matrix rows in the same order.
    """

    kind: str
    variables: tuple
    exponents: tuple
    rows: tuple


@dataclass(frozen=True)
class ShapeReport:
    components: tuple
    quasi_smooth: bool

    @property
    def kinds(self):
        return tuple(c.kind for c in self.components)

    def describe(self):
        if not self.quasi_smooth:
            return "unclassified"
        return " + ".join(f"{c.kind}{len(c.variables)}" for c in self.components)


UNCLASSIFIED = ShapeReport(components=(), quasi_smooth=False)


def _match_heads(candidates):
    """Assign each monomial a distinct head variable, or return None."""
    order = sorted(range(len(candidates)), key=lambda i: len(candidates[i]))
    head = [None] * len(candidates)
    used = set()

    def place(pos):
        if pos == len(order):
            return True
        i = order[pos]
        for v in candidates[i]:
            if v not in used:
                used.add(v)
                head[i] = v
                if place(pos + 1):
                    return True
                used.discard(v)
        return False

    return head if place(0) else None


def classify_monomials(monomials, nvars):
    """Split a monomial list into Fermat/loop/chain summands on disjoint variables."""
    if len(monomials) != nvars or len(set(map(tuple, monomials))) != nvars:
        return UNCLASSIFIED
    candidates, partner = [], []
    for mono in monomials:
        support = [v for v, e in enumerate(mono) if e]
        if len(support) == 1:
            candidates.append(support)
            partner.append({support[0]: None})
        elif len(support) == 2:
            u, v = support
            opts = {}
            if mono[v] == 1:
                opts[u] = v
            if mono[u] == 1:
                opts[v] = u
            if not opts:
                return UNCLASSIFIED
            candidates.append(list(opts))
            partner.append(opts)
        else:
            return UNCLASSIFIED
    head = _match_heads(candidates)
    if head is None:
        return UNCLASSIFIED
    row_of = {h: i for i, h in enumerate(head)}
    nxt = {h: partner[i][h] for i, h in enumerate(head)}
    targets = [t for t in nxt.values() if t is not None]
    if len(targets) != len(set(targets)):
        return UNCLASSIFIED
    if all(monomials[row_of[v]][v] == 1 for v in range(nvars)):
        return UNCLASSIFIED

    pointed = set(targets)
    seen, comps = set(), []
    # chains start at variables nobody points to
    for start in range(nvars):
        if start in pointed or start in seen:
            continue
        path = [start]
        while nxt[path[-1]] is not None:
            path.append(nxt[path[-1]])
        seen.update(path)
        comps.append(("fermat" if len(path) == 1 else "chain", path))
    for start in range(nvars):
        if start in seen:
            continue
        cyc = [start]
        while nxt[cyc[-1]] != start:
            cyc.append(nxt[cyc[-1]])
        seen.update(cyc)
        comps.append(("loop", cyc))
    comps.sort(key=lambda c: min(c[1]))
    return ShapeReport(
        components=tuple(
            ShapeComponent(kind=kind, variables=tuple(vs),
                           exponents=tuple(monomials[row_of[v]][v] for v in vs),
                           rows=tuple(row_of[v] for v in vs))
            for kind, vs in comps),
        quasi_smooth=True)


def classify_shape(h):
    return classify_monomials(h.monomials, h.nvars)


# --- charges ----------------------------------------------------------------

def _block_inverse(m):
    """Return the inverse of ``m`` using loop blocks where possible.

    Loop blocks of odd length go through the closed form; everything else
    (chains, even loops, unclassified matrices) through elimination.
    """
    n = len(m)
    shape = classify_monomials(m, n)
    if not shape.quasi_smooth:
        return rational_inverse_oracle(m)
    inv = [[mpq(0)] * n for _ in range(n)]
    for comp in shape.components:
        vs, rows = comp.variables, comp.rows
        if comp.kind == "fermat":
            inv[vs[0]][rows[0]] = mpq(1, comp.exponents[0])
            continue
        if comp.kind == "loop" and len(vs) % 2 == 1:
            det, c = loop_adjugate(comp.exponents)
            block = [[mpq(x, det) for x in row] for row in c]
        else:
            sub = tuple(tuple(m[r][v] for v in vs) for r in rows)
            block = rational_inverse_oracle(sub)
        # the block is (loop variables) x (loop rows)
        for i, v in enumerate(vs):
            for j, r in enumerate(rows):
                inv[v][r] = block[i][j]
    return tuple(tuple(row) for row in inv)


def inverse(m):
    """Exact inverse of a square exponent matrix."""
    if determinant(m) == 0:
        raise SingularMatrixError("exponent matrix is singular")
    return _block_inverse(m)


def charges(m):
    """Row sums of M^-1, one per variable (as gmpy2 mpq)."""
    inv = inverse(m)
    return tuple(sum(row, mpq(0)) for row in inv)


def mirror_charges(m):
    """Column sums of M^-1: the charges of the transposed (mirror) matrix."""
    inv = inverse(m)
    return tuple(sum((row[j] for row in inv), mpq(0)) for j in range(len(inv)))


def common_denominator(values):
    return int(reduce(gmpy2.lcm, (x.denominator for x in values), gmpy2.mpz(1)))


def weights_and_degree(m):
    """Return (weights, degree) determined by the exponent matrix."""
    q = charges(m)
    if any(x <= 0 for x in q):
        raise ValueError(f"nonpositive charge in {q}; not a weighted hypersurface")
    d = common_denominator(q)
    return tuple(int(x * d) for x in q), d


def hypersurface_from_monomials(monomials):
    """Build the hypersurface whose weights and degree the monomials force."""
    monomials = tuple(tuple(int(e) for e in m) for m in monomials)
    weights, d = weights_and_degree(monomials)
    return WeightedHypersurface(weights=weights, degree=d, monomials=monomials)


def toric_automorphism_order(m, degree):
    """Order and structure of the diagonal automorphism group: |det M| / degree.

    Only a single loop ('cyclic') or x_0^2 plus a loop ('mu2 x cyclic') is
    supported.
    """
    shape = classify_monomials(m, len(m))
    kinds = sorted(shape.kinds)
    if kinds == ["loop"]:
        structure = "cyclic"
    elif kinds == ["fermat", "loop"] and next(
            c for c in shape.components if c.kind == "fermat").exponents == (2,):
        structure = "mu2 x cyclic"
    else:
        raise UnsupportedShapeError(f"toric group needs a loop or x^2 + loop, got {shape.describe()}")
    det = abs(determinant(m))
    order, rem = divmod(det, degree)
    if rem:
        raise ValueError(f"|det| = {det} is not divisible by degree {degree}")
    return order, structure


# --- well-formedness ----------------------------------------------------------

class Verdict(str, enum.Enum):
    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class WellFormedness:
    verdict: Verdict
    reason: str
    stratum: tuple = ()


def hypersurface_well_formed(h):
    """Decide whether X meets the singular strata of P in codimension >= 2.

    Fast path: quasi-smooth of dimension >= 3 with degree different from
    every weight. Otherwise the coordinate strata are checked directly: X is
    not well-formed exactly when it contains a stratum with nontrivial
    stabilizer that has codimension 1 in X, i.e. one where only two
    coordinates vanish and no monomial survives.
    """
    w = h.weights
    if not wps_well_formed(w):
        return WellFormedness(Verdict.FALSE, "ambient weighted projective space is not well-formed")
    n = h.nvars
    if any(all(mono[v] for mono in h.monomials) for v in range(n)):
        return WellFormedness(Verdict.INCONCLUSIVE, "every monomial shares a variable; equation is reducible")
    if h.dim >= 3 and h.degree not in w and classify_shape(h).quasi_smooth:
        return WellFormedness(Verdict.TRUE, "quasi-smooth, dimension >= 3, degree differs from all weights")
    for gone in combinations(range(n), 2):
        keep = [v for v in range(n) if v not in gone]
        if _gcd_all(w[v] for v in keep) == 1:
            continue
        if not any(all(mono[v] == 0 for v in gone) for mono in h.monomials):
            return WellFormedness(
                Verdict.FALSE,
                f"X contains the stratum x_{gone[0]} = x_{gone[1]} = 0 with stabilizer "
                f"of order {_gcd_all(w[v] for v in keep)}",
                stratum=tuple(keep))
    return WellFormedness(Verdict.TRUE, "no codimension-1 singular stratum lies in X")
