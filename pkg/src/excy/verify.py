"""Identity suites, bound checks and the gcd scan, reported as pass/fail lists.

Every suite accepts its data providers as keyword arguments so that tests
can feed in perturbed values and watch the suite fail with a witness.
"""

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from . import altsum
from .altsum import (alternating_sum, gtw, index_exponents, index_numbers, mld_exponents,
                     product, suffix_alternating_sum, zigzag, zigzag_m_list)
from .asymptotics import alpha, ratio_constants
from .families import loop_equation, pair_weights, small_volume_weights
from .hypersurface import hypersurface_from_monomials
from .sylvester import sylvester

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

# scan values above this many bits are summarized instead of written out in full
FULL_VALUE_BITS = 40_000

# the exact alpha bound has about 0.7 * 4^terms bits, so refinement stops here
REFINE_TERMS = 12


def _int_text(x):
    # gmpy2 converts without CPython's digit limit and much faster
    x = gmpy2.mpz(x)
    return str(x) if x.bit_length() < 4_000_000 else _summary(x)


def _text(x):
    if isinstance(x, Fraction):
        return f"{_int_text(x.numerator)}/{_int_text(x.denominator)}"
    if isinstance(x, (int, type(gmpy2.mpz(0)))):
        return _int_text(x)
    return str(x)


def _summary(x):
    x = gmpy2.mpz(x)
    return f"<{x.bit_length()} bits, ...{int(abs(x) % 10 ** 30):030d}>"


@dataclass(frozen=True)
class Check:
    name: str
    params: dict
    status: str
    witness: dict = None
    note: str = ""

    def to_dict(self):
        d = {"name": self.name, "params": self.params, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    params: dict
    checks: tuple = field(default_factory=tuple)

    @property
    def failures(self):
        return tuple(c for c in self.checks if c.status == FAIL)

    @property
    def inconclusive(self):
        return tuple(c for c in self.checks if c.status == INCONCLUSIVE)

    @property
    def passed(self):
        return all(c.status == PASS for c in self.checks)

    def to_dict(self):
        return {"suite": self.suite, "params": self.params,
                "summary": {s: sum(c.status == s for c in self.checks)
                            for s in (PASS, FAIL, INCONCLUSIVE)},
                "checks": [c.to_dict() for c in self.checks]}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def lines(self):
        for c in self.checks:
            params = " ".join(f"{k}={v}" for k, v in c.params.items())
            line = f"{c.status.upper():12} {c.name} {params}"
            if c.witness:
                line += "  " + " ".join(f"{k}={v}" for k, v in c.witness.items())
            yield line


def merge(suite, params, reports):
    return VerificationReport(suite=suite, params=params,
                              checks=tuple(c for r in reports for c in r.checks))


def equality(name, params, lhs, rhs):
    if lhs == rhs:
        return Check(name, params, PASS)
    return Check(name, params, FAIL, witness={"lhs": _text(lhs), "rhs": _text(rhs)})


def _require(value, lowest, what):
    if value < lowest:
        raise ValueError(f"{what} must be at least {lowest}, got {value}")


# --- product formulas ---------------------------------------------------------------

def verify_product_formulas(max_r, *, identities=("product", "qk"), gtw_fn=gtw):
    """(s_k-1) g_k t_k - 1 = b_k...b_{2r+1-k} w_k and g_k - s_k g_{k+1} = (s_k-1) b_{k+1}...b_{2r-k} w_{k+1}."""
    _require(max_r, 1, "max_r")
    checks = []
    for r in range(1, max_r + 1):
        b = altsum.esser_exponents(2 * r + 1)
        vals = [gtw_fn(r, k) for k in range(r + 2)]
        for k in range(r + 2):
            g, t, w = vals[k]
            s = sylvester(k)
            if "product" in identities:
                checks.append(equality("product", {"r": r, "k": k},
                                       (s - 1) * g * t - 1, product(b, k, 2 * r + 1 - k) * w))
            if "qk" in identities and k <= r:
                g1, _, w1 = vals[k + 1]
                checks.append(equality("qk", {"r": r, "k": k},
                                       g - s * g1, (s - 1) * product(b, k + 1, 2 * r - k) * w1))
    suite = "+".join(identities)
    return VerificationReport(suite=suite, params={"max_r": max_r}, checks=tuple(checks))


# --- Calabi-Yau sums ------------------------------------------------------------------

def _fraction_free_sylvester_bracket(b, lo, hi, twice):
    """b_lo...b_hi (1 - c sum 1/b_i) as an integer, c = 2 if ``twice`` else 1."""
    p = product(b, lo, hi)
    return p - (2 if twice else 1) * sum(p // b[i] for i in range(lo, hi + 1))


def telescoping_sum(b, v, n, index=False):
    """Determinant minus (twice, for even n) the adjugate entry sum, grouped by powers of v.

    ``b`` is b_0..b_n with b_n replaced by b'_n when ``index`` is set. The
    result is zero exactly when the hypersurface is Calabi-Yau.
    """
    r = n // 2
    top = n
    terms = []
    if n % 2:
        terms.append(product(b, r + 1, top) * v * _fraction_free_sylvester_bracket(b, 0, r, False))
        for i in range(1, (r if index else r + 1) + 1):
            inner = product(b, 0, r - i) * (b[r + 1 - i] - 1) * alternating_sum(b, zigzag(r + 1, r, i - 1))
            terms.append(-product(b, r + 1 + i, top) * v * inner)
        if index:
            terms.append(-v * alternating_sum(b, zigzag(r + 1, r, r)))
        terms.append(-(suffix_alternating_sum(b, zigzag(r + 1, r, r + 1)) + 1) + 1)
    else:
        terms.append(product(b, r + 1, top) * v * _fraction_free_sylvester_bracket(b, 1, r, True))
        for i in range(1, (r - 1 if index else r) + 1):
            inner = 2 * product(b, 1, r - i) * (b[r + 1 - i] - 1) * alternating_sum(b, zigzag(r + 1, r, i - 1))
            terms.append(-product(b, r + 1 + i, top) * v * inner)
        if index:
            terms.append(-v * 2 * (b[1] - 1) * alternating_sum(b, zigzag(r + 1, r, r - 1)))
        terms.append(-2 * (suffix_alternating_sum(b, zigzag(r + 1, r, r)) + 1) + 1)
    return sum(terms), tuple(terms)


def verify_calabi_yau_sums(max_n, *, mld_fn=mld_exponents, index_fn=index_exponents,
                           small_volume_fn=small_volume_weights):
    """D = sum a_j by charges and by the telescoping sum; K = O(1 - a_{n+1}) for the small-volume pair."""
    _require(max_n, 2, "max_n")
    checks = []
    for n in range(2, max_n + 1):
        for family, fn, index in (("esser-mld", mld_fn, False), ("large-index", index_fn, True)):
            e = fn(n)
            params = {"family": family, "n": n}
            try:
                h = hypersurface_from_monomials(loop_equation(e.b, e.last_exponent, n))
            except ValueError as exc:
                checks.append(Check("cy-charges", params, FAIL, witness={"error": str(exc)}))
            else:
                checks.append(equality("cy-charges", params, h.degree, sum(h.weights)))
            total, _ = telescoping_sum(e.b, e.last_exponent, n, index=index)
            checks.append(equality("cy-telescoping", params, total, 0))
        weights, d = small_volume_fn(n)
        checks.append(equality("small-volume-canonical", {"family": "small-volume", "n": n},
                               d - sum(weights), 1 - weights[-1]))
    return VerificationReport(suite="calabi-yau", params={"max_n": max_n}, checks=tuple(checks))


# --- index identity ----------------------------------------------------------------------

def verify_index_identity(max_n, *, index_fn=index_exponents, numbers_fn=index_numbers):
    """m'u' - 1 = b_0...b_{2r} b' v' (odd) and 2m'u' - 1 = b_1...b_{2r-1} b' v' (even)."""
    _require(max_n, 2, "max_n")
    checks = []
    for n in range(2, max_n + 1):
        e = index_fn(n)
        nums = numbers_fn(n)
        odd = n % 2 == 1
        lhs = (nums.m_prime if odd else 2 * nums.m_prime) * nums.u_prime - 1
        rhs = product(e.b, 0 if odd else 1, n) * e.last_exponent
        checks.append(equality("index-identity", {"n": n}, lhs, rhs))
        checks.append(equality("index-E", {"n": n}, nums.E, e.b[n] - e.shared_b_n + 1))
    return VerificationReport(suite="index-identity", params={"max_n": max_n}, checks=tuple(checks))


# --- pair degree -------------------------------------------------------------------------

def verify_pair_degree(max_n, *, weights_fn=pair_weights):
    """d - sum_{j<=n} c_j = 1 and c_{n+1} = m_n."""
    _require(max_n, 2, "max_n")
    checks = []
    for n in range(2, max_n + 1):
        c, d = weights_fn(n)
        checks.append(equality("pair-degree", {"n": n}, d - sum(c[:n + 1]), 1))
        m = alternating_sum(altsum.esser_exponents(n), zigzag_m_list(n))
        checks.append(equality("pair-last-weight", {"n": n}, c[n + 1], m))
    return VerificationReport(suite="pair-degree", params={"max_n": max_n}, checks=tuple(checks))


# --- asymptotic bounds -----------------------------------------------------------------------

def _decide(name, params, must_hold, cannot_hold, witness):
    """Pass if the conservative side holds, fail if even the optimistic side fails.

    ``witness`` is a callable, only evaluated when the check does not pass.
    """
    if must_hold:
        return Check(name, params, PASS)
    if cannot_hold:
        return Check(name, params, FAIL, witness=witness())
    return Check(name, params, INCONCLUSIVE, witness=witness(),
                 note="alpha enclosure too wide to decide")


def _m(n):
    return alternating_sum(altsum.esser_exponents(n), zigzag_m_list(n))


def _m_prime(n):
    return index_numbers(n, with_v=False).m_prime


def _alpha_ladder(enclosure):
    """Enclosures to try in turn: the given one only, or ever more product terms."""
    if enclosure is not None:
        yield enclosure
        return
    for terms in range(5, REFINE_TERMS + 1):
        yield alpha(terms)


def _decide_refining(name, params, enclosures, holds, fails, witness):
    """Run ``_decide`` with successively tighter enclosures until the check is decided."""
    check = None
    for enc in enclosures:
        check = _decide(name, params, holds(enc), fails(enc), lambda: witness(enc))
        if check.status != INCONCLUSIVE:
            return check, enc
    return check, enc


def verify_asymptotic_bounds(max_n, *, enclosure=None, m_fn=_m, m_prime_fn=_m_prime,
                             small_volume_fn=small_volume_weights):
    """Comparison bounds for m_n and m'_n against Sylvester numbers, decided with a rational alpha enclosure.

    Without an explicit ``enclosure`` each check starts from a 5-term
    enclosure (width about 1e-11) and adds terms until it is decided; the
    ratio (s_{n+1}-1)/m_n tends to alpha so fast that n >= 12 needs more.
    """
    _require(max_n, 2, "max_n")
    checks = []
    widest = None
    for n in range(2, max_n + 1):
        odd = n % 2 == 1
        m = int(m_fn(n))
        s_next = int(sylvester(n + 1))
        ratio = Fraction(s_next - 1, m)
        key = "odd" if odd else "even"
        check, enc = _decide_refining(
            "mld-vs-liu", {"n": n}, _alpha_ladder(enclosure),
            lambda e: ratio <= ratio_constants(e)[key].lo,
            lambda e: ratio > ratio_constants(e)[key].hi,
            lambda e: {"ratio_s_over_m": _text(ratio),
                       "constant_lo": _text(ratio_constants(e)[key].lo),
                       "constant_hi": _text(ratio_constants(e)[key].hi)})
        checks.append(check)
        widest = enc.width if widest is None else max(widest, enc.width)

        mp = int(m_prime_fn(n))
        s_n = int(sylvester(n))
        ikey = "index_odd" if odd else "index_even"
        top = (s_n - 1) * (2 * s_n - 3)
        check, enc = _decide_refining(
            "index-vs-sylvester", {"n": n}, _alpha_ladder(enclosure),
            lambda e: mp * ratio_constants(e)[ikey].lo >= top,
            lambda e: mp * ratio_constants(e)[ikey].hi < top,
            lambda e: {"m_prime_times_constant_lo": _text(mp * ratio_constants(e)[ikey].lo),
                       "target": _text(top)})
        checks.append(check)
        widest = max(widest, enc.width)

        if n > 2:
            weights, d = small_volume_fn(n)
            p = 1
            for a in weights:
                p *= int(a)
            vol = Fraction(int(d), p)
            checks.append(Check("volume-below-2^-2^n", {"n": n}, PASS)
                          if vol < Fraction(1, 2 ** (2 ** n))
                          else Check("volume-below-2^-2^n", {"n": n}, FAIL,
                                     witness={"volume": _text(vol), "bound": f"1/2^{2 ** n}"}))
            checks.append(Check("m-above-2^2^n", {"n": n}, PASS) if m > 2 ** (2 ** n)
                          else Check("m-above-2^2^n", {"n": n}, FAIL,
                                     witness={"m": _text(m), "bound": f"2^{2 ** n}"}))
    return VerificationReport(
        suite="bounds",
        params={"max_n": max_n, "max_alpha_width": f"{float(widest):.3e}"},
        checks=tuple(checks))


# --- gcd scan -------------------------------------------------------------------------------

def _fingerprint(x):
    x = gmpy2.mpz(x)
    return hashlib.sha256(gmpy2.to_binary(x)).hexdigest()


def _describe_value(x, full):
    x = gmpy2.mpz(x)
    d = {"bits": int(x.bit_length())}
    if full or x.bit_length() <= FULL_VALUE_BITS:
        d["decimal"] = str(x)
    else:
        d["low_digits"] = f"{int(x % 10 ** 30):030d}"
        d["sha256"] = _fingerprint(x)
    return d


def gcd_entry(n, numbers_fn=None, full=False):
    """Scan entry for one dimension: gcd(m'_n, E_n) plus the values (or summaries)."""
    nums = (numbers_fn or (lambda k: index_numbers(k, with_v=False)))(n)
    g = int(gmpy2.gcd(gmpy2.mpz(nums.m_prime), gmpy2.mpz(nums.E)))
    entry = {"n": n, "gcd": g, "m_prime": _describe_value(nums.m_prime, full),
             "E": _describe_value(nums.E, full)}
    if n >= 20 and numbers_fn is None:
        # each dimension uses its own exponent system; drop the cache so
        # memory stays at one dimension's worth
        altsum._esser_b.cache_clear()
    return entry


def _scan_worker(args):
    n, full = args
    return gcd_entry(n, full=full)


def scan_gcd_conjecture(max_n, parallelism=1, *, numbers_fn=None, on_result=None,
                        full=False, min_n=2):
    """gcd(m'_n, E_n) for min_n <= n <= max_n, in order of n whatever the parallelism.

    ``on_result`` is called with each entry as soon as it (and all smaller
    dimensions) are done.
    """
    _require(max_n, 2, "max_n")
    _require(min_n, 2, "min_n")
    dims = range(min_n, max_n + 1)
    if parallelism > 1 and numbers_fn is None:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            entries = pool.map(_scan_worker, [(n, full) for n in dims])
            collected = _collect(entries, on_result)
    else:
        collected = _collect((gcd_entry(n, numbers_fn, full) for n in dims), on_result)
    checks = tuple(
        Check("gcd", {"n": e["n"]}, PASS if e["gcd"] == 1 else FAIL,
              witness=None if e["gcd"] == 1 else {"gcd": str(e["gcd"])})
        for e in collected)
    return VerificationReport(suite="scan-gcd", params={"min_n": min_n, "max_n": max_n},
                              checks=checks), collected


def _collect(entries, on_result):
    out = []
    for e in entries:
        if on_result is not None:
            on_result(e)
        out.append(e)
    return out


SUITES = ("product", "qk", "calabi-yau", "index-identity", "pair-degree", "bounds")


def run_suite(name, *, max_n=10, max_r=None):
    """Run one named suite with default providers."""
    if max_r is None:
        max_r = max(1, (max_n - 1) // 2)
    if name == "product":
        return verify_product_formulas(max_r, identities=("product",))
    if name == "qk":
        return verify_product_formulas(max_r, identities=("qk",))
    if name == "calabi-yau":
        return verify_calabi_yau_sums(max_n)
    if name == "index-identity":
        return verify_index_identity(max_n)
    if name == "pair-degree":
        return verify_pair_degree(max_n)
    if name == "bounds":
        return verify_asymptotic_bounds(max_n)
    raise ValueError(f"unknown suite {name!r}")
