"""Deliberately broken providers: every suite must report a failure with a witness on them."""

import dataclasses

from excy import verify
from excy.altsum import gtw, index_exponents, index_numbers, mld_exponents
from excy.families import pair_weights, small_volume_weights


def gtw_off_by_one(r, k):
    g, t, w = gtw(r, k)
    return (g + 1, t, w) if k == 1 else (g, t, w)


def mld_last_exponent_bumped(n):
    e = mld_exponents(n)
    return dataclasses.replace(e, last_exponent=e.last_exponent + 1) if n == 3 else e


def index_last_exponent_bumped(n):
    e = index_exponents(n)
    return dataclasses.replace(e, last_exponent=e.last_exponent + 1) if n == 4 else e


def index_numbers_bad_E(n, with_v=True):
    nums = index_numbers(n, with_v)
    return dataclasses.replace(nums, E=nums.E + 2) if n == 5 else nums


def pair_degree_bumped(n):
    c, d = pair_weights(n)
    return (c, d + 1) if n == 3 else (c, d)


def small_volume_degree_inflated(n):
    w, d = small_volume_weights(n)
    p = 1
    for a in w:
        p *= a
    # volume d * p / p = d, far above any bound
    return (w, d * p) if n == 4 else (w, d)


def small_volume_first_weight_bumped(n):
    w, d = small_volume_weights(n)
    return ((w[0] + 1,) + w[1:], d) if n == 5 else (w, d)


def m_halved(n):
    return verify._m(n) // 2 ** (2 ** n - 1) if n == 6 else verify._m(n)


def m_prime_shrunk(n):
    return verify._m_prime(n) // 3 if n == 5 else verify._m_prime(n)


def scan_numbers_shared_factor(n):
    nums = index_numbers(n, with_v=False)
    return dataclasses.replace(nums, E=nums.m_prime * 7) if n == 3 else nums


def perturbed_reports(max_n=8):
    """One report per suite, each run on a broken provider."""
    return {
        "product": verify.verify_product_formulas(3, identities=("product",), gtw_fn=gtw_off_by_one),
        "qk": verify.verify_product_formulas(3, identities=("qk",), gtw_fn=gtw_off_by_one),
        "calabi-yau": verify.verify_calabi_yau_sums(max_n, mld_fn=mld_last_exponent_bumped),
        "calabi-yau-index": verify.verify_calabi_yau_sums(max_n, index_fn=index_last_exponent_bumped),
        "calabi-yau-small-volume": verify.verify_calabi_yau_sums(
            max_n, small_volume_fn=small_volume_first_weight_bumped),
        "index-identity": verify.verify_index_identity(max_n, numbers_fn=index_numbers_bad_E),
        "pair-degree": verify.verify_pair_degree(max_n, weights_fn=pair_degree_bumped),
        "bounds-m": verify.verify_asymptotic_bounds(max_n, m_fn=m_halved),
        "bounds-m-prime": verify.verify_asymptotic_bounds(max_n, m_prime_fn=m_prime_shrunk),
        "bounds-volume": verify.verify_asymptotic_bounds(
            max_n, small_volume_fn=small_volume_degree_inflated),
        "scan-gcd": verify.scan_gcd_conjecture(5, numbers_fn=scan_numbers_shared_factor)[0],
    }
