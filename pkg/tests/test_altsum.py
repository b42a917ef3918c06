import pytest
from hypothesis import given, strategies as st

from excy.altsum import (alternating_sum, esser_exponents, gtw, index_exponents, index_numbers,
                         mld_exponents, product, suffix_alternating_sum, zigzag, zigzag_m_list,
                         zigzag_u_list)
from excy.sylvester import sylvester


def brute_B(b, idx):
    """B_{i1..ik} straight from the definition: sum of signed prefix products."""
    k = len(idx)
    total = 0
    for j in range(k + 1):
        p = 1
        for i in idx[:j]:
            p *= b[i]
        total += (-1) ** (k - j) * p
    return total


def brute_suffix(b, idx):
    return sum((-1) ** j * brute_B(b, idx[j:]) for j in range(len(idx)))


exponent_lists = st.lists(st.integers(min_value=-30, max_value=60), min_size=1, max_size=9)


@given(exponent_lists, st.data())
def test_alternating_sum_matches_definition(b, data):
    idx = data.draw(st.permutations(range(len(b))))
    k = data.draw(st.integers(min_value=0, max_value=len(b)))
    idx = tuple(idx[:k])
    assert alternating_sum(b, idx) == brute_B(b, idx)
    assert suffix_alternating_sum(b, idx) == brute_suffix(b, idx)


@given(exponent_lists, st.data())
def test_suffix_sum_is_reversal_symmetric(b, data):
    idx = tuple(data.draw(st.permutations(range(len(b)))))
    assert suffix_alternating_sum(b, idx) == suffix_alternating_sum(b, idx[::-1])


def test_small_values():
    b = (2, 3, 7)
    assert alternating_sum(b, ()) == 1
    assert alternating_sum(b, (2,)) == 6
    assert alternating_sum(b, (1, 2)) == 21 - 3 + 1


def test_bad_index_lists():
    with pytest.raises(ValueError):
        alternating_sum((2, 3), (0, 0))
    with pytest.raises(ValueError):
        alternating_sum((2, 3), (2,))
    with pytest.raises(ValueError):
        zigzag_m_list(1)


def test_zigzag_lists():
    assert zigzag(4, 3, 2) == (4, 3, 5, 2)
    assert zigzag(1, 1, 0) == ()
    assert zigzag_m_list(5) == (0, 5, 1, 4, 2, 3)
    assert zigzag_m_list(4) == (1, 4, 2, 3)
    assert zigzag_u_list(5) == (3, 2, 4, 1, 5, 0)
    assert zigzag_u_list(4) == (3, 2, 4, 1)


def test_low_exponents_are_sylvester():
    for n in range(2, 12):
        b = esser_exponents(n)
        for i in range(n // 2 + 1):
            assert b[i] == sylvester(i)


def test_both_forms_of_exponent_recursion():
    # (b_{r+1-i} - 1)^2 B = b_0...b_{r-i} (b_{r+1-i} - 1) B because b_0...b_{k-1} = s_k - 1
    for n in range(2, 12):
        r = n // 2
        b = esser_exponents(n)
        top = r + 1 if n % 2 else r
        for i in range(1, top + 1):
            inner = alternating_sum(b, zigzag(r + 1, r, i - 1))
            assert b[r + i] == 1 + product(b, 0, r - i) * (b[r + 1 - i] - 1) * inner


def test_mld_exponents_low_dimensions():
    e2, e3, e4 = mld_exponents(2), mld_exponents(3), mld_exponents(4)
    assert (e2.b, e2.last_exponent) == ((2, 3, 5), 19)
    assert (e3.b, e3.last_exponent) == ((2, 3, 5, 12), 165)
    assert (e4.b, e4.last_exponent) == ((2, 3, 7, 37, 893), 904149)
    assert e3.parity == "odd" and e4.r == 2


def test_m_and_u():
    expected = {2: (13, 11), 3: (311, 191), 4: (677785, 462797)}
    for n, (m, u) in expected.items():
        b = esser_exponents(n)
        assert alternating_sum(b, zigzag_m_list(n)) == m
        assert alternating_sum(b, zigzag_u_list(n)) == u


def test_gtw_values():
    assert gtw(1, 2) == (1, 1, 5)
    assert gtw(1, 1) == (13, 11, 19)
    assert gtw(1, 0) == (311, 191, 165)
    with pytest.raises(ValueError):
        gtw(1, 3)


def test_gtw_k0_is_m_u_v():
    for r in range(1, 6):
        n = 2 * r + 1
        e = mld_exponents(n)
        b = e.b
        assert gtw(r, 0) == (alternating_sum(b, zigzag_m_list(n)),
                             alternating_sum(b, zigzag_u_list(n)), e.last_exponent)


def test_index_numbers_low_dimensions():
    expected = {2: (7, 9, 3, 19, 5), 3: (19, 32, 8, 493, 37), 4: (1583, 2319, 691, 1201495, 1187)}
    for n, (bp, vp, E, mp, up) in expected.items():
        x = index_numbers(n)
        assert (x.b_prime, x.v_prime, x.E, x.m_prime, x.u_prime) == (bp, vp, E, mp, up)
        e = index_exponents(n)
        assert e.b[n] == bp and e.last_exponent == vp and e.E == E
        assert e.b[:n] == esser_exponents(n)[:n]


def test_index_numbers_without_v():
    x = index_numbers(9, with_v=False)
    assert x.v_prime is None
    assert x.m_prime == index_numbers(9).m_prime


def test_u_prime_relations():
    for n in range(2, 15):
        x = index_numbers(n, with_v=False)
        if n % 2:
            assert x.u_prime == 2 * x.b_prime - 1
        else:
            assert 4 * x.u_prime == 3 * x.b_prime - 1
