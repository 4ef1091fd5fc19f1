import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import factorint, isprime

from powerchordal.numtheory import (
    OutOfRange,
    divisors,
    factor,
    is_chordal_cyclic_order,
    is_eppo,
    is_prime,
    lcm,
    order_screen,
    prime_power,
    psl2_condition,
    screen_order,
    suzuki_orders,
    sz_condition,
)


@given(st.integers(min_value=1, max_value=2**64 - 1))
@settings(max_examples=300, deadline=None)
def test_factor_matches_sympy(n):
    assert dict(factor(n).factors) == factorint(n)


@given(st.integers(min_value=0, max_value=10**12))
@settings(max_examples=300)
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == isprime(n)


def test_hard_semiprimes():
    for p, q in [(4294967291, 4294967279), (1000000007, 998244353), (2**31 - 1, 2**61 - 1)]:
        if p * q < 2**64:
            assert factor(p * q).factors == tuple(sorted([(p, 1), (q, 1)]))
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_range_checks():
    with pytest.raises(OutOfRange):
        factor(2**64)
    with pytest.raises((OutOfRange, ValueError)):
        factor(0)


def test_prime_power():
    assert prime_power(1) is None
    assert prime_power(2) == (2, 1)
    assert prime_power(243) == (3, 5)
    assert prime_power(12) is None


@pytest.mark.parametrize("n, ok", [(1, True), (12, True), (36, False), (30, False), (72, False), (24, True),
                                   (8, True), (9 * 25, False), (2 * 49, True)])
def test_chordal_cyclic_order(n, ok):
    assert is_chordal_cyclic_order(n) == ok


def test_psl2_condition_examples():
    assert psl2_condition(61) is False  # (q-1)/2 = 30
    assert psl2_condition(7) and psl2_condition(4) and psl2_condition(49)
    with pytest.raises(ValueError):
        psl2_condition(6)


@given(st.integers(min_value=4, max_value=5000).filter(lambda q: prime_power(q) is not None))
def test_psl2_condition_definition(q):
    d = 2 if q % 2 else 1
    assert psl2_condition(q) == (is_chordal_cyclic_order((q - 1) // d)
                                 and is_chordal_cyclic_order((q + 1) // d))


def test_suzuki():
    assert suzuki_orders(1) == (7, 5, 13)
    assert sz_condition(1) and sz_condition(2)
    q1, q2, q3 = suzuki_orders(3)
    assert q1 * q2 * q3 == (128 - 1) * (128**2 + 1)


def test_screen():
    assert screen_order(36).pattern == "p^2q^2"
    assert screen_order(30).pattern == "pqr"
    assert screen_order(12).clean
    assert order_screen([1, 2, 3, 6, 12]).clean
    bad = order_screen([1, 60, 30])
    assert not bad.clean and bad.order == 30
    with pytest.raises(ValueError):
        order_screen([])


def test_misc():
    assert is_eppo([1, 2, 4, 3, 9, 5])
    assert not is_eppo([1, 6])
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert lcm(4, 6) == 12


@given(st.integers(min_value=1, max_value=10**6))
def test_divisors_brute(n):
    if n <= 20000:
        assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]
    else:
        assert all(n % d == 0 for d in divisors(n))
