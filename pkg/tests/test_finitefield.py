import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF as SymGF
from sympy import Poly, symbols

from powerchordal.finitefield import (
    MODULI,
    FieldError,
    field,
    field_of_order,
    is_irreducible,
    least_irreducible,
    primitive_element,
)

X = symbols("x")
ORDERS = [(2, 1), (3, 1), (7, 1), (2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (2, 5), (3, 3), (7, 2)]


def _sym(F, code):
    return Poly(list(reversed(F.coeffs(code))), X, domain=SymGF(F.p))


def _code(F, poly):
    cs = [int(c) % F.p for c in reversed(poly.all_coeffs())]
    cs += [0] * (F.m - len(cs))
    return F.code(tuple(cs))


@pytest.mark.parametrize("p, m", sorted(MODULI))
def test_moduli_table_is_least_irreducible(p, m):
    assert MODULI[(p, m)] == least_irreducible(p, m)
    assert is_irreducible(MODULI[(p, m)], p)


@pytest.mark.parametrize("p, m", ORDERS)
def test_mul_matches_polynomial_oracle(p, m):
    F = field(p, m)
    mod = Poly(list(reversed(F.spec.modulus)), X, domain=SymGF(p))
    for a in range(F.q):
        for b in range(0, F.q, max(1, F.q // 8)):
            want = (_sym(F, a) * _sym(F, b)).rem(mod)
            assert F.mul(a, b) == _code(F, want)
            assert F.add(a, b) == _code(F, _sym(F, a) + _sym(F, b))


@pytest.mark.parametrize("p, m", ORDERS)
def test_field_axioms_exhaustive_small(p, m):
    F = field(p, m)
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.add(a, F.neg(a)) == 0
        assert F.pow(a, F.q - 1) == 1
    if F.q > 2:
        assert F.mult_order(F.primitive_element()) == F.q - 1
    else:
        with pytest.raises(FieldError):
            F.primitive_element()


@given(st.sampled_from([(2, 8), (3, 5), (5, 3), (13, 2), (31, 1)]), st.data())
@settings(max_examples=60, deadline=None)
def test_distributive_random(pm, data):
    F = field(*pm)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


def test_elements_and_errors():
    F = field_of_order(4)
    w = primitive_element(F)
    assert w * w == w + 1  # x^2 = x + 1 modulo x^2 + x + 1
    assert (w ** 3).value == 1
    assert w / w == F(1)
    with pytest.raises(FieldError):
        field_of_order(6)
    with pytest.raises(FieldError):
        field(4)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_tables_consistent():
    F = field(3, 2)
    add, mul, neg, inv = F.tables
    for a in range(F.q):
        assert neg[a] == F.neg(a)
        for b in range(F.q):
            assert add[a, b] == F.add(a, b) and mul[a, b] == F.mul(a, b)
