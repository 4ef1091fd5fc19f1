"""Arithmetic in GF(p^m) in the polynomial basis.

Field elements are coefficient vectors ``(c0, ..., c_{m-1})`` over Z/p, standing
for ``c0 + c1 x + ... + c_{m-1} x^{m-1}`` modulo the field's modulus. Each element
also has an integer code ``sum(c_i * p**i)``; codes are what the matrix groups
store, and code order is the fixed total order on field elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .numtheory import factor, is_prime

MAX_FIELD_SIZE = 2**20
TABLE_LIMIT = 1024  # build dense add/mul tables up to this q

# Monic irreducible moduli for p^m <= 512, coefficients low degree first with the
# leading 1 included. Each entry is the least irreducible polynomial of its degree
# under the code order on the non-leading coefficients; tests re-derive them.
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 1, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (2, 0, 0, 1),
    (11, 2): (1, 0, 1),
    (13, 2): (2, 0, 1),
    (17, 2): (3, 0, 1),
    (19, 2): (1, 0, 1),
}


class FieldError(ValueError):
    pass


def _polymod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by monic ``b`` over Z/p (low degree first)."""
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return [x % p for x in a[:db]] + [0] * max(0, db - len(a))


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Exhaustive check: no monic divisor of degree 1..deg/2."""
    m = len(poly) - 1
    if m < 1 or poly[-1] != 1:
        return False
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_polymod(list(poly), list(low) + [1], p)):
                return False
    return True


def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    for code in range(p**m):
        low = tuple((code // p**i) % p for i in range(m))
        poly = low + (1,)
        if is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.m


class GF:
    """The field GF(p^m). Elements are handled as integer codes; see module doc."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.m, self.q = spec.p, spec.m, spec.q
        self._tables = None

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    # -- code <-> coefficient vector
    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p**i) % self.p for i in range(self.m))

    def code(self, coeffs) -> int:
        if len(coeffs) != self.m or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"bad coefficient vector {coeffs} for {self}")
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            return value
        if isinstance(value, (tuple, list)):
            return FieldElem(self, self.code(tuple(value)))
        return FieldElem(self, int(value) % self.p if self.m == 1 else self._from_int(int(value)))

    def _from_int(self, v: int) -> int:
        # an integer literal means its residue in the prime subfield
        return v % self.p

    # -- scalar arithmetic on codes
    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.code(tuple((x + y) % self.p for x, y in zip(ca, cb)))

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self.code(tuple((-x) % self.p for x in self.coeffs(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod_ = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod_[i + j] = (prod_[i + j] + x * y) % self.p
        return self.code(tuple(_polymod(prod_, list(self.spec.modulus), self.p)))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        return self.pow(a, self.q - 2)

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n = self.q - 1
        order = n
        for r, _ in factor(n).factors if n > 1 else ():
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def primitive_element(self) -> int:
        """First code (scanning 2, 3, ...) whose multiplicative order is q-1."""
        if self.q < 3:
            raise FieldError("primitive_element needs q >= 3")
        for a in range(2, self.q):
            if self.mult_order(a) == self.q - 1:
                return a
        raise FieldError("no primitive element")  # pragma: no cover

    def label(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs(a)))):
            if not c:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    # -- dense tables for vectorized matrix arithmetic
    @property
    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``(add, mul, neg, inv)`` lookup tables indexed by code."""
        if self._tables is None:
            if self.q > TABLE_LIMIT:
                raise FieldError(f"{self} is too large for dense tables")
            q = self.q
            add = np.empty((q, q), dtype=np.int32)
            mul = np.empty((q, q), dtype=np.int32)
            for a in range(q):
                for b in range(a, q):
                    add[a, b] = add[b, a] = self.add(a, b)
                    mul[a, b] = mul[b, a] = self.mul(a, b)
            neg = np.array([self.neg(a) for a in range(q)], dtype=np.int32)
            inv = np.array([0] + [self.inv(a) for a in range(1, q)], dtype=np.int32)
            self._tables = (add, mul, neg, inv)
        return self._tables


@dataclass(frozen=True)
class FieldElem:
    field: GF
    value: int  # code

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldError("operands from different fields")
            return other.value
        return self.field(other).value

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inv(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * FieldElem(self.field, self._other(other)).inv()

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field(other).value
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.value))

    def __repr__(self):
        return self.field.label(self.value)


def field_spec(p: int, m: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if not 1 <= m <= 16 or p**m > MAX_FIELD_SIZE:
        raise FieldError(f"GF({p}^{m}) is out of range")
    if m == 1:
        modulus = (0, 1)
    else:
        modulus = MODULI.get((p, m)) or least_irreducible(p, m)
    return FieldSpec(p, m, modulus)


@lru_cache(maxsize=None)
def field(p: int, m: int = 1) -> GF:
    return GF(field_spec(p, m))


def field_of_order(q: int) -> GF:
    f = factor(q).factors
    if len(f) != 1:
        raise FieldError(f"{q} is not a prime power")
    return field(*f[0])


# add / mul / neg / inv on FieldElem, for callers that prefer functions
def add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def neg(a: FieldElem) -> FieldElem:
    return -a


def inv(a: FieldElem) -> FieldElem:
    return a.inv()


def primitive_element(f: GF) -> FieldElem:
    return FieldElem(f, f.primitive_element())
