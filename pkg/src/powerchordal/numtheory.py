"""Integer factorization and the order predicates built on it.

Everything here works on unsigned 64-bit quantities. Values outside that range
raise :class:`OutOfRange` rather than silently wrapping.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterable

U64_MAX = (1 << 64) - 1
TRIAL_LIMIT = 10**6

# Deterministic for n < 3.3e24, which covers all 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class OutOfRange(ValueError):
    """Raised when a quantity does not fit the 64-bit working range."""


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES: list[int] | None = None


def _small_primes() -> list[int]:
    global _SMALL_PRIMES
    if _SMALL_PRIMES is None:
        _SMALL_PRIMES = _sieve(TRIAL_LIMIT)
    return _SMALL_PRIMES


def _check_range(n: int) -> None:
    if n < 0 or n > U64_MAX:
        raise OutOfRange(f"{n} does not fit in 64 bits")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit ``n``."""
    _check_range(n)
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int) -> int:
    """Return a non-trivial factor of the odd composite ``n``."""
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"Brent rho failed on {n}")  # pragma: no cover


@dataclass(frozen=True)
class FactoredInt:
    value: int
    factors: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def multiplicity(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def factor(n: int) -> FactoredInt:
    if n < 1:
        raise ValueError("factor() needs a positive integer")
    _check_range(n)
    counts: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    while stack:
        k = stack.pop()
        if is_prime(k):
            counts[k] = counts.get(k, 0) + 1
            continue
        r = isqrt(k)
        if r * r == k:
            stack += [r, r]
            continue
        d = _brent(k)
        stack += [d, k // d]
    return FactoredInt(n, tuple(sorted(counts.items())))


def prime_divisors(n: int) -> tuple[int, ...]:
    return factor(n).primes


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``n == p**e`` and ``e >= 1``, else None."""
    if n < 2:
        return None
    f = factor(n)
    return f.factors[0] if f.is_prime_power() else None


def is_chordal_cyclic_order(n: int) -> bool:
    """Whether the cyclic group of order ``n`` has a chordal power graph:
    at most two prime divisors, at most one of them repeated."""
    fs = factor(n).factors
    return len(fs) <= 2 and sum(1 for _, e in fs if e > 1) <= 1


def psl2_condition(q: int) -> bool:
    if q < 4 or prime_power(q) is None:
        raise ValueError(f"psl2_condition needs a prime power q >= 4, got {q}")
    _check_range(q + 1)
    lo = (q - 1) // gcd(q - 1, 2)
    hi = (q + 1) // gcd(q + 1, 2)
    return is_chordal_cyclic_order(lo) and is_chordal_cyclic_order(hi)


def suzuki_orders(n: int) -> tuple[int, int, int]:
    """Orders q-1, q-2^(n+1)+1, q+2^(n+1)+1 of the maximal tori of Sz(2^(2n+1))."""
    if n < 1:
        raise ValueError("Sz(q) needs n >= 1")
    q = 2 ** (2 * n + 1)
    r = 2 ** (n + 1)
    _check_range(q + r + 1)
    return q - 1, q - r + 1, q + r + 1


def sz_condition(n: int) -> bool:
    return all(is_chordal_cyclic_order(v) for v in suzuki_orders(n))


@dataclass(frozen=True)
class ScreenResult:
    clean: bool
    order: int | None = None
    pattern: str | None = None  # "p^2q^2" or "pqr"
    primes: tuple[int, ...] = ()


def screen_order(n: int) -> ScreenResult:
    fs = factor(n).factors
    if len(fs) >= 3:
        return ScreenResult(False, n, "pqr", tuple(p for p, _ in fs[:3]))
    squared = [p for p, e in fs if e > 1]
    if len(squared) >= 2:
        return ScreenResult(False, n, "p^2q^2", tuple(squared[:2]))
    return ScreenResult(True)


def order_screen(orders: Iterable[int]) -> ScreenResult:
    """Look for an element order divisible by p^2 q^2 or by p q r.

    The first offending order (smallest value) is reported.
    """
    seen = sorted(set(orders))
    if not seen or seen[0] < 1:
        raise ValueError("order_screen needs a non-empty set of positive orders")
    for n in seen:
        res = screen_order(n)
        if not res.clean:
            return res
    return ScreenResult(True)


def is_eppo(orders: Iterable[int]) -> bool:
    return all(n == 1 or prime_power(n) is not None for n in set(orders))


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factor(n).factors:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
