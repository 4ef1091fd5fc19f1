"""Constructors for the group families used in the computations."""
from __future__ import annotations

from math import factorial, gcd
from pathlib import Path

import numpy as np

from ..finitefield import field_of_order
from ..numtheory import is_prime
from .backends import (
    AbelianBackend,
    DihedralBackend,
    MatBackend,
    PermBackend,
    ProductBackend,
    QuaternionBackend,
    SemidirectBackend,
    psl_order,
    sl_order,
)
from .core import CapExceeded, DEFAULT_CAP, FiniteGroup, GroupError

DATA_DIR = Path(__file__).parent / "data"

# Known orders used to validate generator files. Only M11 and M22 ship with data.
SPORADIC_ORDERS = {"M11": 7920, "M12": 95040, "M22": 443520, "J1": 175560}


def _perm(degree: int, *cycles) -> np.ndarray:
    img = np.arange(degree, dtype=np.uint8 if degree <= 255 else np.uint16)
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return img


def _check_cap(order: int, cap: int, name: str):
    if order > cap:
        raise CapExceeded(f"{name} has order {order}, above the cap {cap}")


def cyclic(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    return abelian([n], cap=cap, name=f"C{n}")


def abelian(moduli, cap: int = DEFAULT_CAP, name: str | None = None) -> FiniteGroup:
    moduli = [int(m) for m in moduli]
    if not moduli or any(m < 1 for m in moduli):
        raise GroupError(f"bad cyclic factor orders {moduli}")
    order = int(np.prod(moduli, dtype=object))
    name = name or "x".join(f"C{m}" for m in moduli)
    _check_cap(order, cap, name)
    be = AbelianBackend(moduli)
    return FiniteGroup(name, be, be.generators(), cap, expected_order=order)


def symmetric(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise GroupError("Sym(n) needs n >= 1")
    _check_cap(factorial(n), cap, f"Sym({n})")
    be = PermBackend(n)
    gens = [] if n == 1 else [_perm(n, [1, 2]), _perm(n, list(range(1, n + 1)))]
    if n == 2:
        gens = gens[:1]
    return FiniteGroup(f"Sym({n})", be, gens, cap, expected_order=factorial(n))


def alternating(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise GroupError("Alt(n) needs n >= 1")
    order = max(1, factorial(n) // 2)
    _check_cap(order, cap, f"Alt({n})")
    be = PermBackend(n)
    gens = [_perm(n, [1, 2, k]) for k in range(3, n + 1)]
    return FiniteGroup(f"Alt({n})", be, gens, cap, expected_order=order)


def quaternion(four_n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if four_n % 4 or four_n < 8:
        raise GroupError(f"generalized quaternion order must be 4n with n >= 2, got {four_n}")
    _check_cap(four_n, cap, f"Q{four_n}")
    be = QuaternionBackend(four_n // 4)
    return FiniteGroup(f"Q{four_n}", be, be.generators(), cap, expected_order=four_n)


def semidirect_cyclic(p: int, m: int, q: int, n: int, k: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """C_{p^m} x| C_{q^n}, the generator of C_{q^n} acting by a -> a^k.

    ``G.info["faithful_on_socle"]`` records whether the acting cyclic group
    centralizes only the identity of the order-p subgroup.
    """
    if not (is_prime(p) and is_prime(q)) or m < 1 or n < 1:
        raise GroupError(f"bad semidirect parameters {(p, m, q, n)}")
    pm, qn = p**m, q**n
    if gcd(k, p) != 1 or pow(k, qn, pm) != 1 % pm:
        raise GroupError(f"a -> a^{k} does not define an action of C_{qn} on C_{pm}")
    order = pm * qn
    name = f"C{pm}:C{qn}[{k}]"
    _check_cap(order, cap, name)
    be = SemidirectBackend(pm, qn, k % pm)
    G = FiniteGroup(name, be, be.generators(), cap, expected_order=order)
    G.info["faithful_on_socle"] = pow(k, q ** (n - 1), p) != 1 % p
    G.info["semidirect"] = (p, m, q, n, k)
    return G


def generalized_dihedral(A: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if not A.is_abelian():
        raise GroupError(f"{A.name} is not abelian")
    _check_cap(2 * A.order, cap, f"Dih({A.name})")
    be = DihedralBackend(A)
    return FiniteGroup(f"Dih({A.name})", be, be.generators(), cap, expected_order=2 * A.order)


def direct_product(H: FiniteGroup, K: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    _check_cap(H.order * K.order, cap, f"{H.name}x{K.name}")
    be = ProductBackend(H, K)
    G = FiniteGroup(f"({H.name} x {K.name})", be, be.generators(), cap,
                    expected_order=H.order * K.order)
    G.info["factors"] = (H, K)
    return G


def _transvections(k: int, F, be: MatBackend):
    gens = []
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            for t in range(F.m):
                m = be.identity().copy()
                m[i, j] = F.p**t  # code of x^t
                gens.append(m)
    return gens


def special_linear(k: int, q: int, cap: int = DEFAULT_CAP, projective: bool = False) -> FiniteGroup:
    if k < 2:
        raise GroupError("SL_k(q) needs k >= 2")
    F = field_of_order(q)
    order = psl_order(k, q) if projective else sl_order(k, q)
    name = f"{'PSL' if projective else 'SL'}({k},{q})"
    _check_cap(order, cap, name)
    be = MatBackend(F, k, projective=projective)
    G = FiniteGroup(name, be, _transvections(k, F, be), cap, expected_order=order)
    G.info["field"] = F
    return G


def projective_special_linear(k: int, q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    return special_linear(k, q, cap, projective=True)


def read_generator_file(path) -> tuple[int, list[str]]:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GroupError(f"{path}: empty generator file")
    try:
        degree = int(lines[0])
    except ValueError:
        raise GroupError(f"{path}: first line must be the degree") from None
    if degree < 1 or len(lines) < 2:
        raise GroupError(f"{path}: need a positive degree and at least one generator")
    return degree, lines[1:]


def load_sporadic(name: str, path=None, cap: int = DEFAULT_CAP) -> FiniteGroup:
    name = name.upper()
    if name not in SPORADIC_ORDERS:
        raise GroupError(f"no known order for sporadic group {name}")
    path = Path(path) if path else DATA_DIR / f"{name}.txt"
    if not path.exists():
        raise GroupError(f"no generator file for {name} at {path}; use sporadic:{name}@FILE with a generator file")
    degree, lines = read_generator_file(path)
    be = PermBackend(degree)
    try:
        gens = [be.parse(ln) for ln in lines]
    except ValueError as exc:
        raise GroupError(f"{path}: {exc}") from None
    _check_cap(SPORADIC_ORDERS[name], cap, name)
    known = SPORADIC_ORDERS[name]
    return FiniteGroup(name, be, gens, min(cap, known), expected_order=known)
