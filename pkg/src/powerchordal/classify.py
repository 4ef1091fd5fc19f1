"""Classification predicates: simple groups, nilpotent groups, generalized
dihedral and quaternion groups, direct products, and socle shapes."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, gcd, prod

import numpy as np

from .chordal import is_chordal
from .groups import FiniteGroup
from .numtheory import (
    FactoredInt,
    factor,
    is_prime,
    prime_power,
    psl2_condition,
    sz_condition,
)
from .powergraph import power_graph


class ClassifyError(ValueError):
    pass


class NotNilpotentError(ClassifyError):
    pass


class HypothesisError(ClassifyError):
    """A factor handed to :func:`decide_direct_product` is not power-chordal."""


BASES = ("predicate", "brute-force", "criterion")


@dataclass(frozen=True)
class Verdict:
    chordal: bool
    basis: str
    certificate: dict | None = None
    label: str = ""

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        if self.basis == "criterion" and not self.certificate:
            raise ValueError("a criterion verdict needs the firing criterion as certificate")
        if self.basis == "brute-force" and not self.chordal and not self.certificate:
            raise ValueError("a brute-force non-chordal verdict needs a hole certificate")

    def __bool__(self) -> bool:
        return self.chordal

    def to_dict(self) -> dict:
        return {"chordal": self.chordal, "basis": self.basis,
                "certificate": self.certificate, "label": self.label}


# ---------------------------------------------------------------- simple groups

FAMILIES = (
    "CyclicPrime", "Alt", "PSL", "Sz", "PSp", "PSU", "POmega", "G2", "Ree", "F4",
    "twistedF4", "Tits", "D4triality", "E6", "twistedE6", "E7", "E8", "Sporadic",
)

_SPORADIC_FACTORS = {
    "M11": {2: 4, 3: 2, 5: 1, 11: 1},
    "M12": {2: 6, 3: 3, 5: 1, 11: 1},
    "M22": {2: 7, 3: 2, 5: 1, 7: 1, 11: 1},
    "M23": {2: 7, 3: 2, 5: 1, 7: 1, 11: 1, 23: 1},
    "M24": {2: 10, 3: 3, 5: 1, 7: 1, 11: 1, 23: 1},
    "J1": {2: 3, 3: 1, 5: 1, 7: 1, 11: 1, 19: 1},
    "J2": {2: 7, 3: 3, 5: 2, 7: 1},
    "J3": {2: 7, 3: 5, 5: 1, 17: 1, 19: 1},
    "J4": {2: 21, 3: 3, 5: 1, 7: 1, 11: 3, 23: 1, 29: 1, 31: 1, 37: 1, 43: 1},
    "HS": {2: 9, 3: 2, 5: 3, 7: 1, 11: 1},
    "MCL": {2: 7, 3: 6, 5: 3, 7: 1, 11: 1},
    "SUZ": {2: 13, 3: 7, 5: 2, 7: 1, 11: 1, 13: 1},
    "CO1": {2: 21, 3: 9, 5: 4, 7: 2, 11: 1, 13: 1, 23: 1},
    "CO2": {2: 18, 3: 6, 5: 3, 7: 1, 11: 1, 23: 1},
    "CO3": {2: 10, 3: 7, 5: 3, 7: 1, 11: 1, 23: 1},
    "HE": {2: 10, 3: 3, 5: 2, 7: 3, 17: 1},
    "FI22": {2: 17, 3: 9, 5: 2, 7: 1, 11: 1, 13: 1},
    "FI23": {2: 18, 3: 13, 5: 2, 7: 1, 11: 1, 13: 1, 17: 1, 23: 1},
    "FI24'": {2: 21, 3: 16, 5: 2, 7: 3, 11: 1, 13: 1, 17: 1, 23: 1, 29: 1},
    "HN": {2: 14, 3: 6, 5: 6, 7: 1, 11: 1, 19: 1},
    "LY": {2: 8, 3: 7, 5: 6, 7: 1, 11: 1, 31: 1, 37: 1, 67: 1},
    "TH": {2: 15, 3: 10, 5: 3, 7: 2, 13: 1, 19: 1, 31: 1},
    "B": {2: 41, 3: 13, 5: 6, 7: 2, 11: 1, 13: 1, 17: 1, 19: 1, 23: 1, 31: 1, 47: 1},
    "M": {2: 46, 3: 20, 5: 9, 7: 6, 11: 2, 13: 3, 17: 1, 19: 1, 23: 1, 29: 1, 31: 1,
          41: 1, 47: 1, 59: 1, 71: 1},
    "O'N": {2: 9, 3: 4, 5: 1, 7: 3, 11: 1, 19: 1, 31: 1},
    "RU": {2: 14, 3: 3, 5: 3, 7: 1, 13: 1, 29: 1},
}
SPORADIC_NAMES = tuple(_SPORADIC_FACTORS)
_SPORADIC_ALIASES = {"FI24": "FI24'", "ON": "O'N", "F24'": "FI24'"}

# text tag -> (family, number of integer parameters)
_TAGS = {
    "cyclic": ("CyclicPrime", 1), "alt": ("Alt", 1), "psl": ("PSL", 2), "sz": ("Sz", 1),
    "psp": ("PSp", 2), "psu": ("PSU", 2), "omega": ("POmega", 2), "omega+": ("POmega", 2),
    "omega-": ("POmega", 2), "g2": ("G2", 1), "ree": ("Ree", 1), "f4": ("F4", 1),
    "2f4": ("twistedF4", 1), "tits": ("Tits", 0), "3d4": ("D4triality", 1), "e6": ("E6", 1),
    "2e6": ("twistedE6", 1), "e7": ("E7", 1), "e8": ("E8", 1),
}
_FAMILY_TAG = {"CyclicPrime": "cyclic", "Alt": "alt", "PSL": "psl", "Sz": "sz", "PSp": "psp",
               "PSU": "psu", "G2": "g2", "Ree": "ree", "F4": "f4", "twistedF4": "2f4",
               "Tits": "tits", "D4triality": "3d4", "E6": "e6", "twistedE6": "2e6",
               "E7": "e7", "E8": "e8"}


def _odd_power_of(q: int, base: int) -> bool:
    pp = prime_power(q)
    return pp is not None and pp[0] == base and pp[1] % 2 == 1 and pp[1] >= 3


def _need_prime_power(q: int, what: str):
    if prime_power(q) is None:
        raise ClassifyError(f"{what}: {q} is not a prime power")


@dataclass(frozen=True)
class SimpleGroupId:
    """A finite simple group named by family and parameters.

    ``params`` holds ``(p,)`` for CyclicPrime, ``(n,)`` for Alt, ``(n, q)`` for
    the classical families (``n`` the dimension), ``(q,)`` for exceptional
    families, ``()`` for the Tits group and ``(name,)`` for sporadic groups.
    POmega carries a ``sign`` of ``0`` (odd dimension), ``+1`` or ``-1``.
    """

    family: str
    params: tuple = ()
    sign: int = 0

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        f, p = self.family, self.params
        if f not in FAMILIES:
            raise ClassifyError(f"unknown family {f!r}")
        if f == "Sporadic":
            if len(p) != 1 or p[0] not in _SPORADIC_FACTORS:
                raise ClassifyError(f"unknown sporadic group {p}")
            return
        if f == "Tits":
            if p:
                raise ClassifyError("the Tits group takes no parameters")
            return
        if not all(isinstance(v, int) for v in p):
            raise ClassifyError(f"{f} parameters must be integers")
        if f == "CyclicPrime":
            if len(p) != 1 or not is_prime(p[0]):
                raise ClassifyError(f"cyclic simple groups have prime order, got {p}")
        elif f == "Alt":
            if len(p) != 1 or p[0] < 5:
                raise ClassifyError("Alt(n) is simple and non-abelian only for n >= 5")
        elif f in ("PSL", "PSp", "PSU", "POmega"):
            if len(p) != 2:
                raise ClassifyError(f"{f} needs a dimension and a field order")
            n, q = p
            _need_prime_power(q, f)
            if f == "PSL" and (n < 2 or (n == 2 and q < 4)):
                raise ClassifyError(f"PSL({n},{q}) is not a non-abelian simple group")
            if f == "PSp" and (n < 4 or n % 2 or (n, q) == (4, 2)):
                raise ClassifyError(f"PSp({n},{q}) is not simple (need even n >= 4, not PSp4(2))")
            if f == "PSU" and (n < 3 or (n, q) == (3, 2)):
                raise ClassifyError(f"PSU({n},{q}) is not simple")
            if f == "POmega":
                if self.sign not in (0, 1, -1):
                    raise ClassifyError("POmega sign must be 0, +1 or -1")
                if self.sign == 0 and (n < 3 or n % 2 == 0 or q % 2 == 0 or (n, q) == (3, 3)):
                    raise ClassifyError("odd-dimensional Omega needs odd n >= 3, odd q, and not Omega(3,3)")
                if self.sign and (n < 4 or n % 2):
                    raise ClassifyError("Omega+/- needs even n >= 4")
                if self.sign == 1 and n == 4:
                    raise ClassifyError("Omega+(4,q) is not simple")
        else:
            if len(p) != 1:
                raise ClassifyError(f"{f} takes one field order")
            (q,) = p
            if f == "Sz" and not _odd_power_of(q, 2):
                raise ClassifyError("Sz(q) needs q = 2^(2n+1) with n >= 1")
            elif f == "Ree" and not _odd_power_of(q, 3):
                raise ClassifyError("Ree(q) needs q = 3^(2n+1) with n >= 1")
            elif f == "twistedF4" and not _odd_power_of(q, 2):
                raise ClassifyError("2F4(q) needs q = 2^(2n+1) with n >= 1 (use tits for 2F4(2)')")
            _need_prime_power(q, f)
            if f == "G2" and q == 2:
                raise ClassifyError("G2(2) is not simple")

    @classmethod
    def parse(cls, text: str) -> "SimpleGroupId":
        s = text.strip()
        low = s.lower()
        if low == "tits":
            return cls("Tits")
        if ":" not in s:
            raise ClassifyError(f"cannot parse simple group id {text!r}")
        tag, rest = s.split(":", 1)
        tag = tag.strip().lower()
        if tag == "sporadic":
            name = rest.strip().upper()
            name = _SPORADIC_ALIASES.get(name, name)
            return cls("Sporadic", (name,))
        if tag not in _TAGS:
            raise ClassifyError(f"unknown simple group family {tag!r}")
        family, nparams = _TAGS[tag]
        try:
            vals = tuple(int(v) for v in rest.split(","))
        except ValueError:
            raise ClassifyError(f"bad parameters in {text!r}") from None
        if len(vals) != nparams:
            raise ClassifyError(f"{tag}: expects {nparams} parameter(s)")
        sign = {"omega": 0, "omega+": 1, "omega-": -1}.get(tag, 0)
        return cls(family, vals, sign)

    def __str__(self) -> str:
        if self.family == "Sporadic":
            return f"sporadic:{self.params[0]}"
        if self.family == "Tits":
            return "tits"
        if self.family == "POmega":
            tag = {0: "omega", 1: "omega+", -1: "omega-"}[self.sign]
        else:
            tag = _FAMILY_TAG[self.family]
        return f"{tag}:" + ",".join(map(str, self.params))


def _classical_order(family: str, n: int, q: int, sign: int = 0) -> int:
    if family == "PSL":
        return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(2, n + 1)) // gcd(n, q - 1)
    if family == "PSU":
        return q ** (n * (n - 1) // 2) * prod(q**i - (-1) ** i for i in range(2, n + 1)) // gcd(n, q + 1)
    if family == "PSp" or (family == "POmega" and sign == 0):
        m = n // 2
        return q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1)) // gcd(2, q - 1)
    m = n // 2  # POmega+/- in dimension 2m
    top = q**m - sign
    return q ** (m * (m - 1)) * top * prod(q ** (2 * i) - 1 for i in range(1, m)) // gcd(4, top)


def simple_order(sid: SimpleGroupId) -> int:
    f, p = sid.family, sid.params
    if f == "CyclicPrime":
        return p[0]
    if f == "Alt":
        return factorial(p[0]) // 2
    if f == "Sporadic":
        return prod(r**e for r, e in _SPORADIC_FACTORS[p[0]].items())
    if f == "Tits":
        return 17971200
    if f in ("PSL", "PSp", "PSU", "POmega"):
        return _classical_order(f, p[0], p[1], sid.sign)
    q = p[0]
    if f == "Sz":
        return q * q * (q * q + 1) * (q - 1)
    if f == "Ree":
        return q**3 * (q**3 + 1) * (q - 1)
    if f == "G2":
        return q**6 * (q**6 - 1) * (q**2 - 1)
    if f == "F4":
        return q**24 * (q**12 - 1) * (q**8 - 1) * (q**6 - 1) * (q**2 - 1)
    if f == "twistedF4":
        return q**12 * (q**6 + 1) * (q**4 - 1) * (q**3 + 1) * (q - 1)
    if f == "D4triality":
        return q**12 * (q**8 + q**4 + 1) * (q**6 - 1) * (q**2 - 1)
    if f == "E6":
        return q**36 * prod(q**i - 1 for i in (2, 5, 6, 8, 9, 12)) // gcd(3, q - 1)
    if f == "twistedE6":
        return q**36 * prod(q**i - (-1) ** i for i in (2, 5, 6, 8, 9, 12)) // gcd(3, q + 1)
    if f == "E7":
        return q**63 * prod(q**i - 1 for i in (2, 6, 8, 10, 12, 14, 18)) // gcd(2, q - 1)
    return q**120 * prod(q**i - 1 for i in (2, 8, 12, 14, 18, 20, 24, 30))  # E8


def normalize(sid: SimpleGroupId) -> SimpleGroupId:
    """Canonical representative under the exceptional isomorphisms."""
    f, p = sid.family, sid.params
    if f == "PSL":
        n, q = p
        if (n, q) in ((2, 4), (2, 5)):
            return SimpleGroupId("Alt", (5,))
        if (n, q) == (2, 9):
            return SimpleGroupId("Alt", (6,))
        if (n, q) == (4, 2):
            return SimpleGroupId("Alt", (8,))
        if (n, q) == (3, 2):
            return SimpleGroupId("PSL", (2, 7))
    if f == "PSp" and p == (4, 3):
        return SimpleGroupId("PSU", (4, 2))
    if f == "POmega":
        n, q = p
        if sid.sign == 0 and n == 3:
            return normalize(SimpleGroupId("PSL", (2, q)))
        if sid.sign == 0 and n == 5:
            return normalize(SimpleGroupId("PSp", (4, q)))
        if sid.sign == 1 and n == 6:
            return normalize(SimpleGroupId("PSL", (4, q)))
        if sid.sign == -1 and n == 6:
            return SimpleGroupId("PSU", (4, q))
        if sid.sign == -1 and n == 4:
            return normalize(SimpleGroupId("PSL", (2, q * q)))
    return sid


_EPPO_SIMPLE = {("Alt", (5,)), ("Alt", (6,)), ("PSL", (2, 7)), ("PSL", (2, 8)), ("PSL", (2, 17)),
                ("PSL", (3, 4)), ("Sz", (8,)), ("Sz", (32,))}


def is_eppo_simple(sid: SimpleGroupId) -> bool:
    n = normalize(sid)
    return n.family == "CyclicPrime" or (n.family, n.params) in _EPPO_SIMPLE


def classify_simple(sid: SimpleGroupId | str) -> Verdict:
    """Power-chordality of a finite simple group, decided by family and parameters."""
    if isinstance(sid, str):
        sid = SimpleGroupId.parse(sid)
    n = normalize(sid)
    f, p = n.family, n.params
    if f == "CyclicPrime":
        ok, rule = True, "cyclic of prime order"
    elif f == "Alt":
        ok, rule = p[0] <= 7, "alternating: chordal exactly for n in {5, 6, 7}"
    elif f == "PSL" and p == (3, 4):
        ok, rule = True, "PSL3(4) is an EPPO group"
    elif f == "PSL" and p[0] == 2:
        ok, rule = psl2_condition(p[1]), "PSL2(q): (q-1)/d and (q+1)/d both chordal cyclic orders"
    elif f == "Sz":
        m = (prime_power(p[0])[1] - 1) // 2
        ok, rule = sz_condition(m), "Sz(q): all three torus orders chordal cyclic orders"
    else:
        ok, rule = False, f"no member of family {f} outside the listed exceptions is power-chordal"
    cert = {"id": str(sid), "normalized": str(n), "rule": rule}
    return Verdict(ok, "predicate", cert, str(n))


# ---------------------------------------------------------------- nilpotent groups

def _sylow_count(G: FiniteGroup, r: int) -> tuple[int, int]:
    """Number of r-elements and the largest r-element order."""
    els = G.prime_elements(r)
    return len(els), int(G.orders[els].max())


@dataclass(frozen=True)
class NilpotentShape:
    order: FactoredInt
    sylow_cyclic: dict = field(default_factory=dict)  # prime -> bool
    sylow_exponent: dict = field(default_factory=dict)  # prime -> int

    @property
    def is_p_group(self) -> bool:
        return len(self.order.factors) <= 1


def nilpotent_shape(G: FiniteGroup) -> NilpotentShape:
    """Sylow data of a nilpotent group; raises NotNilpotentError otherwise.

    A group is nilpotent iff every Sylow subgroup is normal, i.e. for each
    prime r the r-elements number exactly |G|_r.
    """
    fo = G.order_factors
    cyc, expo = {}, {}
    for r, e in fo.factors:
        count, top = _sylow_count(G, r)
        if count != r**e:
            raise NotNilpotentError(f"{G.name}: the Sylow {r}-subgroup is not normal")
        cyc[r] = top == r**e
        expo[r] = top
    return NilpotentShape(fo, cyc, expo)


def nilpotent_predicate(shape: NilpotentShape) -> bool:
    """p-group, or C_{q^m} x P with P of exponent p."""
    if shape.is_p_group:
        return True
    if len(shape.order.factors) > 2:
        return False
    (a, _), (b, _) = shape.order.factors
    return any(shape.sylow_cyclic[q] and shape.sylow_exponent[p] == p
               for q, p in ((a, b), (b, a)))


def decide_generalized_dihedral(A: FiniteGroup) -> Verdict:
    if not A.is_abelian():
        raise ClassifyError(f"{A.name} is not abelian")
    ok = nilpotent_predicate(nilpotent_shape(A))
    return Verdict(ok, "predicate", {"A": A.name}, "generalized-dihedral")


def decide_quaternion(four_n: int) -> Verdict:
    """Q_{4n} is power-chordal iff 2n = 2^a p^b (p odd prime) with a <= 1 or b <= 1."""
    if four_n % 4 or four_n < 8:
        raise ClassifyError("Q_{4n} needs 4n divisible by 4 with n >= 2")
    two_n = four_n // 2
    fs = dict(factor(two_n).factors)
    a = fs.pop(2, 0)
    if len(fs) > 1:
        ok = False
    else:
        b = next(iter(fs.values()), 0)
        ok = a <= 1 or b <= 1
    return Verdict(ok, "predicate", {"2n": two_n}, "quaternion")


# ---------------------------------------------------------------- direct products

def _primes_of(G: FiniteGroup) -> tuple[int, ...]:
    return tuple(p for p, _ in G.order_factors.factors)


def _part(G: FiniteGroup, r: int) -> int:
    return r ** G.order_factors.multiplicity(r)


def _is_cyclic(G: FiniteGroup) -> bool:
    # exponent == order is not enough: C3 x| C4 has exponent 12
    return int(G.orders.max()) == G.order


def _is_eppo(G: FiniteGroup) -> bool:
    return all(o == 1 or prime_power(o) is not None for o in G.order_set)


def _cyclic_sylow(G: FiniteGroup, r: int) -> int | None:
    """A generator of the Sylow r-subgroup when it is cyclic and normal."""
    els = G.prime_elements(r)
    if len(els) != _part(G, r):
        return None
    g = int(els[np.argmax(G.orders[els])])
    return g if G.element_order(g) == len(els) else None


def _has_cyclic_sylow(G: FiniteGroup, r: int) -> int | None:
    """Some element generating a (not necessarily normal) cyclic Sylow r-subgroup."""
    els = G.prime_elements(r)
    g = int(els[np.argmax(G.orders[els])])
    return g if G.element_order(g) == _part(G, r) else None


def _socle_gen(G: FiniteGroup, g: int) -> int:
    """Generator of the socle of the cyclic group <g> (order = radical of |g|)."""
    o = G.element_order(g)
    rad = prod(p for p, _ in factor(o).factors) if o > 1 else 1
    return G.power(g, o // rad)


def _faithful(G: FiniteGroup, n: int, u: int) -> bool:
    """C_<u>(soc <n>) = 1 for u of prime-power order."""
    ou = G.element_order(u)
    if ou == 1:
        return True
    r = prime_power(ou)[0]
    return not G.commute(G.power(u, ou // r), _socle_gen(G, n))


@dataclass(frozen=True)
class MetacyclicShape:
    """H = N x| U with N = <n> cyclic normal, U = <u> cyclic, N meet U trivial."""
    n: int
    u: int
    order_n: int
    order_u: int


def _cyclic_by_cyclic(G: FiniteGroup, q: int, n_order: int) -> list[MetacyclicShape]:
    """All faithful decompositions G = N x| U, |N| = n_order, U a cyclic q-group."""
    if G.order % n_order:
        return []
    u_order = G.order // n_order
    if prime_power(u_order) is None and u_order != 1:
        return []
    if u_order > 1 and prime_power(u_order)[0] != q:
        return []
    cid = G.cyclic_ids
    orders = G.orders
    ns = [int(x) for x in np.unique(cid[orders == n_order])]
    ns = [x for x in ns if G.is_normal_in(G.powers(x), np.arange(G.order))]
    us = [int(x) for x in np.unique(cid[orders == u_order])]
    out = []
    for n in ns:
        nset = set(G.powers(n).tolist())
        for u in us:
            if len(nset.intersection(G.powers(u).tolist())) != 1:
                continue
            if _faithful(G, n, u):
                out.append(MetacyclicShape(n, u, n_order, u_order))
                break
    return out


def _h_metacyclic(H: FiniteGroup):
    """Parameters (p, m, q, n) of H = C_{p^m} x| C_{q^n} acting faithfully on soc."""
    ps = _primes_of(H)
    if len(ps) != 2:
        return []
    out = []
    for p, q in (ps, ps[::-1]):
        n_gen = _cyclic_sylow(H, p)
        u_gen = _has_cyclic_sylow(H, q)
        if n_gen is None or u_gen is None or not _faithful(H, n_gen, u_gen):
            continue
        out.append((p, H.order_factors.multiplicity(p), q, H.order_factors.multiplicity(q)))
    return out


def _case1(H: FiniteGroup, K: FiniteGroup) -> dict | None:
    pp = prime_power(H.exponent)
    if pp is None or pp[1] != 1 or _is_cyclic(H):
        return None
    p = pp[0]
    others = [r for r in _primes_of(K) if r != p]
    if len(others) != 1:
        return None
    (q,) = others
    w = _cyclic_sylow(K, q)
    if w is None:
        return None
    z = K.power(w, K.element_order(w) // q)
    # all Sylow p-subgroups of C_K(z) are conjugate, so their exponent is the
    # largest p-element order there
    cz = K.centralizer([z])
    p_part = cz[np.isin(cz, K.prime_elements(p))]
    if K.orders[p_part].max() > p:
        return None
    return {"p": p, "q": q, "w": w, "z": z}


def _cyclic_p_chain_ok(K: FiniteGroup, p: int) -> bool:
    """Cyclic p-subgroups pairwise meet trivially or are nested."""
    cid = K.cyclic_ids
    els = K.prime_elements(p)
    gens = [int(g) for g in np.unique(cid[els]) if g != 0]
    by_bottom: dict[int, list[int]] = {}
    for g in gens:
        bottom = int(cid[K.power(g, K.element_order(g) // p)])
        by_bottom.setdefault(bottom, []).append(g)
    for chain in by_bottom.values():
        chain.sort(key=K.element_order)
        for a, b in zip(chain, chain[1:]):
            if K.element_order(a) == K.element_order(b) or a not in set(K.powers(b).tolist()):
                return False
    return True


def _case2d_ok(K: FiniteGroup, q: int) -> bool:
    for o in K.order_set:
        if o == 1 or prime_power(o) is not None:
            continue
        fs = dict(factor(o).factors)
        if fs.pop(q, 0) != 1 or len(fs) != 1:
            return False
    others = [r for r in _primes_of(K) if r != q]
    if not all(_cyclic_p_chain_ok(K, p) for p in others):
        return False
    cid = K.cyclic_ids
    qs = [int(y) for y in np.unique(cid[K.prime_elements(q)]) if y != 0]
    for y in qs:
        cy = K.centralizer([y])
        for p in others:
            sub = cy[np.isin(cy, K.prime_elements(p))]
            ids = np.unique(cid[sub])
            ids = ids[ids != 0]
            o = K.orders[ids]
            if len(o) != len(np.unique(o)):
                return False
    return True


def _case2(H: FiniteGroup, K: FiniteGroup):
    if not _is_cyclic(H) or H.order == 1:
        return
    fs = H.order_factors.factors
    if len(fs) > 2:
        return
    if len(fs) == 1:
        labelings = [(None, 0, fs[0][0], fs[0][1])]
    else:
        (a, ea), (b, eb) = fs
        labelings = [(p, n, q, m) for p, n, q, m in ((a, ea, b, eb), (b, eb, a, ea)) if n == 1]
    for p, n, q, m in labelings:
        info = {"p": p, "q": q, "n": n, "m": m}
        if n == 1 and m > 1 and K.exponent == p:
            yield "2a", info
        if n == 1 and m == 1 and K.order_set <= {1, p, q}:
            yield "2b", info
        if n == 0 and m > 1 and _is_eppo(K):
            e = factor(K.exponent)
            if all(k == 1 for r, k in e.factors if r != q):
                yield "2c", info
        if n == 0 and m == 1 and _case2d_ok(K, q):
            yield "2d", info


def _case3(H: FiniteGroup, K: FiniteGroup):
    for p, m, q, n in _h_metacyclic(H):
        info = {"p": p, "m": m, "q": q, "n": n}
        if K.exponent == q:
            yield "3a", info
        if m == 1 and prime_power(K.order) and prime_power(K.order)[0] == q and _is_cyclic(K):
            yield "3b", info
        kp = _primes_of(K)
        rs = [r for r in kp if r not in (p, q)]
        if len(rs) == 1 and set(kp) <= {rs[0], q}:
            r = rs[0]
            d = K.order_factors.multiplicity(r)
            f = K.order_factors.multiplicity(q)
            if _cyclic_by_cyclic(K, q, r**d) and (m == 1 or (d == 1 and f <= 1)) and (n == 1 or d == 1):
                yield "3c", dict(info, r=r, d=d, f=f)
        if p in kp and set(kp) <= {p, q}:
            d = K.order_factors.multiplicity(p)
            total_q = K.order_factors.multiplicity(q)
            for e in (0, 1):
                if e > total_q:
                    continue
                f = total_q - e
                if e == 1 and not (m == n == d == 1):
                    continue
                if e == 0 and ((m > 1 and f > 1) or (n > 1 and d != 1)):
                    continue
                if _cyclic_by_cyclic(K, q, p**d * q**e):
                    yield "3d", dict(info, d=d, e=e, f=f)


def _power_chordal(G: FiniteGroup) -> bool:
    return bool(is_chordal(power_graph(G)))


def direct_product_cases(H: FiniteGroup, K: FiniteGroup) -> list[tuple[str, str, dict]]:
    """Every case of the direct-product theorem that H x K satisfies, as
    ``(label, roles, parameters)``; ``roles`` is "HK" or "KH"."""
    if H.order == 1 or K.order == 1:
        return [("trivial-factor", "HK", {})]
    out = []
    if prime_power(H.order * K.order) is not None:
        out.append(("4", "HK", {}))
    for roles, (A, B) in (("HK", (H, K)), ("KH", (K, H))):
        hit = _case1(A, B)
        if hit is not None:
            out.append(("1", roles, hit))
        for fn in (_case2, _case3):
            for label, info in fn(A, B):
                out.append((label, roles, info))
    return out


def decide_direct_product(H: FiniteGroup, K: FiniteGroup, check_hypothesis: bool = True) -> Verdict:
    """Power-chordality of H x K from the structure of the factors."""
    if check_hypothesis:
        for X in (H, K):
            if not _power_chordal(X):
                raise HypothesisError(f"{X.name} is not power-chordal")
    cases = direct_product_cases(H, K)
    if not cases:
        return Verdict(False, "predicate", {"case": None, "matched": []}, "none")
    label, roles, info = cases[0]
    cert = {"case": label, "roles": roles, **info, "matched": sorted({c[0] for c in cases})}
    return Verdict(True, "predicate", cert, label)


# ---------------------------------------------------------------- socles

@dataclass(frozen=True)
class SocleShape:
    """soc(G) as an elementary abelian part {prime: rank} times non-abelian simple factors."""
    abelian: tuple = ()  # of (prime, rank)
    simple: tuple = ()  # of SimpleGroupId

    def __post_init__(self):
        for p, m in self.abelian:
            if not is_prime(p) or m < 1:
                raise ClassifyError(f"bad elementary abelian factor {p}^{m}")
        for t in self.simple:
            if t.family == "CyclicPrime":
                raise ClassifyError("abelian simple factors belong in the abelian part")


def check_socle_shape(shape: SocleShape) -> bool:
    """Whether the socle is one of C_p^m x C_q, C_p^m, T, C_p x T."""
    ab = sorted(shape.abelian)
    if len({p for p, _ in ab}) != len(ab):
        raise ClassifyError("repeated prime in the abelian part")
    if len(shape.simple) > 1:
        return False
    if not shape.simple:
        if len(ab) == 1:
            return True
        if len(ab) == 2:
            return ab[0][1] == 1 or ab[1][1] == 1
        return not ab  # the trivial group has trivial socle
    (T,) = shape.simple
    if not ab:
        return True
    if len(ab) != 1 or ab[0][1] != 1:
        return False
    p = ab[0][0]
    return simple_order(T) % p == 0 or is_eppo_simple(T)
