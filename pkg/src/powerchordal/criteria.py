"""Decidable sufficient and necessary conditions for (non-)chordality of Pow(G).

Every criterion is conjugation invariant, so searches run over one
representative per conjugacy class of prime-order elements. A criterion that
fires carries a witness which :func:`recheck` verifies again from the raw
definitions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .finitefield import field_of_order
from .groups import FiniteGroup
from .groups.backends import MatBackend
from .numtheory import factor, is_prime, order_screen, prime_power
from .reduction import PreconditionError


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    fires: bool
    implies: str | None = None  # "chordal", "non-chordal" or None
    witness: dict = field(default_factory=dict)  # name -> element index
    note: str = ""

    def to_dict(self, G: FiniteGroup | None = None) -> dict:
        d = {
            "criterion": self.criterion,
            "fires": self.fires,
            "implies": self.implies if self.fires else None,
            "witness": dict(self.witness),
            "note": self.note,
        }
        if G is not None:
            d["witness_labels"] = {k: G.label(v) for k, v in self.witness.items() if isinstance(v, int)}
        return d

    def to_json(self, G: FiniteGroup | None = None) -> str:
        return json.dumps(self.to_dict(G))


# ---------------------------------------------------------------- shared helpers

def _cache(G: FiniteGroup) -> dict:
    return G.info.setdefault("_criteria_cache", {})


def prime_order_class_reps(G: FiniteGroup) -> list[int]:
    """Least element of each conjugacy class of prime-order elements, ascending."""
    c = _cache(G)
    if "reps" not in c:
        orders = G.orders
        mask = np.array([o > 1 and is_prime(int(o)) for o in orders])
        todo = np.nonzero(mask)[0]
        seen = np.zeros(G.order, dtype=bool)
        reps = []
        for x in todo.tolist():
            if seen[x]:
                continue
            reps.append(x)
            seen[G.conjugacy_class(x)] = True
        c["reps"] = reps
    return c["reps"]


def centralizer(G: FiniteGroup, x: int) -> np.ndarray:
    c = _cache(G).setdefault("cent", {})
    cid = int(G.cyclic_ids[x])  # generators of one cyclic subgroup share a centralizer
    if cid not in c:
        c[cid] = G.centralizer([cid])
    return c[cid]


def _r_elements(G: FiniteGroup, S: np.ndarray, r: int) -> np.ndarray:
    o = G.orders[S]
    mask = o == 1
    k = r
    while k <= o.max():
        mask |= o == k
        k *= r
    return S[mask]


def _prime_set(G: FiniteGroup, S) -> set[int]:
    out: set[int] = set()
    for o in np.unique(G.orders[S]).tolist():
        out.update(p for p, _ in factor(int(o)).factors)
    return out


@dataclass(frozen=True)
class CyclicByP:
    """C = Z x| P with Z the cyclic normal q-subgroup (q = 0 when C is a p-group)."""
    p: int
    q: int
    z: int  # generator of Z (0 when Z is trivial)
    size_z: int


def centralizer_shape(G: FiniteGroup, x: int) -> CyclicByP | None:
    """Recognise C_G(x) (|x| = p prime) as a p-group or as Z x| P with Z a cyclic
    q-group and P a p-group. Returns None when it is neither."""
    p = G.element_order(x)
    C = centralizer(G, x)
    primes = _prime_set(G, C)
    if primes <= {p}:
        return CyclicByP(p, 0, 0, 1)
    others = primes - {p}
    if len(others) != 1:
        return None
    (q,) = others
    Z = _r_elements(G, C, q)
    zmax = int(Z[np.argmax(G.orders[Z])])
    if G.element_order(zmax) != len(Z):
        return None  # the q-elements do not form one cyclic subgroup
    P = _r_elements(G, C, p)
    if len(Z) * (p ** factor(len(C)).multiplicity(p)) != len(C) or len(P) < 1:
        return None  # pragma: no cover - C has only primes p, q
    return CyclicByP(p, q, zmax, len(Z))


# ---------------------------------------------------------------- the 4-cycle criterion

def _screen(G: FiniteGroup):
    scr = order_screen(G.order_set)
    if not scr.clean:
        raise PreconditionError(
            f"{G.name} has an element of order {scr.order} (divisible by a {scr.pattern} pattern)")


def _c4_pair_witness(G: FiniteGroup, g: int, h: int):
    """Check conditions 1-3 for g, h; return (g, h', x) with h'^q = g^q and x of
    prime order p != q centralizing both, or None."""
    og, oh = G.element_order(g), G.element_order(h)
    pp = prime_power(og)
    if og != oh or pp is None or pp[1] < 2:
        return None
    q = pp[0]
    if G.cyclic_ids[g] == G.cyclic_ids[h]:
        return None
    gq = G.power(g, q)
    hh = None
    for k in range(1, oh):
        if k % q and G.power(G.power(h, k), q) == gq:
            hh = G.power(h, k)
            break
    if hh is None:
        return None
    C = np.intersect1d(centralizer(G, g), centralizer(G, hh))
    o = G.orders[C]
    for x, ox in zip(C.tolist(), o.tolist()):
        if ox != q and ox > 1 and is_prime(ox):
            return g, hh, x
    return None


def check_c4(G: FiniteGroup, pair: tuple[int, int] | None = None) -> CriterionReport:
    """Induced 4-cycles: g, h of the same order q^m (m > 1) with g^q = h^q,
    <g> != <h>, and a prime p != q dividing |C_G(<g, h>)|."""
    _screen(G)
    name = "c4"
    if pair is not None:
        w = _c4_pair_witness(G, int(pair[0]), int(pair[1]))
        if w is None:
            return CriterionReport(name, False, note="the supplied pair does not satisfy the conditions")
        return CriterionReport(name, True, "non-chordal", {"g": w[0], "h": w[1], "x": w[2]})
    cid = G.cyclic_ids
    orders = G.orders
    for x in prime_order_class_reps(G):
        p = G.element_order(x)
        C = centralizer(G, x)
        buckets: dict[int, int] = {}
        for g in C.tolist():
            if cid[g] != g:
                continue  # one generator per cyclic subgroup
            og = int(orders[g])
            pp = prime_power(og)
            if pp is None or pp[0] == p or pp[1] < 2:
                continue
            key = int(cid[G.power(g, pp[0])])
            if key in buckets:
                w = _c4_pair_witness(G, buckets[key], g)
                if w is not None:
                    return CriterionReport(name, True, "non-chordal", {"g": w[0], "h": w[1], "x": w[2]})
            else:
                buckets[key] = g
    return CriterionReport(name, False, note="no pair of distinct cyclic q^m-subgroups with a shared "
                                             "index-q subgroup and a coprime prime in the centralizer")


# ---------------------------------------------------------------- centralizer sufficiency

def _p2q2(G: FiniteGroup) -> int | None:
    for o in sorted(G.order_set):
        if sum(1 for _, e in factor(o).factors if e >= 2) >= 2:
            return o
    return None


def check_centralizer_sufficient(G: FiniteGroup) -> CriterionReport:
    name = "centralizer-sufficient"
    bad = _p2q2(G)
    if bad is not None:
        return CriterionReport(name, False, note=f"element of order {bad} is divisible by p^2 q^2")
    for x in prime_order_class_reps(G):
        if centralizer_shape(G, x) is None:
            return CriterionReport(name, False, witness={"x": x},
                                   note="centralizer is neither a p-group nor cyclic q-group by p-group")
    return CriterionReport(name, True, "chordal",
                           note="every prime-order centralizer is a p-group or Z x| P")


# ---------------------------------------------------------------- conjugate cyclic criterion

def _normal_cyclic_in(G: FiniteGroup, y: int, over: np.ndarray) -> bool:
    return G.is_normal_in(G.powers(y), over)


def _normalizer_mask(G: FiniteGroup, x: int) -> np.ndarray:
    """Elements g with g<x>g^-1 = <x>; conjugating the generator is enough."""
    members = np.zeros(G.order, dtype=bool)
    members[G.powers(x)] = True
    allg = np.arange(G.order)
    return members[G.conjugate(np.full(G.order, int(x)), allg)]


def _conjugate_cyclic_pair(G: FiniteGroup, x: int, y: int, nx: np.ndarray | None = None) -> bool:
    ox, oy = G.element_order(x), G.element_order(y)
    if np.gcd(ox, oy) != 1 or not G.commute(x, y):
        return False
    if _normal_cyclic_in(G, y, centralizer(G, x)):
        return False
    if nx is None:
        return not _normal_cyclic_in(G, x, centralizer(G, y))
    return not nx[centralizer(G, y)].all()


def check_conjugate_cyclic(G: FiniteGroup, pair: tuple[int, int] | None = None) -> CriterionReport:
    """Commuting x, y of coprime orders with <y> not normal in C(x) and <x> not
    normal in C(y)."""
    name = "conjugate-cyclic"
    if pair is not None:
        x, y = int(pair[0]), int(pair[1])
        if _conjugate_cyclic_pair(G, x, y):
            return CriterionReport(name, True, "non-chordal", {"x": x, "y": y})
        return CriterionReport(name, False, note="the supplied pair does not satisfy the conditions")
    cid = G.cyclic_ids
    for x in prime_order_class_reps(G):
        nx = _normalizer_mask(G, x)
        if nx.all():  # <x> normal in G, hence in every C(y)
            continue
        ox = G.element_order(x)
        C = centralizer(G, x)
        for y in C.tolist():
            oy = int(G.orders[y])
            if cid[y] != y or oy == ox or oy == 1 or not is_prime(oy):
                continue
            if _conjugate_cyclic_pair(G, x, y, nx):
                return CriterionReport(name, True, "non-chordal", {"x": x, "y": y})
    return CriterionReport(name, False, note="no commuting prime-order pair with both normality failures")


# ---------------------------------------------------------------- Gruenberg-Kegel condition

@dataclass(frozen=True)
class GKGraph:
    primes: tuple[int, ...]
    edges: frozenset  # of (p, q) with p < q

    def components(self) -> list[tuple[int, ...]]:
        parent = {p: p for p in self.primes}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for p, q in self.edges:
            parent[find(p)] = find(q)
        comps: dict[int, list[int]] = {}
        for p in self.primes:
            comps.setdefault(find(p), []).append(p)
        return sorted(tuple(sorted(c)) for c in comps.values())


def gk_graph(G: FiniteGroup) -> GKGraph:
    primes = tuple(p for p, _ in G.order_factors.factors)
    edges = set()
    for o in G.order_set:
        ps = [p for p, _ in factor(o).factors]
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                edges.add((min(ps[i], ps[j]), max(ps[i], ps[j])))
    return GKGraph(primes, frozenset(edges))


def gk_condition_at(G: FiniteGroup, x: int) -> bool:
    """C_G(x) = Z x| P with Z a nontrivial cyclic q-group, P a p-group, and
    C_P(Z) cyclic or of exponent p."""
    shape = centralizer_shape(G, x)
    if shape is None or shape.q == 0:
        return False
    p = shape.p
    CZ = np.intersect1d(centralizer(G, x), centralizer(G, shape.z))
    Pz = _r_elements(G, CZ, p)
    top = int(G.orders[Pz].max())
    return top == len(Pz) or top <= p


def check_gk_necessary(G: FiniteGroup) -> CriterionReport:
    """Fires when some non-singleton component of the Gruenberg-Kegel graph has
    no prime p with an order-p element x satisfying :func:`gk_condition_at`."""
    name = "gk-necessary"
    gk = gk_graph(G)
    reps = prime_order_class_reps(G)
    good = {int(G.element_order(x)) for x in reps if gk_condition_at(G, x)}
    for comp in gk.components():
        if len(comp) > 1 and not good.intersection(comp):
            return CriterionReport(name, True, "non-chordal",
                                   note=f"component {list(comp)} has no prime meeting the condition")
    return CriterionReport(name, False, note="every non-singleton component meets the condition")


def all_reports(G: FiniteGroup) -> list[CriterionReport]:
    out = []
    try:
        out.append(check_c4(G))
    except PreconditionError as exc:
        out.append(CriterionReport("c4", False, note=f"precondition failed: {exc}"))
    out.append(check_centralizer_sufficient(G))
    out.append(check_conjugate_cyclic(G))
    out.append(check_gk_necessary(G))
    return out


def recheck(G: FiniteGroup, report: CriterionReport) -> bool:
    """Re-verify a firing report's witness from the definitions."""
    w = report.witness
    if not report.fires:
        return True
    if report.criterion == "c4":
        g, h, x = w["g"], w["h"], w["x"]
        og = G.element_order(g)
        pp = prime_power(og)
        if pp is None or pp[1] < 2 or G.element_order(h) != og:
            return False
        q = pp[0]
        ox = G.element_order(x)
        return (G.power(g, q) == G.power(h, q)
                and set(G.powers(g).tolist()) != set(G.powers(h).tolist())
                and is_prime(ox) and ox != q and G.commute(x, g) and G.commute(x, h))
    if report.criterion == "conjugate-cyclic":
        x, y = w["x"], w["y"]
        allg = np.arange(G.order)
        cx = allg[[G.commute(x, g) for g in allg]] if G.order <= 5000 else G.centralizer([x])
        cy = allg[[G.commute(y, g) for g in allg]] if G.order <= 5000 else G.centralizer([y])
        return (G.commute(x, y) and np.gcd(G.element_order(x), G.element_order(y)) == 1
                and not G.is_normal_in(G.powers(y), cx) and not G.is_normal_in(G.powers(x), cy))
    return True


# ---------------------------------------------------------------- SL3(q) witness

@dataclass(frozen=True)
class SL3Witness:
    q: int
    X: np.ndarray
    Y: np.ndarray
    M_X: np.ndarray
    M_Y: np.ndarray
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _mat_order(be: MatBackend, m: np.ndarray, bound: int) -> int:
    ident = be.identity()
    cur = m
    for k in range(1, bound + 1):
        if np.array_equal(cur, ident):
            return k
        cur = be.matmul(cur[None], m[None])[0]
    raise ValueError("matrix order exceeds bound")


def _mat_inv(be: MatBackend, m: np.ndarray, order: int) -> np.ndarray:
    cur = be.identity()
    for _ in range(order - 1):
        cur = be.matmul(cur[None], m[None])[0]
    return cur


def _cyclic_span(be: MatBackend, m: np.ndarray, order: int) -> set[bytes]:
    out, cur = set(), be.identity()
    for _ in range(order):
        out.add(cur.tobytes())
        cur = be.matmul(cur[None], m[None])[0]
    return out


def sl3_witness(q: int) -> SL3Witness:
    """The matrices X, Y, M_X, M_Y over GF(q) and the six checks: |X| = p,
    |Y| = q - 1, M_Y centralizes Y, M_X centralizes X, and neither conjugation
    normalizes the corresponding cyclic subgroup."""
    if q in (2, 4):
        raise ValueError("the SL3(q) witness needs q not in {2, 4}")
    F = field_of_order(q)
    be = MatBackend(F, 3)
    one, zero = 1, 0
    neg = F.neg
    two = F.add(one, one)
    y = F.primitive_element()
    ym2 = F.inv(F.mul(y, y))
    X = be.from_entries([[one, one, one], [zero, one, zero], [zero, zero, one]])
    Y = be.from_entries([[y, zero, zero], [zero, y, F.sub(y, ym2)], [zero, zero, ym2]])
    M_Y = be.from_entries([[one, zero, zero], [one, one, zero], [zero, zero, one]])
    M_X = be.from_entries([[one, one, neg(one)], [zero, zero, neg(one)], [zero, one, two]])
    bound = q * q * q
    oX, oY = _mat_order(be, X, bound), _mat_order(be, Y, bound)
    oMX, oMY = _mat_order(be, M_X, bound), _mat_order(be, M_Y, bound)

    def mm(a, b):
        return be.matmul(a[None], b[None])[0]

    def commutes(a, b):
        return np.array_equal(mm(a, b), mm(b, a))

    conjX = mm(mm(M_Y, X), _mat_inv(be, M_Y, oMY))
    conjY = mm(mm(M_X, Y), _mat_inv(be, M_X, oMX))
    checks = {
        "order_X_is_p": oX == F.p,
        "order_Y_is_q_minus_1": oY == q - 1,
        "M_Y_in_C(Y)": be.det(M_Y) == 1 and commutes(M_Y, Y),
        "M_X_in_C(X)": be.det(M_X) == 1 and commutes(M_X, X),
        "M_Y_not_normalizing_<X>": conjX.tobytes() not in _cyclic_span(be, X, oX),
        "M_X_not_normalizing_<Y>": conjY.tobytes() not in _cyclic_span(be, Y, oY),
    }
    return SL3Witness(q, X, Y, M_X, M_Y, checks)
