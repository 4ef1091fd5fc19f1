"""Fully enumerated finite groups and element-level queries.

Groups are enumerated by breadth-first closure from a fixed generator sequence,
so element indices are deterministic: index 0 is the identity and the rest follow
in discovery order. All queries work on element indices.
"""
from __future__ import annotations

from functools import cached_property
from math import gcd

import numpy as np

from ..numtheory import factor, prime_power
from .backends import Backend

DEFAULT_CAP = 2_000_000


class GroupError(ValueError):
    pass


class CapExceeded(GroupError):
    pass


def _void(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows)
    width = rows.dtype.itemsize * int(np.prod(rows.shape[1:], dtype=np.int64))
    return rows.reshape(len(rows), -1).view(np.dtype((np.void, width))).ravel()


def enumerate_closure(backend: Backend, generators, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All elements reachable from ``generators``, identity first, in BFS order."""
    ident = backend.identity()
    gens = np.stack([backend.canon(np.asarray(g, dtype=backend.dtype)[None])[0] for g in generators]) \
        if len(generators) else np.empty((0,) + backend.shape, backend.dtype)
    chunks = [ident[None]]
    seen = {_void(ident[None])[0].tobytes()}
    frontier = ident[None]
    total = 1
    ng = len(gens)
    while len(frontier) and ng:
        left = np.repeat(frontier, ng, axis=0)
        right = np.tile(gens, (len(frontier),) + (1,) * len(backend.shape))
        prods = backend.mul(left, right)
        keys = _void(prods)
        fresh = []
        for i, kb in enumerate(keys.tolist()):
            if kb not in seen:
                seen.add(kb)
                fresh.append(i)
        if not fresh:
            break
        frontier = prods[np.array(fresh)]
        total += len(frontier)
        if total > cap:
            raise CapExceeded(f"group order exceeds cap {cap}")
        chunks.append(frontier)
    return np.concatenate(chunks)


class FiniteGroup:
    def __init__(self, name: str, backend: Backend, generators, cap: int = DEFAULT_CAP,
                 spec=None, expected_order: int | None = None):
        self.name = name
        self.spec = spec
        self.backend = backend
        self.elements = enumerate_closure(backend, list(generators), cap)
        self.order = len(self.elements)
        if expected_order is not None and expected_order != self.order:
            raise GroupError(f"{name}: enumerated {self.order} elements, expected {expected_order}")
        keys = _void(self.elements)
        self._key_order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._key_order]
        self.generator_indices = self.index_of(np.stack([backend.canon(np.asarray(g, backend.dtype)[None])[0]
                                                         for g in generators])) \
            if len(generators) else np.empty(0, dtype=np.int64)
        self.info: dict = {}

    def __repr__(self):
        return f"<FiniteGroup {self.name} order={self.order}>"

    def __len__(self):
        return self.order

    # ------------------------------------------------------------ lookups
    def index_of(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=self.backend.dtype)
        keys = _void(rows)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.order - 1)
        if not np.all(self._sorted_keys[pos] == keys):
            raise GroupError(f"element not in {self.name}")
        return self._key_order[pos]

    def contains(self, row) -> bool:
        try:
            self.index_of(np.asarray(row)[None])
        except GroupError:
            return False
        return True

    def element(self, text_or_row) -> int:
        """Index of an element given as a row, or as text the backend can parse."""
        if isinstance(text_or_row, str):
            row = self.backend.parse(text_or_row)
        else:
            row = np.asarray(text_or_row, dtype=self.backend.dtype)
        return int(self.index_of(self.backend.canon(row[None]))[0])

    def label(self, i: int) -> str:
        return self.backend.label(self.elements[int(i)])

    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.order)]

    def mul_idx(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.intp)
        b = np.asarray(b, dtype=np.intp)
        a, b = np.broadcast_arrays(a, b)
        shape = a.shape
        a, b = a.ravel(), b.ravel()
        out = np.empty(len(a), dtype=np.int64)
        step = 1 << 18
        for s in range(0, len(a), step):
            prod = self.backend.mul(self.elements[a[s:s + step]], self.elements[b[s:s + step]])
            out[s:s + step] = self.index_of(prod)
        return out.reshape(shape)

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_idx([a], [b])[0])

    # ------------------------------------------------------------ powers and orders
    @cached_property
    def _power_data(self):
        n = self.order
        orders = np.ones(n, dtype=np.int64)
        steps = []  # (k, element indices still active, their k-th powers)
        active = np.arange(1, n)
        cur = active.copy()
        k = 1
        steps.append((1, np.arange(n), np.arange(n)))
        while len(active):
            k += 1
            cur = self.mul_idx(cur, active)
            steps.append((k, active, cur))
            done = cur == 0
            orders[active[done]] = k
            active, cur = active[~done], cur[~done]
        ptr = np.zeros(n + 1, dtype=np.int64)
        ptr[1:] = np.cumsum(orders)
        flat = np.empty(ptr[-1], dtype=np.int64)
        for k, idx, val in steps:
            sel = orders[idx] >= k
            flat[ptr[idx[sel]] + k - 1] = val[sel]
        return orders, ptr, flat

    @property
    def orders(self) -> np.ndarray:
        return self._power_data[0]

    def element_order(self, x: int) -> int:
        return int(self.orders[int(x)])

    def powers(self, x: int) -> np.ndarray:
        """``[x, x^2, ..., x^|x| = 1]``."""
        _, ptr, flat = self._power_data
        return flat[ptr[int(x)]:ptr[int(x) + 1]]

    def power(self, x: int, k: int) -> int:
        o = self.element_order(x)
        k %= o
        return 0 if k == 0 else int(self.powers(x)[k - 1])

    @cached_property
    def inverses(self) -> np.ndarray:
        _, ptr, flat = self._power_data
        inv = np.zeros(self.order, dtype=np.int64)
        orders = self.orders
        big = orders > 1
        idx = np.nonzero(big)[0]
        inv[idx] = flat[ptr[idx] + orders[idx] - 2]
        return inv

    def cyclic_subgroup(self, x: int) -> np.ndarray:
        return np.sort(self.powers(x))

    @cached_property
    def cyclic_ids(self) -> np.ndarray:
        """For each element, the least element index generating the same cyclic subgroup."""
        n = self.order
        cid = np.full(n, -1, dtype=np.int64)
        orders = self.orders
        for x in range(n):
            if cid[x] >= 0:
                continue
            pw = self.powers(x)
            o = orders[x]
            ks = np.arange(1, o + 1)
            gens = pw[np.gcd(ks, o) == 1]
            cid[gens] = x  # x is the least unassigned, hence least generator
        return cid

    @cached_property
    def exponent(self) -> int:
        e = 1
        for o in np.unique(self.orders):
            e = e * int(o) // gcd(e, int(o))
        return e

    @cached_property
    def order_set(self) -> set[int]:
        return {int(o) for o in np.unique(self.orders)}

    # ------------------------------------------------------------ centralizers, conjugation
    def centralizer_mask(self, x: int) -> np.ndarray:
        rows = self.elements
        xr = np.broadcast_to(rows[int(x)], rows.shape)
        left = self.backend.mul(rows, xr)
        right = self.backend.mul(xr, rows)
        return _void(left) == _void(right)

    def centralizer(self, S) -> np.ndarray:
        S = np.atleast_1d(np.asarray(S, dtype=np.int64))
        mask = np.ones(self.order, dtype=bool)
        for s in np.unique(S):
            if s != 0:
                mask &= self.centralizer_mask(int(s))
        return np.nonzero(mask)[0]

    def commute(self, a: int, b: int) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    def conjugate(self, x, g) -> np.ndarray:
        """``g x g^-1`` for index arrays (broadcast)."""
        return self.mul_idx(self.mul_idx(g, x), self.inverses[np.asarray(g)])

    def conjugacy_class(self, x: int) -> np.ndarray:
        allg = np.arange(self.order)
        return np.unique(self.conjugate(np.full(self.order, int(x)), allg))

    def is_normal_in(self, sub, over) -> bool:
        sub = np.unique(np.asarray(sub, dtype=np.int64))
        over = np.unique(np.asarray(over, dtype=np.int64))
        if len(sub) <= 1 or len(sub) == self.order:
            return True
        members = np.zeros(self.order, dtype=bool)
        members[sub] = True
        chunk = max(1, (1 << 18) // len(sub))
        for s in range(0, len(over), chunk):
            gs = over[s:s + chunk]
            g = np.repeat(gs, len(sub))
            x = np.tile(sub, len(gs))
            if not members[self.conjugate(x, g)].all():
                return False
        return True

    def subgroup_generated(self, gens) -> np.ndarray:
        gens = np.unique(np.asarray(gens, dtype=np.int64))
        members = np.zeros(self.order, dtype=bool)
        members[0] = True
        frontier = np.array([0], dtype=np.int64)
        while len(frontier):
            prods = self.mul_idx(np.repeat(frontier, len(gens)), np.tile(gens, len(frontier)))
            prods = np.unique(prods)
            fresh = prods[~members[prods]]
            members[fresh] = True
            frontier = fresh
        return np.nonzero(members)[0]

    def is_abelian(self) -> bool:
        g = self.generator_indices
        for i in range(len(g)):
            for j in range(i + 1, len(g)):
                if not self.commute(int(g[i]), int(g[j])):
                    return False
        return True

    # ------------------------------------------------------------ order arithmetic
    @cached_property
    def order_factors(self):
        return factor(self.order)

    def is_p_group(self) -> bool:
        return self.order == 1 or prime_power(self.order) is not None

    def prime_elements(self, p: int) -> np.ndarray:
        """Indices of the p-elements (order a power of p, identity included)."""
        o = self.orders
        mask = o == 1
        k = p
        while k <= o.max():
            mask |= o == k
            k *= p
        return np.nonzero(mask)[0]
