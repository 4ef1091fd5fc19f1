"""Element representations.

A backend knows how to multiply batches of elements stored as fixed-shape numpy
rows, and how to print one. Rows must be canonical: two rows are the same group
element exactly when their bytes agree, which is what makes hashing by raw bytes
sound.
"""
from __future__ import annotations

from math import gcd

import numpy as np

from ..finitefield import GF


class Backend:
    dtype: np.dtype
    shape: tuple[int, ...]
    kind = "abstract"

    def identity(self) -> np.ndarray:
        raise NotImplementedError

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Row-wise products of two batches of equal length."""
        raise NotImplementedError

    def label(self, row: np.ndarray) -> str:
        raise NotImplementedError

    def canon(self, rows: np.ndarray) -> np.ndarray:
        return rows


# ---------------------------------------------------------------- permutations

def parse_cycles(text: str, degree: int) -> np.ndarray:
    """Parse disjoint-cycle notation on points 1..degree into an image vector."""
    img = np.arange(degree, dtype=np.uint8 if degree <= 255 else np.uint16)
    text = text.strip()
    if text in ("", "()"):
        return img
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"not a permutation in cycle notation: {text!r}")
    seen: set[int] = set()
    for chunk in text[1:-1].split(")("):
        pts = [int(t) for t in chunk.replace(" ", "").split(",") if t]
        for pt in pts:
            if not 1 <= pt <= degree or pt in seen:
                raise ValueError(f"bad point {pt} in {text!r} (degree {degree})")
            seen.add(pt)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
    return img


def cycles_of(img) -> list[list[int]]:
    n = len(img)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = int(img[j])
        if len(cyc) > 1:
            out.append(cyc)
    return out


class PermBackend(Backend):
    """Permutations of {1..n} as 0-based image vectors; ``x*y`` applies x first."""

    kind = "perm"

    def __init__(self, degree: int):
        self.degree = degree
        self.dtype = np.dtype(np.uint8 if degree <= 255 else np.uint16)
        self.shape = (degree,)

    def identity(self):
        return np.arange(self.degree, dtype=self.dtype)

    def mul(self, a, b):
        return np.take_along_axis(b, a.astype(np.intp), axis=1)

    def label(self, row):
        cyc = cycles_of(row)
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cyc)

    def parse(self, text: str) -> np.ndarray:
        return parse_cycles(text, self.degree).astype(self.dtype)


# ---------------------------------------------------------------- matrices

class MatBackend(Backend):
    """k x k matrices over GF(q), entries stored as field codes.

    With ``projective=True`` rows are cosets modulo the scalars of determinant 1,
    stored as their least member in row-major lexicographic order.
    """

    kind = "mat"

    def __init__(self, F: GF, k: int, projective: bool = False):
        self.F, self.k, self.projective = F, k, projective
        self.dtype = np.dtype(np.int16)
        self.shape = (k, k)
        self._add, self._mul, self._neg, self._inv = F.tables
        # scalars lambda with lambda^k = 1
        self.scalars = [a for a in range(1, F.q) if F.pow(a, k) == 1]
        self._weights = F.q ** np.arange(k * k - 1, -1, -1, dtype=np.float64)
        self._exact_keys = F.q ** (k * k) < 2**62

    def identity(self):
        return np.eye(self.k, dtype=self.dtype)

    def matmul(self, a, b):
        a = a.astype(np.intp)
        b = b.astype(np.intp)
        k = self.k
        out = np.empty(np.broadcast_shapes(a.shape, b.shape), dtype=self.dtype)
        for i in range(k):
            for j in range(k):
                acc = self._mul[a[..., i, 0], b[..., 0, j]]
                for l in range(1, k):
                    acc = self._add[acc, self._mul[a[..., i, l], b[..., l, j]]]
                out[..., i, j] = acc
        return out

    def _lex_keys(self, rows):
        flat = rows.reshape(len(rows), -1).astype(np.int64)
        q = self.F.q
        key = np.zeros(len(rows), dtype=np.int64)
        for c in range(flat.shape[1]):
            key = key * q + flat[:, c]
        return key

    def canon(self, rows):
        if not self.projective or len(self.scalars) == 1:
            return rows
        cands = np.stack([self._mul[lam, rows.astype(np.intp)] for lam in self.scalars])
        cands = cands.astype(self.dtype)
        if self._exact_keys:
            keys = np.stack([self._lex_keys(c) for c in cands])
            best = np.argmin(keys, axis=0)
        else:  # pragma: no cover - fields too large for int64 keys
            flat = cands.reshape(len(self.scalars), len(rows), -1)
            best = np.zeros(len(rows), dtype=np.intp)
            for r in range(len(rows)):
                opts = [tuple(flat[s, r]) for s in range(len(self.scalars))]
                best[r] = min(range(len(opts)), key=opts.__getitem__)
        return cands[best, np.arange(len(rows))]

    def mul(self, a, b):
        return self.canon(self.matmul(a, b))

    def det(self, m) -> int:
        F = self.F
        m = [[int(x) for x in row] for row in m]
        n = len(m)
        det = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = F.neg(det)
            det = F.mul(det, m[c][c])
            ic = F.inv(m[c][c])
            for r in range(c + 1, n):
                if m[r][c]:
                    f = F.mul(m[r][c], ic)
                    m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[c])]
        return det

    def label(self, row):
        body = ",".join("[" + ",".join(self.F.label(int(x)) for x in r) + "]" for r in row)
        return "[" + body + "]"

    def from_entries(self, entries) -> np.ndarray:
        """Build a row from nested entries given as field codes or FieldElems."""
        arr = np.array(
            [[getattr(x, "value", x) for x in r] for r in entries], dtype=self.dtype
        )
        if arr.shape != self.shape:
            raise ValueError(f"expected a {self.k}x{self.k} matrix")
        return self.canon(arr[None])[0]


# ---------------------------------------------------------------- structured words

class AbelianBackend(Backend):
    """C_{n1} x ... x C_{nk} as exponent vectors."""

    kind = "abelian"

    def __init__(self, moduli):
        self.moduli = np.array(moduli, dtype=np.int64)
        self.dtype = np.dtype(np.int32)
        self.shape = (len(moduli),)

    def identity(self):
        return np.zeros(self.shape, dtype=self.dtype)

    def mul(self, a, b):
        return ((a.astype(np.int64) + b) % self.moduli).astype(self.dtype)

    def generators(self):
        gens = []
        for i in range(len(self.moduli)):
            g = self.identity()
            g[i] = 1 % self.moduli[i]
            gens.append(g)
        return gens

    def label(self, row):
        if len(row) == 1:
            return f"g^{int(row[0])}" if row[0] else "1"
        return "(" + ",".join(str(int(x)) for x in row) + ")"


class SemidirectBackend(Backend):
    """C_{p^m} x| C_{q^n}: rows (a, u) stand for x^a y^u, and y x y^-1 = x^k."""

    kind = "semidirect"

    def __init__(self, pm: int, qn: int, k: int):
        self.pm, self.qn, self.k = pm, qn, k
        self.kpow = np.array([pow(k, u, pm) for u in range(qn)], dtype=np.int64)
        self.dtype = np.dtype(np.int32)
        self.shape = (2,)

    def identity(self):
        return np.zeros(2, dtype=self.dtype)

    def mul(self, a, b):
        a = a.astype(np.int64)
        b = b.astype(np.int64)
        out = np.empty_like(a)
        out[:, 0] = (a[:, 0] + self.kpow[a[:, 1]] * b[:, 0]) % self.pm
        out[:, 1] = (a[:, 1] + b[:, 1]) % self.qn
        return out.astype(self.dtype)

    def generators(self):
        return [np.array([1 % self.pm, 0], self.dtype), np.array([0, 1 % self.qn], self.dtype)]

    def label(self, row):
        a, u = int(row[0]), int(row[1])
        parts = [f"x^{a}" if a else "", f"y^{u}" if u else ""]
        return "".join(parts) or "1"


class QuaternionBackend(Backend):
    """Q_{4n} = <x, y | x^{2n} = y^4 = 1, x^n = y^2, x^y = x^-1>; rows (i, j) = x^i y^j."""

    kind = "quaternion"

    def __init__(self, n: int):
        self.n = n
        self.dtype = np.dtype(np.int32)
        self.shape = (2,)

    def identity(self):
        return np.zeros(2, dtype=self.dtype)

    def mul(self, a, b):
        a = a.astype(np.int64)
        b = b.astype(np.int64)
        n2 = 2 * self.n
        i1, j1, i2, j2 = a[:, 0], a[:, 1], b[:, 0], b[:, 1]
        # y x^i = x^-i y, and y^2 = x^n
        i = np.where(j1 == 0, i1 + i2, i1 - i2)
        carry = (j1 + j2) >= 2
        i = np.where(carry, i + self.n, i) % n2
        j = (j1 + j2) % 2
        return np.stack([i, j], axis=1).astype(self.dtype)

    def generators(self):
        return [np.array([1, 0], self.dtype), np.array([0, 1], self.dtype)]

    def label(self, row):
        i, j = int(row[0]), int(row[1])
        parts = [f"x^{i}" if i else "", "y" if j else ""]
        return "".join(parts) or "1"


class DihedralBackend(Backend):
    """A x| C_2 with the involution inverting the abelian group A; rows (a, s)."""

    kind = "dihedral"

    def __init__(self, A):
        self.A = A
        self.dtype = np.dtype(np.int32)
        self.shape = (2,)

    def identity(self):
        return np.zeros(2, dtype=self.dtype)

    def mul(self, a, b):
        a = a.astype(np.intp)
        b = b.astype(np.intp)
        second = np.where(a[:, 1] == 1, self.A.inverses[b[:, 0]], b[:, 0])
        first = self.A.mul_idx(a[:, 0], second)
        return np.stack([first, (a[:, 1] + b[:, 1]) % 2], axis=1).astype(self.dtype)

    def generators(self):
        gens = [np.array([int(g), 0], self.dtype) for g in self.A.generator_indices]
        return gens + [np.array([0, 1], self.dtype)]

    def label(self, row):
        base = self.A.label(int(row[0]))
        return base + ("*t" if row[1] else "")


class ProductBackend(Backend):
    """H x K with elements stored as index pairs into the factors."""

    kind = "product"

    def __init__(self, H, K):
        self.H, self.K = H, K
        self.dtype = np.dtype(np.int32)
        self.shape = (2,)

    def identity(self):
        return np.zeros(2, dtype=self.dtype)

    def mul(self, a, b):
        h = self.H.mul_idx(a[:, 0], b[:, 0])
        k = self.K.mul_idx(a[:, 1], b[:, 1])
        return np.stack([h, k], axis=1).astype(self.dtype)

    def generators(self):
        gens = [np.array([int(g), 0], self.dtype) for g in self.H.generator_indices]
        return gens + [np.array([0, int(g)], self.dtype) for g in self.K.generator_indices]

    def label(self, row):
        return f"({self.H.label(int(row[0]))}, {self.K.label(int(row[1]))})"


def sl_order(k: int, q: int) -> int:
    out = q ** (k * (k - 1) // 2)
    for i in range(2, k + 1):
        out *= q**i - 1
    return out


def psl_order(k: int, q: int) -> int:
    return sl_order(k, q) // gcd(k, q - 1)
