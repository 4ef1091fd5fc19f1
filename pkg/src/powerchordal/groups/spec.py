"""The group-spec mini-language.

::

    spec := cyclic:N | ab:N1xN2x... | sym:N | alt:N | dih:<abelian spec> | q:4N
          | sl:K,Q | psl:K,Q | sd:P^M,Q^N,K | prod(<spec>,<spec>)
          | sporadic:NAME[@FILE]
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import families
from .core import DEFAULT_CAP, FiniteGroup, GroupError

_SIMPLE = {"cyclic", "ab", "sym", "alt", "q", "sl", "psl", "sd", "sporadic"}


class SpecError(GroupError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    params: tuple = ()
    children: tuple["GroupSpec", ...] = field(default=())

    def __str__(self) -> str:
        k, p = self.kind, self.params
        if k == "cyclic":
            return f"cyclic:{p[0]}"
        if k == "ab":
            return "ab:" + "x".join(map(str, p))
        if k in ("sym", "alt", "q"):
            return f"{k}:{p[0]}"
        if k in ("sl", "psl"):
            return f"{k}:{p[0]},{p[1]}"
        if k == "sd":
            P, M, Q, N, K = p
            return f"sd:{P}^{M},{Q}^{N},{K}"
        if k == "dih":
            return f"dih:{self.children[0]}"
        if k == "prod":
            return f"prod({self.children[0]},{self.children[1]})"
        if k == "sporadic":
            return f"sporadic:{p[0]}" + (f"@{p[1]}" if len(p) > 1 and p[1] else "")
        raise SpecError(f"unknown spec kind {k}")  # pragma: no cover


def _int(tok: str, what: str) -> int:
    if not re.fullmatch(r"\d+", tok.strip()):
        raise SpecError(f"expected an integer for {what}, got {tok!r}")
    return int(tok)


def _split_top(text: str) -> list[str]:
    """Split on commas that are not nested inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise SpecError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return parts


def parse_spec(text: str) -> GroupSpec:
    s = text.strip()
    if s.startswith("prod(") and s.endswith(")"):
        args = _split_top(s[5:-1])
        if len(args) != 2:
            raise SpecError(f"prod() takes two specs: {text!r}")
        return GroupSpec("prod", (), (parse_spec(args[0]), parse_spec(args[1])))
    if ":" not in s:
        raise SpecError(f"cannot parse group spec {text!r}")
    kind, rest = s.split(":", 1)
    kind = kind.strip().lower()
    if kind == "dih":
        inner = parse_spec(rest)
        if inner.kind not in ("cyclic", "ab"):
            raise SpecError("dih: needs an abelian spec (cyclic:N or ab:...)")
        return GroupSpec("dih", (), (inner,))
    if kind not in _SIMPLE:
        raise SpecError(f"unknown group family {kind!r}")
    if kind in ("cyclic", "sym", "alt", "q"):
        n = _int(rest, kind)
        if kind == "q" and (n % 4 or n < 8):
            raise SpecError("q:4N needs a multiple of 4 that is at least 8")
        if n < 1:
            raise SpecError(f"{kind}: needs a positive parameter")
        return GroupSpec(kind, (n,))
    if kind == "ab":
        mods = tuple(_int(t, "ab factor") for t in rest.split("x"))
        if any(m < 1 for m in mods):
            raise SpecError("ab: factors must be positive")
        return GroupSpec("ab", mods)
    if kind in ("sl", "psl"):
        parts = rest.split(",")
        if len(parts) != 2:
            raise SpecError(f"{kind}:K,Q expected, got {text!r}")
        return GroupSpec(kind, (_int(parts[0], "K"), _int(parts[1], "Q")))
    if kind == "sd":
        m = re.fullmatch(r"\s*(\d+)\^(\d+)\s*,\s*(\d+)\^(\d+)\s*,\s*(\d+)\s*", rest)
        if not m:
            raise SpecError(f"sd:P^M,Q^N,K expected, got {text!r}")
        return GroupSpec("sd", tuple(int(g) for g in m.groups()))
    # sporadic
    name, _, path = rest.partition("@")
    if not name.strip():
        raise SpecError("sporadic: needs a group name")
    return GroupSpec("sporadic", (name.strip().upper(), path.strip() or None))


def build(spec, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    k, p = spec.kind, spec.params
    if k == "cyclic":
        G = families.cyclic(p[0], cap)
    elif k == "ab":
        G = families.abelian(p, cap)
    elif k == "sym":
        G = families.symmetric(p[0], cap)
    elif k == "alt":
        G = families.alternating(p[0], cap)
    elif k == "q":
        G = families.quaternion(p[0], cap)
    elif k == "sl":
        G = families.special_linear(p[0], p[1], cap)
    elif k == "psl":
        G = families.projective_special_linear(p[0], p[1], cap)
    elif k == "sd":
        G = families.semidirect_cyclic(*p, cap=cap)
    elif k == "dih":
        G = families.generalized_dihedral(build(spec.children[0], cap), cap)
    elif k == "prod":
        G = families.direct_product(build(spec.children[0], cap), build(spec.children[1], cap), cap)
    elif k == "sporadic":
        G = families.load_sporadic(p[0], p[1], cap)
    else:  # pragma: no cover
        raise SpecError(f"unknown spec kind {k}")
    G.spec = spec
    return G
