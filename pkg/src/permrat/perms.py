"""Permutations on 0-based points, stored as image tuples.

All heavy loops work on raw tuples; the Permutation wrapper exists for the
public API and I/O.  Composition is (p * q)(x) = p(q(x)).
"""

from __future__ import annotations

import re

from .errors import InputError


def identity_tuple(degree: int) -> tuple[int, ...]:
    return tuple(range(degree))


def mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[x] for x in q)


def inv(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def conj(g: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...]:
    """h g h^-1."""
    return mul(h, mul(g, inv(h)))


def power(p: tuple[int, ...], n: int) -> tuple[int, ...]:
    if n < 0:
        return power(inv(p), -n)
    out = identity_tuple(len(p))
    base = p
    while n:
        if n & 1:
            out = mul(base, out)
        base = mul(base, base)
        n >>= 1
    return out


def order(p: tuple[int, ...]) -> int:
    """Order as lcm of cycle lengths."""
    from math import lcm

    n = len(p)
    seen = [False] * n
    o = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        o = lcm(o, length)
    return o


def cycles(p: tuple[int, ...]) -> list[list[int]]:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            seen.add(i)
            continue
        c = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            c.append(j)
            seen.add(j)
            j = p[j]
        out.append(c)
    return out


def cycle_string(p: tuple[int, ...]) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycle_string(s: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse '(0 1 2)(3 4)' into an image tuple.  Points are 0-based."""
    body = s.strip()
    if body in ("", "()"):
        return identity_tuple(degree or 0)
    consumed = _CYCLE_RE.sub("", body).strip()
    if consumed:
        raise InputError(f"cannot parse permutation {s!r}")
    cyc = []
    maxpt = -1
    for m in _CYCLE_RE.finditer(body):
        pts = [int(t) for t in re.split(r"[,\s]+", m.group(1).strip()) if t]
        if any(x < 0 for x in pts):
            raise InputError("cycle points must be >= 0")
        if len(set(pts)) != len(pts):
            raise InputError(f"repeated point in cycle {m.group(0)!r}")
        cyc.append(pts)
        maxpt = max(maxpt, max(pts, default=-1))
    n = max(maxpt + 1, degree or 0)
    images = list(range(n))
    for pts in cyc:
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if images[a] != a:
                raise InputError(f"point {a} moved by two cycles in {s!r}")
            images[a] = b
    return tuple(images)


def parse_cycle_strings(strings, degree: int | None = None) -> list[tuple[int, ...]]:
    """Parse several cycle-notation permutations, padded to a common degree."""
    raw = [parse_cycle_string(s) for s in strings]
    n = max([len(t) for t in raw] + [degree or 0])
    return [t + tuple(range(len(t), n)) for t in raw]


class Permutation:
    """A permutation of {0, ..., degree-1}."""

    __slots__ = ("images",)

    def __init__(self, images):
        t = tuple(int(x) for x in images)
        if sorted(t) != list(range(len(t))):
            raise InputError(f"not a permutation of 0..{len(t) - 1}: {t}")
        self.images = t

    @classmethod
    def from_cycles(cls, s: str, degree: int | None = None) -> "Permutation":
        return cls(parse_cycle_string(s, degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise InputError("degree mismatch")
        return Permutation(mul(self.images, other.images))

    def __pow__(self, n: int) -> "Permutation":
        return Permutation(power(self.images, n))

    def inverse(self) -> "Permutation":
        return Permutation(inv(self.images))

    def order(self) -> int:
        return order(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({cycle_string(self.images)!r}, degree={self.degree})"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))
