"""Constructors for the group families used throughout the corpus.

Everything is returned as a Group of explicit permutations.  Matrix groups
over F_q act on the nonzero vectors of F_q^2 (GL, SL) or on the projective
line (PGL, PSL); the field modulus is the lexicographically smallest
irreducible polynomial and is recorded on the field object.
"""

from __future__ import annotations

from math import gcd

from . import perms
from .errors import InputError, InternalConsistencyError
from .groups import Group
from .numutil import is_prime_power, multiplicative_order

MAX_PRIME_POWER = 32  # desk-scale bound for the matrix-group constructors


# ---------------------------------------------------------------------------
# Abelian and classical small families


def cyclic(n: int) -> Group:
    if n < 1:
        raise InputError("cyclic(n) needs n >= 1")
    if n == 1:
        return Group([], degree=1, name="C1")
    images = tuple((i + 1) % n for i in range(n))
    return Group([images], name=f"C{n}")


def abelian(invariants: list[int]) -> Group:
    """Direct product of cyclic groups, one orbit per factor."""
    invariants = [int(d) for d in invariants if int(d) > 1]
    if not invariants:
        return Group([], degree=1, name="C1")
    g = direct_product(*[cyclic(d) for d in invariants])
    g.name = "x".join(f"C{d}" for d in invariants)
    return g


def symmetric(n: int) -> Group:
    if n < 1:
        raise InputError("symmetric(n) needs n >= 1")
    if n == 1:
        return Group([], degree=1, name="S1")
    gens = [tuple((i + 1) % n for i in range(n))]
    if n > 2:
        swap = list(range(n))
        swap[0], swap[1] = 1, 0
        gens.append(tuple(swap))
    return Group(gens, name=f"S{n}")


def alternating(n: int) -> Group:
    if n < 3:
        return Group([], degree=max(n, 1), name=f"A{n}")
    three = list(range(n))
    three[0], three[1], three[2] = 1, 2, 0
    gens = [tuple(three)]
    if n > 3:
        if n % 2:
            cyc = tuple((i + 1) % n for i in range(n))
        else:
            cyc = (0,) + tuple(1 + (i + 1) % (n - 1) for i in range(n - 1))
        gens.append(cyc)
    g = Group(gens, name=f"A{n}")
    return g


def direct_product(*groups: Group) -> Group:
    if not groups:
        return Group([], degree=1)
    degs = [g.degree for g in groups]
    total = sum(degs)
    gens = []
    offset = 0
    for g in groups:
        for t in g.generators:
            img = list(range(total))
            for i, x in enumerate(t):
                img[offset + i] = offset + x
            gens.append(tuple(img))
        offset += g.degree
    name = "x".join(g.name or "?" for g in groups)
    return Group(gens or [perms.identity_tuple(total)], degree=total, name=name)


def dihedral(order: int) -> Group:
    """Dihedral group of the given (even) order, acting on n = order/2 points."""
    if order % 2 or order < 2:
        raise InputError("dihedral(order) needs an even order >= 2")
    n = order // 2
    if n == 1:
        return Group([(1, 0)], name="C2")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    return Group([rot, ref], name=f"D{order}")


def semidirect_cp(m: int, e: int, n: int | None = None, name: str | None = None) -> Group:
    """C_m x| C_n with the C_n generator acting as a -> a**e.

    When n is omitted it defaults to the multiplicative order of e mod m
    (the faithful choice).  Requires e**n = 1 mod m.
    """
    if m < 1:
        raise InputError("semidirect_cp needs m >= 1")
    if gcd(e, m) != 1:
        raise InputError("automorphism exponent must be a unit mod m")
    if n is None:
        n = multiplicative_order(e, m) if m > 1 else 1
    if m > 1 and pow(e, n, m) != 1 % m:
        raise InputError(f"exponent {e} has order not dividing {n} mod {m}")
    if m == 1:
        return cyclic(n)
    if n == 1:
        return cyclic(m)
    total = m + n
    a = tuple((i + 1) % m for i in range(m)) + tuple(range(m, total))
    b = tuple((i * e) % m for i in range(m)) + tuple(m + ((i + 1) % n) for i in range(n))
    return Group([a, b], name=name or f"C{m}:C{n}")


def dicyclic(order: int) -> Group:
    """Dicyclic group of order 4n: <a, b | a^(2n)=1, b^2=a^n, bab^-1=a^-1>.

    dicyclic(2**N) is the generalized quaternion group Q_{2^N}.
    """
    if order % 4 or order < 8:
        raise InputError("dicyclic(order) needs order divisible by 4, >= 8")
    n = order // 4
    # regular action on pairs (i, eps) <-> a^i b^eps
    elems = [(i, eps) for eps in (0, 1) for i in range(2 * n)]
    pos = {x: j for j, x in enumerate(elems)}

    def lmul(g, x):
        (i, e1), (j, e2) = g, x
        if e1 == 0:
            return ((i + j) % (2 * n), e2)
        if e2 == 0:
            return ((i - j) % (2 * n), 1)
        return ((i - j + n) % (2 * n), 0)

    gens = []
    for g in [(1, 0), (0, 1)]:
        gens.append(tuple(pos[lmul(g, x)] for x in elems))
    name = f"Q{order}" if order & (order - 1) == 0 else f"Dic{order}"
    grp = Group(gens, name=name)
    if grp.order != order:
        raise InternalConsistencyError("dicyclic construction has wrong order")
    return grp


def generalized_quaternion(order: int) -> Group:
    if order & (order - 1) or order < 8:
        raise InputError("generalized_quaternion needs a 2-power order >= 8")
    return dicyclic(order)


def semidihedral(order: int) -> Group:
    if order & (order - 1) or order < 16:
        raise InputError("semidihedral needs a 2-power order >= 16")
    h = order // 2
    return semidirect_cp(h, h // 2 - 1, 2, name=f"SD{order}")


def modular_maximal_cyclic(order: int) -> Group:
    if order & (order - 1) or order < 16:
        raise InputError("modular_maximal_cyclic needs a 2-power order >= 16")
    h = order // 2
    return semidirect_cp(h, h // 2 + 1, 2, name=f"M{order}")


def abelian_aut_semidirect(invariants: list[int], auts: list[list[list[int]]],
                           name: str | None = None) -> Group:
    """A x| B for abelian A = sum Z/d_i, with B generated by the given
    automorphisms (integer matrices acting on coordinate columns mod d)."""
    ds = [int(d) for d in invariants]
    pts = [()]
    for d in ds:
        pts = [t + (r,) for t in pts for r in range(d)]
    pos = {t: j for j, t in enumerate(pts)}
    gens = []
    for axis in range(len(ds)):
        img = []
        for t in pts:
            u = list(t)
            u[axis] = (u[axis] + 1) % ds[axis]
            img.append(pos[tuple(u)])
        gens.append(tuple(img))
    for mat in auts:
        img = []
        for t in pts:
            u = tuple(
                sum(mat[i][j] * t[j] for j in range(len(ds))) % ds[i]
                for i in range(len(ds))
            )
            img.append(pos[u])
        if sorted(img) != list(range(len(pts))):
            raise InputError("matrix does not define an automorphism")
        gens.append(tuple(img))
    return Group(gens, name=name)


def central_product_d8_c4() -> Group:
    """D8 o C4, the central product identifying the two central C2's."""
    prod = direct_product(dihedral(8), cyclic(4))
    prod.elements
    r2 = prod.element_index(perms.parse_cycle_strings(["(0 2)(1 3)"], prod.degree)[0])
    c2 = prod.element_index(perms.parse_cycle_strings(["(4 6)(5 7)"], prod.degree)[0])
    z = prod.mul_idx(r2, c2)
    nsub = prod.subgroup([z])
    q, _ = prod.quotient(nsub)
    q.name = "D8oC4"
    if q.order != 16:
        raise InternalConsistencyError("central product has wrong order")
    return q


# ---------------------------------------------------------------------------
# Finite fields and 2x2 matrix groups


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_pow_mod(a, n, m, p):
    result = [1]
    base = _poly_mod(a, m, p)
    while n:
        if n & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        n >>= 1
    return result


def _is_irreducible(m, p):
    """Monic m of degree k irreducible over F_p iff t^(p^k) = t mod m and
    gcd-style condition t^(p^(k/r)) != t for prime r | k."""
    k = len(m) - 1
    t = [0, 1]
    x = _poly_pow_mod(t, p**k, m, p)
    if x != _poly_mod(t, m, p):
        return False
    from .numutil import prime_factors

    for r in prime_factors(k):
        x = _poly_pow_mod(t, p ** (k // r), m, p)
        if x == _poly_mod(t, m, p):
            return False
    return True


class FiniteField:
    """F_q with elements encoded as ints 0..q-1 (base-p coefficient digits)."""

    def __init__(self, q: int):
        pk = is_prime_power(q)
        if pk is None:
            raise InputError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        if self.k == 1:
            self.modulus = (0, 1)  # the polynomial t; unused for prime fields
        else:
            self.modulus = self._smallest_irreducible()
        self._inv_cache: dict[int, int] = {}

    def _smallest_irreducible(self) -> tuple[int, ...]:
        """First irreducible monic in lexicographic order on (a_{k-1},...,a_0)."""
        p, k = self.p, self.k
        for code in range(p**k):
            digits = []
            c = code
            for _ in range(k):
                digits.append(c % p)  # a_0 varies fastest
                c //= p
            m = digits + [1]  # low-to-high coefficients, monic
            if _is_irreducible(m, p):
                return tuple(m)
        raise InternalConsistencyError("no irreducible modulus found")

    def _decode(self, a: int) -> list[int]:
        digits = []
        for _ in range(self.k):
            digits.append(a % self.p)
            a //= self.p
        return digits

    def _encode(self, coeffs) -> int:
        a = 0
        for c in reversed(list(coeffs) + [0] * (self.k - len(coeffs))):
            a = a * self.p + (c % self.p)
        return a

    def add(self, a: int, b: int) -> int:
        da, db = self._decode(a), self._decode(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self._encode([(-x) % self.p for x in self._decode(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        prod = _poly_mod(_poly_mul(self._decode(a), self._decode(b), self.p),
                         list(self.modulus), self.p)
        return self._encode(prod)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = 1
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise InputError("division by zero in F_q")
        r = self._inv_cache.get(a)
        if r is None:
            r = self.pow(a, self.q - 2)
            self._inv_cache[a] = r
        return r

    def one(self) -> int:
        return 1

    def element_order(self, a: int) -> int:
        if a == 0:
            raise InputError("0 has no multiplicative order")
        o, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            o += 1
        return o

    def generator(self) -> int:
        for a in range(1, self.q):
            if self.element_order(a) == self.q - 1:
                return a
        raise InternalConsistencyError("no multiplicative generator found")

    def describe(self) -> dict:
        return {"q": self.q, "p": self.p, "k": self.k,
                "modulus": list(self.modulus)}


def _mat_mul(f: FiniteField, A, B):
    a, b, c, d = A
    e, g, h, i = B
    return (
        f.add(f.mul(a, e), f.mul(b, h)),
        f.add(f.mul(a, g), f.mul(b, i)),
        f.add(f.mul(c, e), f.mul(d, h)),
        f.add(f.mul(c, g), f.mul(d, i)),
    )


def _mat_det(f: FiniteField, A):
    a, b, c, d = A
    return f.sub(f.mul(a, d), f.mul(b, c))


def _vector_points(f: FiniteField):
    return [(x, y) for x in range(f.q) for y in range(f.q) if (x, y) != (0, 0)]


def _projective_points(f: FiniteField):
    return [(0, 1)] + [(1, y) for y in range(f.q)]


def _vec_apply(f: FiniteField, A, v):
    a, b, c, d = A
    x, y = v
    return (f.add(f.mul(a, x), f.mul(b, y)), f.add(f.mul(c, x), f.mul(d, y)))


def _proj_normalize(f: FiniteField, v):
    x, y = v
    if x != 0:
        ix = f.inv(x)
        return (1, f.mul(y, ix))
    return (0, 1)


def matrix_to_permutation(f: FiniteField, A, projective: bool) -> tuple[int, ...]:
    pts = _projective_points(f) if projective else _vector_points(f)
    pos = {v: i for i, v in enumerate(pts)}
    img = []
    for v in pts:
        w = _vec_apply(f, A, v)
        if projective:
            w = _proj_normalize(f, w)
        img.append(pos[w])
    if sorted(img) != list(range(len(pts))):
        raise InternalConsistencyError("singular matrix passed to permutation map")
    return tuple(img)


def _check_q(q: int) -> FiniteField:
    if q > MAX_PRIME_POWER:
        raise InputError(f"prime power {q} exceeds the constructor bound {MAX_PRIME_POWER}")
    return FiniteField(q)


def _sl2_generator_matrices(f: FiniteField):
    g = f.generator() if f.q > 2 else 1
    mats = []
    for i in range(f.k):
        mats.append((1, f.pow(g, i) if f.q > 2 else 1, 0, 1))
    mats.append((1, 0, 1, 1))
    return mats


def sl2(q: int) -> Group:
    f = _check_q(q)
    gens = [matrix_to_permutation(f, m, False) for m in _sl2_generator_matrices(f)]
    grp = Group(gens, name=f"SL(2,{q})")
    expected = q * (q * q - 1)
    if grp.order != expected:
        raise InternalConsistencyError(f"|SL2({q})| = {grp.order}, expected {expected}")
    grp.field = f
    return grp


def gl2(q: int) -> Group:
    f = _check_q(q)
    mats = _sl2_generator_matrices(f)
    if q > 2:
        mats.append((f.generator(), 0, 0, 1))
    gens = [matrix_to_permutation(f, m, False) for m in mats]
    grp = Group(gens, name=f"GL(2,{q})")
    expected = (q * q - 1) * (q * q - q)
    if grp.order != expected:
        raise InternalConsistencyError(f"|GL2({q})| = {grp.order}, expected {expected}")
    grp.field = f
    return grp


def psl2(q: int) -> Group:
    f = _check_q(q)
    gens = [matrix_to_permutation(f, m, True) for m in _sl2_generator_matrices(f)]
    grp = Group(gens, name=f"PSL(2,{q})")
    expected = q * (q * q - 1) // gcd(2, q - 1)
    if grp.order != expected:
        raise InternalConsistencyError(f"|PSL2({q})| = {grp.order}, expected {expected}")
    grp.field = f
    return grp


def pgl2(q: int) -> Group:
    f = _check_q(q)
    mats = _sl2_generator_matrices(f)
    if q > 2:
        mats.append((f.generator(), 0, 0, 1))
    gens = [matrix_to_permutation(f, m, True) for m in mats]
    grp = Group(gens, name=f"PGL(2,{q})")
    expected = q * (q * q - 1)
    if grp.order != expected:
        raise InternalConsistencyError(f"|PGL2({q})| = {grp.order}, expected {expected}")
    grp.field = f
    return grp


BUILTINS = {
    "cyclic": lambda n: cyclic(n),
    "dihedral": lambda n: dihedral(n),
    "dicyclic": lambda n: dicyclic(n),
    "quaternion": lambda n: generalized_quaternion(n),
    "semidihedral": lambda n: semidihedral(n),
    "modular": lambda n: modular_maximal_cyclic(n),
    "symmetric": lambda n: symmetric(n),
    "alternating": lambda n: alternating(n),
    "sl2": lambda q: sl2(q),
    "gl2": lambda q: gl2(q),
    "psl2": lambda q: psl2(q),
    "pgl2": lambda q: pgl2(q),
}
