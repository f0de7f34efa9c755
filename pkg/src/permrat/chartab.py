"""Exact character-theoretic layer.

Rational (Q-irreducible) character tables are computed by splitting the
class algebra modulo a prime l = 1 mod exp(G), l > 2|G|: the class-sum
matrices are simultaneously diagonalized over F_l, degrees are recovered
from orthogonality, the complex rows are grouped into Galois orbits under
the coprime power maps, and the orbit sums (which are rational integers
bounded by |G|) are lifted symmetrically.  Both orthogonality relations
are verified before a table is returned.

No cyclotomic arithmetic is ever materialized: the downstream formulas
consume Galois-orbit sums (integers) and normalised traces (rationals).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import perms
from .errors import InputError, InternalConsistencyError
from .groups import Group, Subgroup
from .numutil import (
    coprime_residues,
    dixon_prime,
    mobius,
    ramanujan_sum,
    sqrt_mod_prime,
    totient,
)

DEFAULT_SEED = 1729


# ---------------------------------------------------------------------------
# class functions


class ClassFunction:
    """Exact rational class function on the conjugacy classes of a group."""

    __slots__ = ("group", "values")

    def __init__(self, group: Group, values):
        vals = tuple(Fraction(v) for v in values)
        if len(vals) != len(group.classes()):
            raise InputError("class-function length mismatch")
        self.group = group
        self.values = vals

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and self.group is other.group
            and self.values == other.values
        )

    def __hash__(self):
        return hash((id(self.group), self.values))

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c) -> "ClassFunction":
        c = Fraction(c)
        return ClassFunction(self.group, [c * v for v in self.values])

    def _check(self, other):
        if not isinstance(other, ClassFunction) or other.group is not self.group:
            raise InputError("class functions on different groups")

    def __repr__(self):
        return f"ClassFunction({[str(v) for v in self.values]})"


def inner(f: ClassFunction, g: ClassFunction) -> Fraction:
    """<f, g> with class weights; both arguments rational-valued, so no
    conjugation is needed."""
    f._check(g)
    grp = f.group
    acc = Fraction(0)
    for c, a, b in zip(grp.classes(), f.values, g.values):
        acc += c.size * a * b
    return acc / grp.order


def trivial_character(group: Group) -> ClassFunction:
    return ClassFunction(group, [1] * len(group.classes()))


def regular_character(group: Group) -> ClassFunction:
    vals = [0] * len(group.classes())
    vals[0] = group.order
    return ClassFunction(group, vals)


# ---------------------------------------------------------------------------
# fusion / induction / restriction / permutation characters


def fusion_map(hgroup: Group, parent: Group) -> list[int]:
    """For each class of hgroup, the index of the parent class containing it."""
    out = []
    for c in hgroup.classes():
        t = hgroup.elements[c.rep]
        out.append(parent.class_of[parent.element_index(t)])
    return out


def perm_character(parent: Group, h: Subgroup) -> ClassFunction:
    """Character of the action on cosets of h: value = fixed-coset count."""
    if h.parent is not parent:
        raise InputError("subgroup of a different parent")
    counts = [0] * len(parent.classes())
    for i in h.element_ids:
        counts[parent.class_of[i]] += 1
    vals = []
    for c, k in zip(parent.classes(), counts):
        num = parent.order * k
        den = c.size * h.order
        if num % den:
            raise InternalConsistencyError("permutation character not integral")
        vals.append(num // den)
    return ClassFunction(parent, vals)


def induce(f: ClassFunction, parent: Group) -> ClassFunction:
    """Induction of a class function from f.group (a subgroup) to parent."""
    hgroup = f.group
    fus = fusion_map(hgroup, parent)
    sums = [Fraction(0)] * len(parent.classes())
    for hc, v, tgt in zip(hgroup.classes(), f.values, fus):
        sums[tgt] += hc.size * v
    vals = []
    for c, s in zip(parent.classes(), sums):
        vals.append(s * parent.order / (c.size * hgroup.order))
    return ClassFunction(parent, vals)


def restrict(f: ClassFunction, hgroup: Group) -> ClassFunction:
    """Restriction of a class function on the parent to the subgroup hgroup."""
    fus = fusion_map(hgroup, f.group)
    return ClassFunction(hgroup, [f.values[t] for t in fus])


# ---------------------------------------------------------------------------
# modular linear algebra (dense, small)


def _mat_vec(a, v, l):
    return [sum(x * y for x, y in zip(row, v)) % l for row in a]


def _nullspace(a, l):
    """Basis of the right nullspace of a over F_l (rows are vectors)."""
    n = len(a)
    m = len(a[0]) if n else 0
    mat = [row[:] for row in a]
    pivots = []
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if mat[i][c] % l:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], -1, l)
        mat[r] = [x * inv % l for x in mat[r]]
        for i in range(n):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % l for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * m
        v[fc] = 1
        for pr, pc in enumerate(pivots):
            v[pc] = (-mat[pr][fc]) % l
        basis.append(v)
    return basis


def _rref(rows, l):
    """Row-reduce; returns (rref rows, pivot columns)."""
    mat = [r[:] for r in rows]
    n = len(mat)
    m = len(mat[0]) if n else 0
    pivots = []
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if mat[i][c] % l:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], -1, l)
        mat[r] = [x * inv % l for x in mat[r]]
        for i in range(n):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % l for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return mat[:r], pivots


def _charpoly(a, l):
    """Characteristic polynomial mod l via Hessenberg reduction.

    Returns coefficients low-to-high; monic of degree n."""
    n = len(a)
    h = [row[:] for row in a]
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i][j] % l:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = pow(h[j + 1][j], -1, l)
        for i in range(j + 2, n):
            if h[i][j]:
                f = h[i][j] * inv % l
                h[i] = [(x - f * y) % l for x, y in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] = (row[j + 1] + f * row[i]) % l
    polys = [[1]]
    for m in range(1, n + 1):
        # p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i h[i-1][m-1] (prod subdiag) p_{i-1}
        prev = polys[m - 1]
        pm = [0] + prev
        pm = [(c - h[m - 1][m - 1] * d) % l for c, d in zip(pm, prev + [0])]
        beta = 1
        for i in range(m - 1, 0, -1):
            beta = beta * h[i][i - 1] % l
            coef = h[i - 1][m - 1] * beta % l
            if coef:
                pi = polys[i - 1]
                pm = [(c - coef * (pi[k] if k < len(pi) else 0)) % l
                      for k, c in enumerate(pm)]
        polys.append(pm)
    return polys[n]


def _poly_divmod(a, b, l):
    a = a[:]
    binv = pow(b[-1], -1, l)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * binv % l
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % l
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


def _poly_gcd(a, b, l):
    a, b = a[:], b[:]
    while len(b) > 1 or b[0]:
        _, r = _poly_divmod(a, b, l)
        a, b = b, r
    inv = pow(a[-1], -1, l)
    return [c * inv % l for c in a]


def _poly_powmod(base, e, mod, l):
    result = [1]
    base = _poly_divmod(base, mod, l)[1]
    while e:
        if e & 1:
            result = _poly_divmod(_poly_mul(result, base, l), mod, l)[1]
        base = _poly_divmod(_poly_mul(base, base, l), mod, l)[1]
        e >>= 1
    return result


def _poly_mul(a, b, l):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % l
    return out


def _poly_deriv(a, l):
    return [(i * c) % l for i, c in enumerate(a)][1:] or [0]


def _roots(poly, l, rng) -> list[int]:
    """Distinct roots in F_l of a polynomial that splits into linear factors."""
    # radical f / gcd(f, f') carries each distinct root exactly once
    f = poly[:]
    d = _poly_deriv(f, l)
    if len(d) > 1 or d[0]:
        g = _poly_gcd(f, d, l)
        if len(g) > 1:
            f, _ = _poly_divmod(f, g, l)
    roots: list[int] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if len(g) == 2:
            roots.append((-g[0]) * pow(g[1], -1, l) % l)
            continue
        if len(g) == 1:
            continue
        if g[0] == 0:
            roots.append(0)
            stack.append(_poly_divmod(g, [0, 1], l)[0])
            continue
        # Cantor-Zassenhaus split into linear factors
        while True:
            a = rng.randrange(l)
            t = _poly_powmod([a, 1], (l - 1) // 2, g, l)
            t = t[:]
            t[0] = (t[0] - 1) % l
            if len(t) == 1 and t[0] == 0:
                continue
            h = _poly_gcd(g, t, l)
            if 1 < len(h) < len(g):
                stack.append(h)
                stack.append(_poly_divmod(g, h, l)[0])
                break
    return sorted(roots)


# ---------------------------------------------------------------------------
# rational character tables


@dataclass(frozen=True)
class RationalRow:
    values: tuple[int, ...]  # tr chi on each conjugacy class
    degree: int  # degree of one complex constituent
    field_degree: int  # [Q(chi) : Q] = Galois orbit length
    fs: int  # Frobenius-Schur indicator of one constituent


class RationalTable:
    """Integer matrix of Q-irreducible characters against conjugacy classes."""

    def __init__(self, group: Group, seed: int = DEFAULT_SEED):
        self.group = group
        self.seed = seed
        self.modular_prime = dixon_prime(group.order, group.exponent)
        self._complex_rows: list[tuple[int, ...]] = []
        self.rows: list[RationalRow] = []
        self._build()

    # -- construction -------------------------------------------------------

    def _build(self) -> None:
        g = self.group
        l = self.modular_prime
        if g.is_abelian():
            complex_rows, degrees = self._abelian_rows(l)
        else:
            complex_rows, degrees = self._dixon_rows(l)
        self._verify_complex(complex_rows, l)
        self._galois_orbits(complex_rows, degrees, l)
        self._verify_rational()

    def _abelian_rows(self, l):
        import itertools

        g = self.group
        basis = _abelian_basis(g)
        n = g.order
        # coordinates of every element over the basis
        coords = {0: tuple([0] * len(basis))}
        if basis:
            pows = []
            for gi, d in basis:
                cur = [0]
                for _ in range(d - 1):
                    cur.append(g.mul_idx(cur[-1], gi))
                pows.append(cur)
            for tup in itertools.product(*[range(d) for _, d in basis]):
                e = 0
                for (gi, d), a, cur in zip(basis, tup, pows):
                    e = g.mul_idx(e, cur[a])
                coords[e] = tup
        if len(coords) != n:
            raise InternalConsistencyError("abelian basis does not span")
        prim = _primitive_root(l)
        zetas = [pow(prim, (l - 1) // d, l) for _, d in basis]
        class_elem = [c.rep for c in g.classes()]
        rows = []
        for char in itertools.product(*[range(d) for _, d in basis]):
            row = []
            for e in class_elem:
                a = coords[e]
                val = 1
                for z, ci, ai, (_, d) in zip(zetas, char, a, basis):
                    val = val * pow(z, ci * ai % d, l) % l
                row.append(val)
            rows.append(tuple(row))
        return rows, [1] * n

    def _dixon_rows(self, l):
        g = self.group
        classes = g.classes()
        r = len(classes)
        members = [g.class_members(i) for i in range(r)]
        inv_class = [g.class_of[g.inverse_table[c.rep]] for c in classes]
        rng = random.Random(self.seed)

        matrices_order = sorted(range(1, r), key=lambda i: (classes[i].size, i))
        spaces: list[list[list[int]]] = [_identity_rows(r)]
        for ci in matrices_order:
            if all(len(b) == 1 for b in spaces):
                break
            mi = self._class_matrix(ci, members, inv_class)
            new_spaces: list[list[list[int]]] = []
            for basis in spaces:
                if len(basis) == 1:
                    new_spaces.append(basis)
                    continue
                rref, pivots = _rref(basis, l)
                d = len(rref)
                imgs = [_mat_vec(mi, vec, l) for vec in rref]
                amat = [[imgs[j][pivots[i]] for j in range(d)] for i in range(d)]
                cp = _charpoly(amat, l)
                for lam in _roots(cp, l, rng):
                    shifted = [row[:] for row in amat]
                    for i in range(d):
                        shifted[i][i] = (shifted[i][i] - lam) % l
                    sub_basis = []
                    for coeffs in _nullspace(shifted, l):
                        vec = [0] * r
                        for c, brow in zip(coeffs, rref):
                            if c:
                                for k in range(r):
                                    vec[k] = (vec[k] + c * brow[k]) % l
                        sub_basis.append(vec)
                    if not sub_basis:
                        raise InternalConsistencyError("eigenvalue without eigenvector")
                    new_spaces.append(sub_basis)
            spaces = new_spaces
        done: list[list[int]] = []
        for basis in spaces:
            if len(basis) != 1:
                raise InternalConsistencyError("class algebra failed to split")
            done.append(basis[0])
        if len(done) != r:
            raise InternalConsistencyError("wrong number of central characters")
        # normalize eigenvectors: identity-class coordinate is 1
        omegas = []
        for vec in done:
            if vec[0] % l == 0:
                raise InternalConsistencyError("eigenvector vanishes at the identity class")
            inv0 = pow(vec[0], -1, l)
            omegas.append([x * inv0 % l for x in vec])
        omegas.sort()
        rows = []
        degrees = []
        sizes = [c.size for c in classes]
        n = g.order
        for w in omegas:
            s = 0
            for k in range(r):
                s = (s + w[k] * w[inv_class[k]] * pow(sizes[k], -1, l)) % l
            d2 = n % l * pow(s, -1, l) % l
            d = sqrt_mod_prime(d2, l)
            if d is None:
                raise InternalConsistencyError("degree is not a square mod l")
            d = min(d, l - d)
            row = tuple(d * w[k] % l * pow(sizes[k], -1, l) % l for k in range(r))
            rows.append(row)
            degrees.append(d)
        if sum(d * d for d in degrees) != n:
            raise InternalConsistencyError("degree squares do not sum to |G|")
        return rows, degrees

    def _class_matrix(self, ci, members, inv_class):
        g = self.group
        r = len(members)
        mat = [[0] * r for _ in range(r)]
        inv = g.inverse_table
        for k in range(r):
            z = g.class_members(k)[0]
            col_weight = 1
            for x in members[ci]:
                y = g.mul_idx(inv[x], z)
                mat[g.class_of[y]][k] += col_weight
        return mat

    def _verify_complex(self, rows, l):
        g = self.group
        classes = g.classes()
        r = len(classes)
        inv_class = [g.class_of[g.inverse_table[c.rep]] for c in classes]
        sizes = [c.size for c in classes]
        n = g.order
        for i, a in enumerate(rows):
            for j, b in enumerate(rows):
                s = sum(sizes[k] * a[k] * b[inv_class[k]] for k in range(r)) % l
                if s != (n % l if i == j else 0):
                    raise InternalConsistencyError("first orthogonality failed mod l")
        for k in range(r):
            for k2 in range(r):
                s = sum(row[k] * row[inv_class[k2]] for row in rows) % l
                expect = (n // sizes[k]) % l if k == k2 else 0
                if s != expect:
                    raise InternalConsistencyError("second orthogonality failed mod l")

    def _galois_orbits(self, complex_rows, degrees, l):
        g = self.group
        e = g.exponent
        r = len(complex_rows)
        powmaps = {t: g.power_map(t) for t in coprime_residues(e)}
        row_pos = {row: i for i, row in enumerate(complex_rows)}
        seen = [False] * r
        rational = []
        self._complex_rows = list(complex_rows)
        for i, row in enumerate(complex_rows):
            if seen[i]:
                continue
            orbit_ids = set()
            for t, pm in powmaps.items():
                conj = tuple(row[pm[k]] for k in range(len(row)))
                j = row_pos.get(conj)
                if j is None:
                    raise InternalConsistencyError("power map left the character list")
                orbit_ids.add(j)
            for j in orbit_ids:
                seen[j] = True
            f = len(orbit_ids)
            summed = [0] * len(row)
            for j in orbit_ids:
                for k, x in enumerate(self._complex_rows[j]):
                    summed[k] = (summed[k] + x) % l
            lifted = tuple(x if x <= l // 2 else x - l for x in summed)
            bound = f * degrees[i]
            if any(abs(x) > bound for x in lifted):
                raise InternalConsistencyError("lifted trace exceeds its bound")
            fs = self._fs_from_complex(self._complex_rows[min(orbit_ids)], l)
            rational.append(RationalRow(values=lifted, degree=degrees[i],
                                        field_degree=f, fs=fs))
        ncyc = len(g.cyclic_subgroup_classes())
        if len(rational) != ncyc:
            raise InternalConsistencyError(
                "number of Q-irreducible rows differs from rational class count"
            )
        rational.sort(key=lambda row: (row.values[0], row.degree, row.values))
        for i, row in enumerate(rational):
            if all(v == 1 for v in row.values):
                rational.insert(0, rational.pop(i))
                break
        self.rows = rational

    def _fs_from_complex(self, row, l) -> int:
        g = self.group
        pm2 = g.power_map(2)
        sizes = [c.size for c in g.classes()]
        s = sum(sz * row[pm2[k]] for k, sz in enumerate(sizes)) % l
        val = s * pow(g.order % l, -1, l) % l
        if val > l // 2:
            val -= l
        if val not in (-1, 0, 1):
            raise InternalConsistencyError("Frobenius-Schur indicator out of range")
        return val

    def _verify_rational(self):
        g = self.group
        sizes = [c.size for c in g.classes()]
        n = g.order
        for i, a in enumerate(self.rows):
            if a.values[0] != a.degree * a.field_degree:
                raise InternalConsistencyError("row degree bookkeeping broken")
            for j, b in enumerate(self.rows):
                s = sum(sz * x * y for sz, x, y in zip(sizes, a.values, b.values))
                expect = n * a.field_degree if i == j else 0
                if s != expect:
                    raise InternalConsistencyError("rational orthogonality failed")
        if sum(r.degree**2 * r.field_degree for r in self.rows) != n:
            raise InternalConsistencyError("degree mass formula failed")

    # -- queries --------------------------------------------------------------

    def row_classfunction(self, i: int) -> ClassFunction:
        return ClassFunction(self.group, self.rows[i].values)

    def mu(self, i: int, beta: ClassFunction) -> Fraction:
        """Multiplicity of row i in beta: <row, beta> / <row, row>."""
        return inner(self.row_classfunction(i), beta) / self.rows[i].field_degree

    def mu_int(self, i: int, beta: ClassFunction) -> int:
        m = self.mu(i, beta)
        if m.denominator != 1:
            raise InputError(f"non-integral multiplicity {m} for a claimed character")
        return int(m)

    def decompose(self, beta: ClassFunction) -> list[Fraction]:
        mults = [self.mu(i, beta) for i in range(len(self.rows))]
        recon = [Fraction(0)] * len(beta.values)
        for m, row in zip(mults, self.rows):
            for k, v in enumerate(row.values):
                recon[k] += m * v
        if tuple(recon) != beta.values:
            raise InputError("class function is not a rational-character combination")
        return mults

    def to_json(self) -> dict:
        g = self.group
        return {
            "classes": [
                {
                    "rep": perms.cycle_string(g.elements[c.rep]),
                    "size": c.size,
                    "order": c.element_order,
                }
                for c in g.classes()
            ],
            "rows": [
                {
                    "values": list(r.values),
                    "degree": r.degree,
                    "field_degree": r.field_degree,
                    "fs": r.fs,
                }
                for r in self.rows
            ],
            "modular_prime": self.modular_prime,
            "seed": self.seed,
        }


def _identity_rows(r):
    return [[1 if i == j else 0 for j in range(r)] for i in range(r)]


def _primitive_root(l: int) -> int:
    from sympy.ntheory import primitive_root

    return int(primitive_root(l))


def _abelian_basis(g: Group) -> list[tuple[int, int]]:
    """Independent generators (element index, order) with A = sum <g_i>."""
    if g.order == 1:
        return []
    elems = g.elements
    orders = [(perms.order(x), i) for i, x in enumerate(elems)]
    d, xi = max(((o, -i) for o, i in orders))
    xi = -xi
    if d == g.order:
        return [(xi, d)]
    sub = Subgroup.from_generators(g, [xi])
    q, coset_of = g.quotient(sub)
    p0 = coset_of[0]
    lifted = [(xi, d)]
    for qi, qd in _abelian_basis(q):
        # the Q-element qi is a permutation of coset points; recover its coset
        cpt = q.elements[qi][p0]
        candidates = [y for y in range(g.order) if coset_of[y] == cpt]
        pick = None
        for y in candidates:
            if perms.order(elems[y]) == qd:
                pick = y
                break
        if pick is None:
            raise InternalConsistencyError("no coset representative of the right order")
        lifted.append((pick, qd))
    return lifted


def rational_table(group: Group, seed: int = DEFAULT_SEED) -> RationalTable:
    cached = getattr(group, "_rational_table", None)
    if cached is None or cached.seed != seed:
        cached = RationalTable(group, seed=seed)
        group._rational_table = cached
    return cached


def fs_indicator(group: Group, row_index: int) -> int:
    return rational_table(group).rows[row_index].fs


# ---------------------------------------------------------------------------
# linear characters of subgroups (kernel + cyclic quotient representation)


@dataclass
class LinearCharacter:
    """A linear character of a subgroup H, stored as (kernel, cyclic quotient).

    H/ker is cyclic of order n, generated by the coset of `generator`;
    chi maps that coset to a fixed primitive n-th root of unity.  Only the
    data [D : D cap ker] is ever consumed by the trace formulas, so no root
    of unity is materialized.
    """

    subgroup: Subgroup  # H inside its parent group
    kernel_ids: frozenset[int]
    order: int
    generator: int  # element id of a coset generator
    _dlog: dict[int, int] | None = None

    def dlog(self) -> dict[int, int]:
        """Element id -> a with h in generator^a * ker."""
        if self._dlog is None:
            par = self.subgroup.parent
            table = {}
            cur = 0
            for a in range(self.order):
                for k in self.kernel_ids:
                    table[par.mul_idx(cur, k)] = a
                cur = par.mul_idx(cur, self.generator)
            if len(table) != self.subgroup.order:
                raise InternalConsistencyError("kernel cosets do not tile the subgroup")
            self._dlog = table
        return self._dlog

    def trace_values(self, hgroup: Group) -> ClassFunction:
        """tr chi as a class function on H (H given as a standalone group)."""
        par = self.subgroup.parent
        dlog = self.dlog()
        vals = []
        for c in hgroup.classes():
            t = hgroup.elements[c.rep]
            a = dlog[par.element_index(t)]
            vals.append(ramanujan_sum(self.order, a))
        return ClassFunction(hgroup, vals)

    def restricted_order(self, d_ids) -> int:
        """[D : D cap ker chi] for a cyclic subgroup D given by element ids."""
        inter = sum(1 for i in d_ids if i in self.kernel_ids)
        n = len(d_ids) // inter if inter else 0
        if inter == 0 or len(d_ids) % inter:
            raise InternalConsistencyError("kernel intersection does not divide")
        return n

    def tr_star_on(self, d_ids) -> Fraction:
        """Normalised trace of chi on the cyclic subgroup D (Moebius form)."""
        return tr_star_value(self.restricted_order(d_ids))


def tr_star_value(n: int) -> Fraction:
    """tr* of a primitive n-th root character: mu(n)/phi(n)."""
    if n < 1:
        raise InputError("character order must be positive")
    return Fraction(mobius(n), totient(n))


def linear_character_orbits(h: Subgroup) -> list[LinearCharacter]:
    """One linear character of H per Galois orbit, i.e. one per kernel K
    with [H,H] <= K <= H and H/K cyclic.  The induced rational trace only
    depends on the kernel, which is all the monomial machinery needs."""
    par = h.parent
    hgroup = h.as_group()
    der_local = hgroup.derived_subgroup_ids()
    der = frozenset(par.element_index(hgroup.elements[i]) for i in der_local)
    out = []
    mass = 0
    for k_ids, order, gen in _cyclic_quotient_kernels(par, h, der):
        out.append(LinearCharacter(subgroup=h, kernel_ids=k_ids, order=order, generator=gen))
        mass += totient(order)
    if mass * len(der) != h.order:
        raise InternalConsistencyError("linear character count mismatch")
    out.sort(key=lambda ch: (ch.order, sorted(ch.kernel_ids)))
    return out


def _cyclic_quotient_kernels(par: Group, h: Subgroup, der: frozenset[int]):
    """Triples (kernel ids, quotient order, coset generator id) for every
    kernel K with der <= K <= H and H/K cyclic."""
    members = sorted(h.element_ids)
    base = frozenset(par.closure(der | {0}))
    all_subs = {base}
    queue = [base]
    qi = 0
    while qi < len(queue):
        cur = queue[qi]
        qi += 1
        for x in members:
            if x in cur:
                continue
            j = frozenset(par.closure(list(cur) + [x]))
            if j not in all_subs:
                all_subs.add(j)
                queue.append(j)
    for k in sorted(all_subs, key=lambda s: (-len(s), sorted(s))):
        n = len(members) // len(k)
        if n == 1:
            yield frozenset(k), 1, 0
            continue
        gen = None
        for x in members:
            if x in k:
                continue
            cur = x
            j = 1
            while cur not in k:
                cur = par.mul_idx(cur, x)
                j += 1
            if j == n:
                gen = x
                break
        if gen is not None:
            yield frozenset(k), n, gen


# ---------------------------------------------------------------------------
# the generalized induction inner product over cyclic-subgroup classes


def cyclic_subgroups_of(sub: Subgroup) -> list[tuple[int, frozenset[int]]]:
    """All cyclic subgroups of `sub` as (generator id, element ids), parent ids."""
    par = sub.parent
    seen = {}
    for x in sorted(sub.element_ids):
        ids = frozenset(_cyclic_ids(par, x))
        if ids not in seen:
            seen[ids] = x
    return sorted(((gen, ids) for ids, gen in seen.items()), key=lambda t: (len(t[1]), t[0]))


def _cyclic_ids(par: Group, x: int) -> list[int]:
    out = [0]
    cur = x
    while cur != 0:
        out.append(cur)
        cur = par.mul_idx(cur, x)
    return out


def general_induction_inner(
    parent: Group,
    h1: Subgroup,
    tau1: ClassFunction,
    h2: Subgroup,
    tau2: ClassFunction,
) -> Fraction:
    """<Ind tau1, Ind tau2> over the cyclic-subgroup classes of the parent.

    tau1 and tau2 are rational class functions on the standalone groups of
    h1 and h2 (so tr* tau2 = tau2).  Implements the weighted sum
    (1/|H1||H2|) sum_[C] |N(C)| phi(|C|) (sum tau1(D1)) (sum tau2(D2)).
    """
    cycles = parent.cyclic_subgroup_classes()
    h1g, h2g = h1.as_group(), h2.as_group()
    if tau1.group is not h1g or tau2.group is not h2g:
        raise InputError("class functions must live on the subgroups")
    sums1 = _cyclic_value_sums(parent, h1, tau1, cycles)
    sums2 = _cyclic_value_sums(parent, h2, tau2, cycles)
    acc = Fraction(0)
    for cc, s1, s2 in zip(cycles, sums1, sums2):
        if s1 and s2:
            acc += cc.normalizer_order * totient(cc.subgroup_order) * s1 * s2
    return acc / (h1.order * h2.order)


def _cyclic_value_sums(parent, h, tau, cycles):
    """For each cyclic class [C] of the parent: sum of tau(D) over cyclic
    D <= H with D conjugate to C (tau evaluated on a generator of D)."""
    hg = h.as_group()
    class_index = {}
    for i, cc in enumerate(cycles):
        for fc in cc.fused_classes:
            class_index[fc] = i
    sums = [Fraction(0)] * len(cycles)
    for gen, ids in cyclic_subgroups_of(h):
        gcls = parent.class_of[gen]
        i = class_index[gcls]
        hcls = hg.class_of[hg.element_index(parent.elements[gen])]
        sums[i] += tau.values[hcls]
    return sums
