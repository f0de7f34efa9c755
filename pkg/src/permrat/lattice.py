"""Exact integer linear algebra: Smith/Hermite normal forms, finite abelian
groups by invariant factors, images of maps between them, lattice kernels.

Matrices are lists of row lists of Python ints; everything is arbitrary
precision and pure.  Sizes here stay in the low hundreds, so the classical
pivoting algorithms are plenty.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import InputError, InternalConsistencyError
from .numutil import invariant_factors_from_orders, ord_p


def _dims(m: list[list[int]]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise InputError("ragged matrix")
    return rows, cols


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matmul(a, b):
    ra, ca = _dims(a)
    rb, cb = _dims(b)
    if ca != rb:
        raise InputError("matmul shape mismatch")
    bt = list(zip(*b)) if rb else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def snf(m: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form: returns (d, u, v) with u*m*v = d, u and v unimodular,
    d diagonal with d[0] | d[1] | ... and nonnegative entries."""
    rows, cols = _dims(m)
    a = [list(r) for r in m]
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):  # row[dst] += c * row[src]
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    n = min(rows, cols)
    for t in range(n):
        while True:
            # find the nonzero entry of smallest absolute value in the block
            pivot = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best):
                        best = abs(x)
                        pivot = (i, j)
            if pivot is None:
                break
            i, j = pivot
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            if a[t][t] < 0:
                negate_row(t)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(i, t, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(j, t, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the block for the divisor chain
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
    d = [[a[i][j] if i == j else 0 for j in range(cols)] for i in range(rows)]
    for i in range(rows):
        for j in range(cols):
            if i != j and a[i][j]:
                raise InternalConsistencyError("SNF did not diagonalize")
    return d, u, v


def snf_diagonal(m: list[list[int]]) -> list[int]:
    d, _, _ = snf(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def hnf_columns(m: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite normal form: returns (h, v) with m*v = h,
    v unimodular, h in lower column echelon with nonnegative pivots."""
    rows, cols = _dims(m)
    a = [list(r) for r in m]
    v = _identity(cols)

    def add_col(dst, src, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def negate_col(i):
        for r in a:
            r[i] = -r[i]
        for r in v:
            r[i] = -r[i]

    pivot_col = 0
    pivots = []
    for row in range(rows):
        if pivot_col >= cols:
            break
        # euclidean elimination across columns pivot_col..cols-1 on this row
        while True:
            nz = [j for j in range(pivot_col, cols) if a[row][j]]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(a[row][j]))
            if jmin != pivot_col:
                swap_cols(pivot_col, jmin)
            if a[row][pivot_col] < 0:
                negate_col(pivot_col)
            p = a[row][pivot_col]
            done = True
            for j in range(pivot_col + 1, cols):
                if a[row][j]:
                    add_col(j, pivot_col, -(a[row][j] // p))
                    if a[row][j]:
                        done = False
            if done:
                break
        if a[row][pivot_col]:
            # reduce earlier columns against this pivot
            p = a[row][pivot_col]
            for j in range(pivot_col):
                q = a[row][j] // p
                if q:
                    add_col(j, pivot_col, -q)
            pivots.append((row, pivot_col))
            pivot_col += 1
    return a, v


def kernel_basis(m: list[list[int]]) -> list[list[int]]:
    """Basis of the integer kernel {x in Z^cols : m x = 0}, as a list of
    column vectors."""
    rows, cols = _dims(m)
    if cols == 0:
        return []
    d, _, v = snf(m)
    rank = sum(1 for i in range(min(rows, cols)) if d[i][i])
    basis = []
    for j in range(rank, cols):
        basis.append([v[i][j] for i in range(cols)])
    return basis


def solve_integer(m: list[list[int]], b: list[int]) -> list[int] | None:
    """One integer solution x of m x = b, or None if none exists."""
    rows, cols = _dims(m)
    if len(b) != rows:
        raise InputError("rhs length mismatch")
    d, u, v = snf(m)
    ub = [sum(u[i][j] * b[j] for j in range(rows)) for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
        elif ub[i]:
            return None
    return [sum(v[i][j] * y[j] for j in range(cols)) for i in range(cols)]


# ---------------------------------------------------------------------------
# Finite abelian groups


@dataclass(frozen=True)
class FinAb:
    """Finite abelian group as an invariant-factor chain d1 | d2 | ... (each > 1).

    The trivial group is the empty chain and prints as "1"."""

    invariants: tuple[int, ...] = ()
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for a, b in zip(self.invariants, self.invariants[1:]):
            if b % a:
                raise InternalConsistencyError(f"not a divisor chain: {self.invariants}")
        if any(d <= 1 for d in self.invariants):
            raise InternalConsistencyError("invariant factors must exceed 1")

    @classmethod
    def from_orders(cls, orders) -> "FinAb":
        return cls(tuple(invariant_factors_from_orders(list(orders))))

    @property
    def order(self) -> int:
        o = 1
        for d in self.invariants:
            o *= d
        return o

    @property
    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def is_trivial(self) -> bool:
        return not self.invariants

    def p_part(self, p: int) -> "FinAb":
        parts = [p ** ord_p(p, d) for d in self.invariants if d % p == 0]
        return FinAb(tuple(d for d in parts if d > 1))

    def direct_sum(self, other: "FinAb") -> "FinAb":
        return FinAb.from_orders(list(self.invariants) + list(other.invariants))

    def __str__(self) -> str:
        if not self.invariants:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariants)

    def to_json(self) -> dict:
        return {"invariants": list(self.invariants)}


def cokernel(m: list[list[int]]) -> tuple[FinAb, int]:
    """Cokernel of the column span: Z^rows / m Z^cols.

    Returns (torsion part, free rank)."""
    rows, cols = _dims(m) if m else (0, 0)
    if rows == 0:
        return FinAb(), 0
    diag = snf_diagonal(m)
    rank = sum(1 for d in diag if d)
    torsion = [d for d in diag if d > 1]
    return FinAb.from_orders(torsion), rows - rank


def subgroup_image(moduli: list[int], vectors: list[list[int]]) -> FinAb:
    """Structure of the subgroup of sum_i Z/moduli[i] generated by the images
    of the given integer vectors."""
    n = len(moduli)
    if any(b < 1 for b in moduli):
        raise InputError("moduli must be positive")
    for vec in vectors:
        if len(vec) != n:
            raise InputError("vector length does not match moduli")
    if n == 0 or not vectors:
        return FinAb()
    # lattice L = span(vectors) + D, D = diag(moduli); subgroup is L/D
    cols = [list(v) for v in vectors]
    block = [[cols[j][i] for j in range(len(cols))] + [moduli[i] if k == i else 0 for k in range(n)]
             for i in range(n)]
    h, _ = hnf_columns(block)
    # basis of L: the nonzero columns of h (full rank n since D has finite index)
    basis_cols = [j for j in range(len(h[0])) if any(h[i][j] for i in range(n))]
    if len(basis_cols) != n:
        raise InternalConsistencyError("image lattice is not full rank")
    w = [[h[i][j] for j in basis_cols] for i in range(n)]
    # solve W X = diag(moduli) column by column (W invertible over Q)
    x = []
    for k in range(n):
        rhs = [moduli[i] if i == k else 0 for i in range(n)]
        col = solve_integer(w, rhs)
        if col is None:
            raise InternalConsistencyError("diag(moduli) not inside image lattice")
        x.append(col)
    xmat = [[x[j][i] for j in range(n)] for i in range(n)]
    diag = snf_diagonal(xmat)
    return FinAb.from_orders([d for d in diag if d > 1])


def kernel_lattice(m: list[list[int]], moduli: list[int]) -> list[list[int]]:
    """Basis of {x in Z^cols : m x = 0 mod moduli (componentwise)}.

    Returned as a list of basis vectors (each of length cols)."""
    rows, cols = _dims(m)
    if len(moduli) != rows:
        raise InputError("one modulus per row required")
    if any(b < 1 for b in moduli):
        raise InputError("moduli must be positive")
    block = [list(m[i]) + [moduli[i] if k == i else 0 for k in range(rows)] for i in range(rows)]
    kb = kernel_basis(block)
    vecs = [v[:cols] for v in kb]
    if len(vecs) != cols:
        raise InternalConsistencyError("kernel lattice rank mismatch")
    return vecs


def lattice_index(basis: list[list[int]]) -> int:
    """Index of the lattice spanned by the given basis vectors inside Z^n."""
    n = len(basis[0]) if basis else 0
    if len(basis) != n:
        raise InputError("need a square basis")
    mat = [[basis[j][i] for j in range(n)] for i in range(n)]
    diag = snf_diagonal(mat)
    idx = 1
    for d in diag:
        if d == 0:
            raise InputError("basis is singular")
        idx *= d
    return idx


def in_column_span(m: list[list[int]], vec: list[int]) -> bool:
    return solve_integer(m, vec) is not None


def congruences_hold(m: list[list[int]], moduli: list[int], vec: list[int]) -> bool:
    rows, cols = _dims(m)
    for i in range(rows):
        if sum(m[i][j] * vec[j] for j in range(cols)) % moduli[i]:
            return False
    return True
