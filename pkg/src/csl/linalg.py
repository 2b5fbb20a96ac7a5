"""Small exact linear algebra over Z and Q.

Matrices are plain lists of rows holding ``int`` or ``Fraction`` entries.
Everything here is exact; sizes in this package are tiny (rarely above a
dozen), so straightforward elimination is fine.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DegenerateSurgeryError, DomainError

Matrix = list[list]


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for row in m:
        if len(row) != cols:
            raise DomainError("ragged matrix")
    return rows, cols


def require_square(m) -> int:
    r, c = shape(m)
    if r != c:
        raise DomainError(f"expected a square matrix, got {r}x{c}")
    return r


def is_symmetric(m) -> bool:
    n = require_square(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m) -> Matrix:
    r, c = shape(m)
    return [[m[i][j] for i in range(r)] for j in range(c)]


def matmul(a, b) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb and not (ra == 0 or rb == 0):
        raise DomainError("dimension mismatch in product")
    return [[sum(a[i][k] * b[k][j] for k in range(ca)) for j in range(cb)]
            for i in range(ra)]


def matvec(m, v) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def dot(u, v):
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def det(m) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination; 1 for 0x0."""
    n = require_square(m)
    a = [[Fraction(x) for x in row] for row in m]
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return result


def inverse(m) -> Matrix:
    """Exact inverse; raises :class:`DegenerateSurgeryError` if singular."""
    n = require_square(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise DegenerateSurgeryError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve(m, v) -> list[Fraction]:
    return matvec(inverse(m), [Fraction(x) for x in v])


# -- Smith normal form ---------------------------------------------------------


def smith_normal_form(m) -> tuple[list[int], Matrix, Matrix]:
    """Return ``(d, U, V)`` with ``U @ m @ V`` diagonal with entries ``d``.

    ``U`` and ``V`` are unimodular integer matrices, the ``d_i`` are
    non-negative and each divides the next.  Only square input is needed
    in this package.
    """
    n = require_square(m)
    a = [[int(x) for x in row] for row in m]
    u = identity(n)
    v = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):   # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):   # col_dst += k * col_src
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(n):
        while True:
            # move the smallest nonzero entry of the trailing block to (t, t)
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return [a[i][i] for i in range(n)], u, v
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            done = True
            for i in range(t + 1, n):
                q = a[i][t] // p
                if q:
                    add_row(t, i, -q)
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    add_col(t, j, -q)
                if a[t][j]:
                    done = False
            if not done:
                continue
            # divisibility: fold any offending row into row t and retry
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return [a[i][i] for i in range(n)], u, v


def class_order(m, w) -> int:
    """Order of ``w`` in ``Z^n / m Z^n`` via the Smith form.

    With ``U m V = diag(d)`` the class of ``w`` has coordinates ``U w`` and
    the i-th one has order ``d_i / gcd(d_i, (Uw)_i)``.
    """
    d, u, _ = smith_normal_form(m)
    if any(x == 0 for x in d):
        raise DegenerateSurgeryError("cokernel is infinite")
    uw = matvec(u, [int(x) for x in w])
    order = 1
    for di, x in zip(d, uw):
        o = di // gcd(di, x)
        order = order * o // gcd(order, o)
    return order


# -- lattice reduction -----------------------------------------------------------


def echelon_lattice_basis(m) -> list[list[int]]:
    """Basis ``b_0..b_{n-1}`` of the column lattice of ``m`` with ``b_k``
    supported on coordinates ``0..k`` and ``b_k[k] > 0``.

    Coordinates are cleared from the last one down, so a vector reduced
    against this basis is pushed towards the low indices.
    """
    n = require_square(m)
    pool = [[int(m[i][j]) for i in range(n)] for j in range(n)]
    basis: list[list[int] | None] = [None] * n
    for k in range(n - 1, -1, -1):
        live = [vec for vec in pool if vec[k]]
        pool = [vec for vec in pool if not vec[k]]
        if not live:
            raise DegenerateSurgeryError("matrix is singular")
        while len(live) > 1:
            live.sort(key=lambda vec: abs(vec[k]))
            head = live[0]
            rest = []
            for vec in live[1:]:
                q = vec[k] // head[k]
                vec = [x - q * y for x, y in zip(vec, head)]
                if vec[k]:
                    rest.append(vec)
                elif any(vec):
                    pool.append(vec)
            live = [head] + rest
        b = live[0]
        if b[k] < 0:
            b = [-x for x in b]
        basis[k] = b
    return basis  # type: ignore[return-value]


def reduce_mod_lattice(v, basis) -> list[int]:
    """Canonical representative of ``v`` modulo an echelon lattice basis:
    coordinate ``k`` ends up in ``[0, b_k[k])``."""
    v = [int(x) for x in v]
    for k in range(len(v) - 1, -1, -1):
        b = basis[k]
        q = v[k] // b[k]
        if q:
            v = [x - q * y for x, y in zip(v, b)]
    return v


# -- signature -------------------------------------------------------------------


def inertia(m) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` counts for a symmetric matrix.

    Congruence diagonalisation over Q.  At each step the diagonal entry of
    largest absolute value is used as pivot; if the remaining diagonal is
    all zero but some off-diagonal entry ``a_ij`` is not, the 2x2 block on
    ``i, j`` is hyperbolic (one positive, one negative direction) and is
    split off by its Schur complement.
    """
    n = require_square(m)
    if not is_symmetric(m):
        raise DomainError("matrix is not symmetric")
    a = [[Fraction(x) for x in row] for row in m]
    idx = list(range(n))
    pos = neg = 0
    while idx:
        i = max(idx, key=lambda k: (abs(a[k][k]), -k))
        if a[i][i] != 0:
            p = a[i][i]
            if p > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(i)
            for r in idx:
                f = a[r][i] / p
                if f:
                    for c in idx:
                        a[r][c] -= f * a[i][c]
            continue
        pair = next(((r, c) for r in idx for c in idx if r < c and a[r][c] != 0), None)
        if pair is None:
            break
        r0, c0 = pair
        pos += 1
        neg += 1
        idx.remove(r0)
        idx.remove(c0)
        # block B = [[0, b], [b, 0]], B^-1 = [[0, 1/b], [1/b, 0]]
        b = a[r0][c0]
        for r in idx:
            for c in idx:
                a[r][c] -= (a[r][r0] * a[c0][c] + a[r][c0] * a[r0][c]) / b
    return pos, neg, n - pos - neg


def signature(m) -> int:
    pos, neg, _ = inertia(m)
    return pos - neg
