"""Dense matrices of polynomials: just enough linear algebra for rank <= 8."""

from __future__ import annotations

from .polyring import Polynomial, WeightedRing


def mat_shape(m):
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for row in m:
        if len(row) != cols:
            raise ValueError("ragged matrix")
    return rows, cols


def mat_mul(a, b):
    n, k = mat_shape(a)
    k2, m = mat_shape(b)
    if k != k2:
        raise ValueError("shape mismatch in matrix product")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for l in range(1, k):
                acc = acc + a[i][l] * b[l][j]
            row.append(acc)
        out.append(row)
    return out

def mat_add(a, b):
    n, m = mat_shape(a)
    return [[a[i][j] + b[i][j] for j in range(m)] for i in range(n)]


def mat_neg(a):
    return [[-entry for entry in row] for row in a]


def mat_scale(a, scalar):
    return [[entry * scalar for entry in row] for row in a]


def mat_transpose(a):
    n, m = mat_shape(a)
    return [[a[i][j] for i in range(n)] for j in range(m)]


def mat_identity(ring: WeightedRing, n, scalar=None):
    s = ring.one() if scalar is None else scalar
    zero = ring.zero()
    return [[s if i == j else zero for j in range(n)] for i in range(n)]


def mat_trace(a):
    n, m = mat_shape(a)
    if n != m:
        raise ValueError("trace of a non-square matrix")
    acc = a[0][0]
    for i in range(1, n):
        acc = acc + a[i][i]
    return acc


def mat_det(a) -> Polynomial:
    """Cofactor expansion; fine for the ranks that occur here (<= 8)."""
    n, m = mat_shape(a)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    acc = None
    for j in range(n):
        if a[0][j].is_zero():
            continue
        minor = [[a[i][k] for k in range(n) if k != j] for i in range(1, n)]
        piece = a[0][j] * mat_det(minor)
        if j % 2:
            piece = -piece
        acc = piece if acc is None else acc + piece
    if acc is None:
        ring = a[0][0].ring
        return ring.zero()
    return acc


def mat_adjugate(a):
    """Transpose of cofactors: a * adj(a) = det(a) * Id."""
    n, m = mat_shape(a)
    if n != m:
        raise ValueError("adjugate of a non-square matrix")
    if n == 1:
        return [[a[0][0].ring.one()]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[a[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = mat_det(minor)
            if (i + j) % 2:
                cof = -cof
            out[j][i] = cof
    return out


def mat_equal(a, b) -> bool:
    sa, sb = mat_shape(a), mat_shape(b)
    if sa != sb:
        return False
    return all(a[i][j] == b[i][j] for i in range(sa[0]) for j in range(sa[1]))
