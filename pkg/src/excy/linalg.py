"""Exact integer/rational matrix routines.

Two independent routes to an inverse: the closed form for loop matrices and
a fraction-free (Bareiss) Gauss-Jordan elimination that works for any
nonsingular integer matrix. Matrices are tuples of row tuples; rational
results are gmpy2 ``mpq`` values, which compare equal to ``Fraction``.
"""

from gmpy2 import mpq, mpz

from .errors import SingularMatrixError


def _as_rows(m):
    # gmpy2 integers: the entries get far too large for CPython's multiplication
    rows = [[mpz(x) for x in r] for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    return rows, n


def loop_matrix(e):
    """k x k matrix with diagonal e, ones on the superdiagonal and in the corner."""
    k = len(e)
    return tuple(tuple(e[i] if j == i else (1 if j == (i + 1) % k else 0)
                       for j in range(k)) for i in range(k))


def loop_adjugate(e):
    """Return (det, C) with the loop matrix inverse equal to C / det, k odd.

    Entry (i, j) of C is (-1)^d times the product of the k-1-d exponents
    following column j cyclically, where d = (j - i) mod k.
    """
    k = len(e)
    if k < 3 or k % 2 == 0:
        raise ValueError(f"closed-form loop inverse needs odd size >= 3, got {k}")
    e = [mpz(x) for x in e]
    det = mpz(1)
    for x in e:
        det *= x
    det += 1
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            d = (j - i) % k
            p = mpz(1)
            for t in range(k - 1 - d):
                p *= e[(j + 1 + t) % k]
            row.append(-p if d % 2 else p)
        rows.append(tuple(row))
    return det, tuple(rows)


def loop_inverse(e):
    """Closed-form inverse of the loop matrix with diagonal ``e`` (odd length)."""
    det, c = loop_adjugate(e)
    return tuple(tuple(mpq(x, det) for x in row) for row in c)


def determinant(m):
    """Determinant by Bareiss fraction-free elimination."""
    a, n = _as_rows(m)
    sign, prev = 1, 1
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            f = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - f * a[k][j]) // prev
        prev = a[k][k]
    return int(sign * prev) if n else 1


def rational_inverse_oracle(m):
    """Exact inverse by fraction-free Gauss-Jordan elimination on [M | I].

    All intermediate entries stay integers (they are minors of the
    augmented matrix), so each division by the previous pivot is exact.
    """
    a, n = _as_rows(m)
    for i, row in enumerate(a):
        row.extend(1 if j == i else 0 for j in range(n))
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        if p != k:
            a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        for i in range(n):
            if i == k:
                continue
            f = a[i][k]
            row = a[i]
            for j in range(2 * n):
                num = piv * row[j] - f * a[k][j]
                q, r = divmod(num, prev)
                assert r == 0, "Bareiss step left a remainder"
                row[j] = q
        prev = piv
    return tuple(tuple(mpq(a[i][n + j], a[i][i]) for j in range(n))
                 for i in range(n))


def matmul(x, y):
    return tuple(tuple(sum(x[i][t] * y[t][j] for t in range(len(y)))
                       for j in range(len(y[0]))) for i in range(len(x)))


def transpose(m):
    return tuple(zip(*m))
