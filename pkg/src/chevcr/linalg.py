"""Exact Gaussian elimination over K = F_q(t)."""

from __future__ import annotations


def row_reduce(rows):
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inv()
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def rank(rows):
    return len(row_reduce(rows)[1])


def nullspace(rows, n, field):
    """Basis of {v : rows . v = 0} for vectors of length n."""
    if not rows:
        return [[field.one() if i == j else field.zero() for i in range(n)] for j in range(n)]
    R, pivots = row_reduce(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero()] * n
        v[f] = field.one()
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def det(M):
    A = [list(r) for r in M]
    n = len(A)
    field = A[0][0].field
    d = field.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if not A[i][c].is_zero()), None)
        if piv is None:
            return field.zero()
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d = d * A[c][c]
        inv = A[c][c].inv()
        for i in range(c + 1, n):
            f = A[i][c] * inv
            if not f.is_zero():
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d
