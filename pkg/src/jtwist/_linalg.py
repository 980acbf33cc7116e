"""Tiny exact linear algebra over the rationals (row reduction only)."""
from __future__ import annotations

from .scalars import Q, ZERO, ONE


def rref(rows):
    """Reduced row echelon form of a list of rational rows.

    Returns ``(matrix, pivot_columns)``; the input is not modified.
    """
    m = [[Q(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def solve(columns, target):
    """Coefficients ``c`` with ``sum_i c[i] * columns[i] == target``, or None.

    ``columns`` is a list of vectors of equal length.  When the columns are
    dependent, any particular solution is returned.
    """
    n = len(columns)
    dim = len(target)
    aug = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(dim)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    sol = [ZERO] * n
    for row, col in zip(red, pivots):
        sol[col] = row[n]
    return sol
