"""Exact integer/rational matrix routines (lists of lists, no floats)."""

from __future__ import annotations

from fractions import Fraction


def det_int(M: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def det(M) -> Fraction:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    result = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if A[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            A[k], A[pivot] = A[pivot], A[k]
            result = -result
        result *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return result


def solve(M, b) -> list[Fraction]:
    """Solve the square nonsingular system M x = b exactly."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(M)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if A[i][k] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        A[k], A[pivot] = A[pivot], A[k]
        inv = 1 / A[k][k]
        A[k] = [x * inv for x in A[k]]
        for i in range(n):
            if i != k and A[i][k]:
                f = A[i][k]
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    return [A[i][n] for i in range(n)]


def inverse(M) -> list[list[Fraction]]:
    n = len(M)
    cols = [solve(M, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matvec(M, v):
    return [sum(a * x for a, x in zip(row, v)) for row in M]


def smith_normal_form(M: list[list[int]]):
    """Smith normal form with unimodular transforms.

    Returns ``(S, U, U_inv, V)`` with ``U @ M @ V == S`` diagonal, nonnegative
    and each diagonal entry dividing the next.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [list(r) for r in M]
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    Ui = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]
        for r in Ui:
            r[src] -= k * r[dst]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in Ui:
            r[i] = -r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_col(dst, src, k):
        for r in A:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            clean = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    clean &= A[i][t] == 0
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    clean &= A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
    return A, U, Ui, V
