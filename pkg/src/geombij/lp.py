"""Exact rational feasibility for systems A x >= b with free x.

Phase-1 simplex with Bland's rule over Fractions.  Infeasible systems come
back with a Farkas certificate y >= 0, y^T A = 0, y^T b > 0 read off the
final reduced costs of the artificial columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    x: tuple[Fraction, ...] | None = None
    y: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.feasible


def solve_feasibility(A, b) -> Feasibility:
    """Decide whether A x >= b has a real solution.

    Variables are split x = p - q; each row gets a surplus s and an
    artificial r so the start basis is r.  Rows with negative b are negated
    first, which flips their surplus sign but keeps r feasible.
    """
    k = len(A)
    t = len(A[0]) if k else 0
    if k == 0:
        return Feasibility(True, x=tuple(Fraction(0) for _ in range(t)))
    ncols = 2 * t + 2 * k
    art0 = 2 * t + k
    rows = []
    rhs = []
    flip = []
    for i, (row, bi) in enumerate(zip(A, b)):
        sgn = -1 if bi < 0 else 1
        flip.append(sgn)
        r = [Fraction(0)] * ncols
        for j, a in enumerate(row):
            r[j] = Fraction(sgn * a)
            r[t + j] = Fraction(-sgn * a)
        r[2 * t + i] = Fraction(-sgn)
        r[art0 + i] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(sgn * bi))
    basis = [art0 + i for i in range(k)]
    cost = [Fraction(0)] * art0 + [Fraction(1)] * k

    def reduced(j):
        return cost[j] - sum(cost[basis[i]] * rows[i][j] for i in range(k))

    while True:
        entering = next((j for j in range(ncols) if reduced(j) < 0), None)
        if entering is None:
            break
        best = None
        for i in range(k):
            a = rows[i][entering]
            if a > 0:
                key = (rhs[i] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        # phase 1 is bounded below by 0, so a pivot row always exists
        i = best[1]
        piv = rows[i][entering]
        rows[i] = [x / piv for x in rows[i]]
        rhs[i] /= piv
        for r in range(k):
            f = rows[r][entering]
            if r != i and f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[i])]
                rhs[r] -= f * rhs[i]
        basis[i] = entering

    value = sum(cost[basis[i]] * rhs[i] for i in range(k))
    if value == 0:
        vals = [Fraction(0)] * ncols
        for i, j in enumerate(basis):
            vals[j] = rhs[i]
        return Feasibility(True, x=tuple(vals[j] - vals[t + j] for j in range(t)))
    # dual of the phase-1 problem, mapped back through the row negations
    y = tuple(flip[i] * (cost[art0 + i] - reduced(art0 + i)) for i in range(k))
    return Feasibility(False, y=y)


def integral_certificate(y) -> tuple[int, ...]:
    """Scale a rational certificate to integers by clearing denominators."""
    den = lcm(*(Fraction(v).denominator for v in y)) if y else 1
    return tuple(int(Fraction(v) * den) for v in y)
