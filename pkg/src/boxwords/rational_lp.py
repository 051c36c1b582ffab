"""Dense two-phase simplex over Fractions, for tiny exact feasibility problems.

Solves  maximize c.x  subject to  A x = b,  x >= 0.  Bland's rule is used
throughout, so the method terminates without any tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    x: list[Fraction] | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = T[r][c]
    row = T[r]
    if piv != 1:
        T[r] = row = [a / piv for a in row]
    for i, other in enumerate(T):
        if i != r and other[c] != 0:
            f = other[c]
            T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _simplex(T, basis, allowed: int) -> bool:
    """Run on a tableau whose last row is the reduced objective (to minimize).

    Only the first ``allowed`` columns may enter.  Returns False if unbounded.
    """
    m = len(T) - 1
    while True:
        obj = T[-1]
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return True
        row, best = None, None
        for i in range(m):
            a = T[i][col]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    row, best = i, ratio
        if row is None:
            return False
        _pivot(T, basis, row, col)


def maximize(
    c: Sequence,
    A: Sequence[Sequence],
    b: Sequence,
) -> LPResult:
    m, n = len(A), len(c)
    A = [[Fraction(a) for a in row] for row in A]
    b = [Fraction(v) for v in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-a for a in A[i]]
            b[i] = -b[i]

    # phase 1: artificials n..n+m-1, minimize their sum
    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n):
            obj[j] -= A[i][j]
        obj[-1] -= b[i]
    T.append(obj)
    basis = list(range(n, n + m))
    _simplex(T, basis, n + m)
    if T[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col)
    keep = [i for i in range(m) if basis[i] < n]
    T = [T[i][:n] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # phase 2: minimize -c.x
    obj = [-Fraction(v) for v in c] + [Fraction(0)]
    for i, bv in enumerate(basis):
        f = obj[bv]
        if f != 0:
            obj = [a - f * r for a, r in zip(obj, T[i])]
    T.append(obj)
    if not _simplex(T, basis, n):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = T[i][-1]
    return LPResult(OPTIMAL, sum(Fraction(cj) * xj for cj, xj in zip(c, x)), x)
