"""Exact rational simplex for the small LPs behind the fractional solvers.

Solves max{c.x : Ax <= b, x >= 0} with b >= 0, so the all-slack basis is
feasible and no phase one is needed (every covering/matching LP in this
package has that shape).  Pivoting is Dantzig's rule with a permanent switch
to Bland's rule after a degenerate stall, which keeps the method anti-cycling
while staying fast on non-degenerate instances; all tie-breaks are by lowest
index, so runs are deterministic.

Arithmetic is exact.  Internally gmpy2.mpq is used when available (about an
order of magnitude faster than fractions.Fraction); results are returned as
Fraction either way, and both primal and dual solutions are re-verified
against the input data before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _Q = Fraction

_ZERO = _Q(0)
_ONE = _Q(1)

# pivots without strict objective improvement tolerated before switching to
# Bland's rule (any finite threshold preserves the termination guarantee)
_STALL_LIMIT = 64


class SimplexError(RuntimeError):
    """Internal inconsistency: produced solutions failed re-verification."""


@dataclass(frozen=True)
class LPSolution:
    """Optimal value with mutually certifying primal and dual solutions."""

    value: Fraction
    primal: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]
    pivots: int


def solve_lp_max(A, b, c) -> LPSolution:
    """Maximize c.x subject to Ax <= b, x >= 0 (b >= 0 required).

    Returns the exact optimum, an optimal primal vector, and an optimal dual
    vector y (min y.b s.t. yA >= c, y >= 0) with c.x == y.b verified.
    Raises SimplexError if the LP is unbounded or verification fails.
    """
    m = len(A)
    n = len(c)
    b = [_Q(v) for v in b]
    c = [_Q(v) for v in c]
    for i, bi in enumerate(b):
        if bi < 0:
            raise ValueError(f"b[{i}] = {bi} < 0: all-slack start infeasible")
    if n == 0:
        return LPSolution(Fraction(0), (), tuple(Fraction(0) for _ in range(m)), 0)

    width = n + m + 1
    rows: list[list] = []
    for i in range(m):
        row = [_Q(v) for v in A[i]]
        if len(row) != n:
            raise ValueError(f"A[{i}] has {len(row)} entries, expected {n}")
        row.extend(_ONE if j == i else _ZERO for j in range(m))
        row.append(b[i])
        rows.append(row)
    obj = [-cj for cj in c] + [_ZERO] * m + [_ZERO]

    basis = list(range(n, n + m))
    pivots = 0
    stall = 0
    bland = False

    while True:
        if bland:
            col = next((j for j in range(n + m) if obj[j] < 0), -1)
        else:
            col = -1
            best = _ZERO
            for j in range(n + m):
                v = obj[j]
                if v < best:
                    best = v
                    col = j
        if col < 0:
            break

        # ratio test; ties by lowest basic-variable index (Bland-compatible)
        row_idx = -1
        best_ratio = None
        for i in range(m):
            a = rows[i][col]
            if a > 0:
                ratio = rows[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[row_idx])
                ):
                    best_ratio = ratio
                    row_idx = i
        if row_idx < 0:
            raise SimplexError("LP is unbounded")

        old_value = obj[-1]
        piv_row = rows[row_idx]
        piv = piv_row[col]
        if piv != _ONE:
            inv = _ONE / piv
            rows[row_idx] = piv_row = [v * inv for v in piv_row]
        for i in range(m):
            if i == row_idx:
                continue
            f = rows[i][col]
            if f:
                r = rows[i]
                rows[i] = [x - f * y for x, y in zip(r, piv_row)]
        f = obj[col]
        if f:
            obj = [x - f * y for x, y in zip(obj, piv_row)]
        basis[row_idx] = col
        pivots += 1

        if obj[-1] == old_value:
            stall += 1
            if stall > _STALL_LIMIT:
                bland = True
        else:
            stall = 0

    primal = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            primal[var] = Fraction(rows[i][-1])
    dual = [Fraction(obj[n + i]) for i in range(m)]
    value = Fraction(obj[-1])

    _verify(A, b, c, primal, dual, value)
    return LPSolution(value, tuple(primal), tuple(dual), pivots)


def _verify(A, b, c, primal, dual, value) -> None:
    m, n = len(A), len(primal)
    if any(x < 0 for x in primal) or any(y < 0 for y in dual):
        raise SimplexError("negative component in returned solution")
    for i in range(m):
        lhs = sum(Fraction(A[i][j]) * primal[j] for j in range(n))
        if lhs > Fraction(b[i]):
            raise SimplexError(f"primal violates constraint {i}")
    for j in range(n):
        lhs = sum(dual[i] * Fraction(A[i][j]) for i in range(m))
        if lhs < Fraction(c[j]):
            raise SimplexError(f"dual violates constraint {j}")
    cx = sum(Fraction(c[j]) * primal[j] for j in range(n))
    yb = sum(dual[i] * Fraction(b[i]) for i in range(m))
    if not (cx == yb == value):
        raise SimplexError(f"duality gap: c.x={cx}, y.b={yb}, value={value}")
