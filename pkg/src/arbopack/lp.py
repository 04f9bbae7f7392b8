"""Exact rational LP: dense two-phase simplex with Bland's rule.

Small and deterministic: every entry is a fractions.Fraction, pivoting is
Bland's rule (guaranteed termination), and solutions returned are basic,
i.e. vertices of the feasible polyhedron.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    status: str
    x: Optional[list] = None
    objective: Optional[Fraction] = None


def solve_lp(c: Sequence, rows: Sequence[tuple[Sequence, str, object]]) -> LpResult:
    """Minimize c.x subject to rows (coeffs, sense, rhs) and x >= 0.

    sense is one of '<=', '>=', '='.  Upper bounds on variables must be
    supplied as ordinary rows.
    """
    n = len(c)
    c = [Fraction(v) for v in c]
    norm: list[tuple[list, str, Fraction]] = []
    for coeffs, sense, rhs in rows:
        coeffs = [Fraction(v) for v in coeffs]
        rhs = Fraction(rhs)
        if rhs < 0:  # keep rhs non-negative for phase 1
            coeffs = [-v for v in coeffs]
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
        norm.append((coeffs, sense, rhs))

    m = len(norm)
    # columns: n structural, then one slack/surplus per inequality, then
    # one artificial per '>='/'=' row
    slack_cols: dict[int, int] = {}
    art_cols: dict[int, int] = {}
    ncols = n
    for i, (_, sense, _) in enumerate(norm):
        if sense in ("<=", ">="):
            slack_cols[i] = ncols
            ncols += 1
    for i, (_, sense, _) in enumerate(norm):
        if sense in (">=", "="):
            art_cols[i] = ncols
            ncols += 1

    T = [[Fraction(0)] * (ncols + 1) for _ in range(m)]
    basis = [0] * m
    for i, (coeffs, sense, rhs) in enumerate(norm):
        for j in range(n):
            T[i][j] = coeffs[j]
        T[i][-1] = rhs
        if sense == "<=":
            T[i][slack_cols[i]] = Fraction(1)
            basis[i] = slack_cols[i]
        elif sense == ">=":
            T[i][slack_cols[i]] = Fraction(-1)
            T[i][art_cols[i]] = Fraction(1)
            basis[i] = art_cols[i]
        else:
            T[i][art_cols[i]] = Fraction(1)
            basis[i] = art_cols[i]

    def pivot(row: int, col: int) -> None:
        inv = T[row][col]
        T[row] = [v / inv for v in T[row]]
        for i in range(m):
            if i != row and T[i][col] != 0:
                f = T[i][col]
                T[i] = [a - f * b for a, b in zip(T[i], T[row])]
        basis[row] = col

    def run_simplex(obj: list, allowed: set) -> str:
        while True:
            # reduced costs: z_j - c_j via basis costs
            red = list(obj)
            for i in range(m):
                cb = obj[basis[i]]
                if cb != 0:
                    for j in range(ncols):
                        red[j] -= cb * T[i][j]
            col = next((j for j in sorted(allowed)
                        if j not in basis and red[j] < 0), None)
            if col is None:
                return OPTIMAL
            ratios = [(T[i][-1] / T[i][col], basis[i], i)
                      for i in range(m) if T[i][col] > 0]
            if not ratios:
                return UNBOUNDED
            _, _, row = min(ratios)  # Bland: smallest ratio, then smallest basis var
            pivot(row, col)

    if art_cols:
        phase1 = [Fraction(0)] * ncols
        for col in art_cols.values():
            phase1[col] = Fraction(1)
        run_simplex(phase1, set(range(ncols)))
        total = sum(T[i][-1] for i in range(m) if basis[i] in art_cols.values())
        if total != 0:
            return LpResult(INFEASIBLE)
        # drive remaining artificials out of the basis where possible
        for i in range(m):
            if basis[i] in art_cols.values():
                col = next((j for j in range(ncols)
                            if j not in art_cols.values() and T[i][j] != 0), None)
                if col is not None:
                    pivot(i, col)

    allowed = set(range(ncols)) - set(art_cols.values())
    phase2 = [Fraction(0)] * ncols
    for j in range(n):
        phase2[j] = c[j]
    status = run_simplex(phase2, allowed)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][-1]
    obj_val = sum(c[j] * x[j] for j in range(n))
    return LpResult(OPTIMAL, x=x, objective=obj_val)
