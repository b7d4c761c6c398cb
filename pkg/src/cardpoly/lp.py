"""Exact linear programming: two-phase primal simplex with Bland's rule.

The tableau is kept fraction free (integer-preserving pivoting): all entries are
integers equal to a common denominator ``d`` times the true values, and each pivot
divides exactly by the previous pivot element.  Both objective rows are carried from
the start so every update stays exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .exceptions import InvalidParameter
from .inequalities import LinearInequality

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _as_row(con, nvars):
    if isinstance(con, LinearInequality):
        coeffs, sense, rhs = con.coeffs, con.sense, con.rhs
    else:
        coeffs, sense, rhs = con
    if len(coeffs) != nvars:
        raise InvalidParameter("constraint length does not match the objective")
    if sense not in ("<=", ">=", "="):
        raise InvalidParameter(f"unknown sense {sense!r}")
    coeffs = [Fraction(a) for a in coeffs]
    rhs = Fraction(rhs)
    scale = lcm(*(a.denominator for a in coeffs), rhs.denominator)
    return [int(a * scale) for a in coeffs], sense, int(rhs * scale)


class _Tableau:
    def __init__(self, rows, nvars):
        m = len(rows)
        self.nvars = nvars
        slack_cols = []
        for i, (_, sense, _) in enumerate(rows):
            if sense != "=":
                slack_cols.append(i)
        nslack = len(slack_cols)
        slack_of = {i: nvars + k for k, i in enumerate(slack_cols)}
        # a row gets an artificial unless its slack can start in the basis
        basis = [None] * m
        A = []
        for i, (a, sense, b) in enumerate(rows):
            row = list(a) + [0] * nslack
            if sense == "<=":
                row[slack_of[i]] = 1
            elif sense == ">=":
                row[slack_of[i]] = -1
            if b < 0:
                row = [-v for v in row]
                b = -b
            if sense != "=" and row[slack_of[i]] == 1:
                basis[i] = slack_of[i]
            A.append(row + [b])
        art_rows = [i for i in range(m) if basis[i] is None]
        self.first_art = nvars + nslack
        ncols = self.first_art + len(art_rows)
        T = np.zeros((m, ncols + 1), dtype=object)
        for i, row in enumerate(A):
            T[i, :self.first_art] = row[:-1]
            T[i, -1] = row[-1]
        for k, i in enumerate(art_rows):
            T[i, self.first_art + k] = 1
            basis[i] = self.first_art + k
        self.T = T
        self.basis = basis
        self.d = 1
        self.ncols = ncols
        # phase one minimizes the artificial sum; reduced costs relative to the start basis
        r1 = np.zeros(ncols + 1, dtype=object)
        for i in art_rows:
            r1[:self.first_art] -= T[i, :self.first_art]
            r1[-1] -= T[i, -1]
        self.r1 = r1
        self.r2 = np.zeros(ncols + 1, dtype=object)
        self.pivots = 0

    def set_objective(self, c: Sequence[int]):
        self.r2[:len(c)] = c

    def pivot(self, r, s):
        T, d = self.T, self.d
        p = T[r, s]
        col = T[:, s].copy()
        prow = T[r].copy()
        T[:] = (T * p - np.outer(col, prow)) // d
        T[r] = prow
        for name in ("r1", "r2"):
            R = getattr(self, name)
            setattr(self, name, (R * p - R[s] * prow) // d)
        self.d = p
        if p < 0:
            self.T = -self.T
            self.r1 = -self.r1
            self.r2 = -self.r2
            self.d = -p
        self.basis[r] = s
        self.pivots += 1

    def run(self, which, allowed):
        """Bland's rule on objective row ``which``; returns False if unbounded."""
        while True:
            R = getattr(self, which)
            s = next((j for j in range(allowed) if R[j] < 0), None)
            if s is None:
                return True
            col = self.T[:, s]
            best = None
            for i in range(self.T.shape[0]):
                if col[i] > 0:
                    if best is None:
                        best = i
                        continue
                    lhs = self.T[i, -1] * col[best]
                    rhs = self.T[best, -1] * col[i]
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best is None:
                return False
            self.pivot(best, s)

    def drive_out_artificials(self):
        keep = []
        for i in range(self.T.shape[0]):
            if self.basis[i] >= self.first_art:
                j = next((j for j in range(self.first_art) if self.T[i, j] != 0), None)
                if j is None:
                    continue  # redundant row
                self.pivot(i, j)
            keep.append(i)
        self.T = self.T[keep]
        self.basis = [self.basis[i] for i in keep]

    def solution(self):
        x = [Fraction(0)] * self.nvars
        for i, b in enumerate(self.basis):
            if b < self.nvars:
                x[b] = Fraction(self.T[i, -1], self.d)
        return tuple(x)


def lp_solve(constraints, objective: Sequence, *, maximize: bool = False, upper_bounds: bool = True) -> LPResult:
    """Optimize ``objective`` over the constraints and 0 <= x (<= 1 when ``upper_bounds``)."""
    nvars = len(objective)
    rows = [_as_row(c, nvars) for c in constraints]
    if upper_bounds:
        for j in range(nvars):
            e = [0] * nvars
            e[j] = 1
            rows.append((e, "<=", 1))
    obj = [Fraction(v) for v in objective]
    if maximize:
        obj = [-v for v in obj]
    scale = lcm(*(v.denominator for v in obj)) if obj else 1
    cost = [int(v * scale) for v in obj]
    if not rows:
        if any(v < 0 for v in cost):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in obj))
    tab = _Tableau(rows, nvars)
    tab.set_objective(cost)
    tab.run("r1", tab.ncols)
    if tab.r1[-1] != 0:
        return LPResult(INFEASIBLE, pivots=tab.pivots)
    tab.drive_out_artificials()
    if not tab.run("r2", tab.first_art):
        return LPResult(UNBOUNDED, pivots=tab.pivots)
    x = tab.solution()
    value = sum((a * b for a, b in zip(objective, x)), Fraction(0))
    return LPResult(OPTIMAL, Fraction(value), x, tab.pivots)
