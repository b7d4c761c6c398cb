"""Exact rank computations over the rationals.

Ranks are decided by fraction-free (Bareiss) elimination on integer matrices.
Rational rows are first scaled to integers, which leaves the rank unchanged.
Tall matrices are replaced by their Gram matrix ``M^T M``, which has the same
rank over the reals and is computed exactly in integer arithmetic.

``modular_rank`` gives a cheap lower bound (rank mod p <= rank over Q): any
set of rows independent mod p is independent over Q.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .exceptions import InvalidParameter

PRIME = 2_147_483_647
_INT64_SAFE = 1 << 62


def _row_to_ints(row) -> list[int]:
    dens = [x.denominator for x in row if isinstance(x, Fraction) and x.denominator != 1]
    if not dens:
        return [int(x) for x in row]
    scale = lcm(*dens)
    return [int(Fraction(x) * scale) for x in row]


def integer_rows(M) -> list[list[int]]:
    if isinstance(M, np.ndarray) and M.dtype.kind in "iu":
        return M.astype(object).tolist()
    return [_row_to_ints(r) for r in M]


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination. Mutates ``rows``."""
    if not rows:
        return 0
    a = rows
    m, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, m):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        p = prow[col]
        for i in range(rank + 1, m):
            row = a[i]
            f = row[col]
            if f:
                for j in range(col + 1, ncols):
                    row[j] = (row[j] * p - f * prow[j]) // prev
            else:
                for j in range(col + 1, ncols):
                    row[j] = (row[j] * p) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def _gram(rows: list[list[int]]) -> list[list[int]]:
    big = max((abs(x) for r in rows for x in r), default=0)
    if len(rows) * big * big < _INT64_SAFE:
        A = np.array(rows, dtype=np.int64)
    else:
        A = np.array(rows, dtype=object)
    return (A.T @ A).tolist()


def rank(M) -> int:
    """Exact rank of a rational (or integer) matrix given as a sequence of rows."""
    rows = integer_rows(M)
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise InvalidParameter("matrix is not rectangular")
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    if len(rows) > ncols:
        rows = _gram(rows)
    return bareiss_rank(rows)


def modular_rank(M, p: int = PRIME) -> int:
    """Rank of an integer matrix modulo the prime ``p``; a lower bound for the rational rank."""
    A = np.array(M, dtype=np.int64) % p
    if A.size == 0:
        return 0
    A = A.copy()
    m, ncols = A.shape
    r = 0
    for col in range(ncols):
        if r == m:
            break
        nz = np.nonzero(A[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, col]), p - 2, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1:, col].copy()
        mask = below != 0
        if mask.any():
            A[r + 1:][mask] = (A[r + 1:][mask] - np.outer(below[mask], A[r]) % p) % p
        r += 1
    return r


def _differences(points) -> list[list]:
    if len(points) == 0:
        raise InvalidParameter("affine rank of an empty point set")
    base = list(points[0])
    d = len(base)
    out = []
    for q in points[1:]:
        if len(q) != d:
            raise InvalidParameter("points of different dimension")
        out.append([a - b for a, b in zip(q, base)])
    return out


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull: the rank of {p_i - p_0}."""
    diffs = _differences(points)
    return rank(diffs) if diffs else 0


def in_affine_hull(y: Sequence, points: Sequence[Sequence]) -> bool:
    if len(points) == 0:
        raise InvalidParameter("affine hull of an empty point set")
    if any(len(q) != len(y) for q in points):
        raise InvalidParameter("dimension mismatch")
    diffs = _differences(points)
    base = points[0]
    extra = [a - b for a, b in zip(y, base)]
    if not any(extra):
        return True
    return rank(diffs + [extra]) == (rank(diffs) if diffs else 0)


def integer_affine_rank_lower_bound(A: np.ndarray) -> int:
    """Modular affine rank of the rows of an integer matrix (certified lower bound)."""
    if A.shape[0] <= 1:
        return 0
    return modular_rank(A[1:] - A[0])


def integer_affine_rank(A: np.ndarray) -> int:
    """Exact affine rank of the rows of an integer numpy matrix."""
    if A.shape[0] <= 1:
        return 0
    D = (A[1:] - A[0]).astype(np.int64)
    D = D[np.any(D != 0, axis=1)]
    if D.shape[0] == 0:
        return 0
    if D.shape[0] > D.shape[1]:
        big = int(np.abs(D).max())
        if D.shape[0] * big * big < _INT64_SAFE:
            G = (D.T @ D).tolist()
        else:
            Do = D.astype(object)
            G = (Do.T @ Do).tolist()
        return bareiss_rank(G)
    return bareiss_rank(D.tolist())
