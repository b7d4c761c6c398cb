from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cardpoly.linalg import (affine_rank, bareiss_rank, in_affine_hull, integer_affine_rank,
                             integer_affine_rank_lower_bound, modular_rank, rank)
from cardpoly.model import build_complete_digraph, enumerate_cycles

small_ints = st.integers(-4, 4)
matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=5)


def sympy_rank(M):
    return sympy.Matrix(M).rank()


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([]) == 0


def node_absence_rows(n):
    """Rows (x, y) of the lifted incidence matrix, y_i = 1 when node i is not visited."""
    D = build_complete_digraph(n)

    def row(walk):
        x = [0] * len(D.arcs)
        for a, b in zip(walk, walk[1:] + walk[:1]):
            x[D.arc_index(a, b)] = 1
        return x + [0 if i in walk else 1 for i in D.nodes]

    rows = [row(v.walk) for v in enumerate_cycles(D, (n,))]
    rows.append(row((2, 3)))
    rows += [row((1, i)) for i in range(2, n + 1)]
    return rows


def test_block_matrix_rank_n5():
    Z = node_absence_rows(5)
    assert rank(Z) == 5 * 5 - 2 * 5 + 2 == 17
    assert sympy_rank(Z) == 17


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_sympy(M):
    assert rank(M) == sympy_rank(M)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_transpose(M):
    assert rank(M) == rank(np.array(M, dtype=object).T.tolist())


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_modular_rank_is_lower_bound(M):
    assert modular_rank(M) <= rank(M)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=5))
def test_rational_rank_matches_sympy(M):
    assert rank(M) == sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in M]).rank()


def test_bareiss_wide_and_tall():
    tall = [[1, 2], [2, 4], [3, 6], [0, 1]]
    assert bareiss_rank([r[:] for r in tall]) == 2
    wide = [[1, 2, 3, 4, 5], [2, 4, 6, 8, 10]]
    assert bareiss_rank([r[:] for r in wide]) == 1


def test_affine_rank_examples():
    assert affine_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 2
    assert affine_rank([[3, 1, 4]]) == 0


def test_affine_rank_jumps_for_new_coordinate_sum():
    pts = [[1, 1, 0, 0], [1, 0, 1, 0], [0, 1, 1, 0]]
    y = [1, 1, 1, 0]
    assert affine_rank(pts + [y]) == affine_rank(pts) + 1
    assert not in_affine_hull(y, pts)


def test_in_affine_hull_examples():
    p1, p2 = [1, 0, 2], [3, 4, 0]
    mid = [Fraction(a + b, 2) for a, b in zip(p1, p2)]
    assert in_affine_hull(mid, [p1, p2])
    assert in_affine_hull(p1, [p1, p2])
    assert not in_affine_hull([0, 0, 0], [p1, p2])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=1, max_size=6),
       st.lists(small_ints, min_size=4, max_size=4))
def test_affine_rank_translation_invariant(pts, t):
    shifted = [[a + b for a, b in zip(p, t)] for p in pts]
    assert affine_rank(pts) == affine_rank(shifted)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 3), min_size=4, max_size=4), min_size=1, max_size=6),
       st.integers(1, 6))
def test_hyperplane_affine_vs_linear(pts, k):
    # put every point on 1^T x = k by adjusting a last coordinate
    pts = [p + [k - sum(p)] for p in pts]
    independent = rank(pts) == len(pts)
    assert (affine_rank(pts) + 1 == rank(pts)) and (independent == (affine_rank(pts) + 1 == len(pts)))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=6, max_size=6), min_size=1, max_size=8))
def test_integer_affine_rank(pts):
    A = np.array(pts, dtype=np.int64)
    exact = integer_affine_rank(A)
    assert exact == affine_rank(pts)
    assert integer_affine_rank_lower_bound(A) <= exact
