"""Lifting path inequalities to the cycle polytope and deorienting symmetric inequalities."""
from __future__ import annotations

from fractions import Fraction

from .exceptions import InvalidParameter
from .inequalities import LinearInequality, symmetrize
from .model import as_sequence, build_complete_digraph, build_complete_graph, build_path_digraph, enumerate_cycles


def lift_path_to_cycle(ineq: LinearInequality, c) -> LinearInequality:
    """Lift an inequality of the path polytope on D~_n to the cycle polytope on D_n.

    Node n of D_n stands for both 0 and n of the path digraph: arc (0,i) becomes (n,i)
    and (i,n) stays.  Every arc leaving n additionally gets gamma - alpha_0, where gamma
    is the largest value of alpha over feasible cycles on the internal nodes.
    """
    if ineq.kind != "path":
        raise InvalidParameter("lifting needs an inequality over the path digraph")
    if ineq.sense == "=":
        raise InvalidParameter("equations cannot be lifted")
    c = as_sequence(c, cycle=True)
    if c.m < 2:
        raise InvalidParameter("lifting needs at least two cardinalities")
    n = ineq.n
    P = build_path_digraph(n)
    alpha, alpha0 = ineq.as_le()
    coef = dict(zip(P.arcs, alpha))
    usable = [k for k in c if k <= n - 1]
    if not usable:
        raise InvalidParameter(f"no cycle of cardinality in {c} fits on {n - 1} internal nodes")
    inner = build_complete_digraph(n - 1)
    gamma = None
    for cyc in enumerate_cycles(inner, usable):
        walk = cyc.walk
        val = sum((coef[(a, b)] for a, b in zip(walk, walk[1:] + walk[:1])), Fraction(0))
        gamma = val if gamma is None else max(gamma, val)
    D = build_complete_digraph(n)
    out = []
    for (i, j) in D.arcs:
        if i == n:
            out.append(coef[(0, j)] + gamma - alpha0)
        else:
            out.append(coef[(i, j)])
    return LinearInequality("cycle", n, tuple(out), "<=", gamma)


def deorient(ineq: LinearInequality) -> LinearInequality:
    """Undirected counterpart of a symmetric (cycle) or pseudo-symmetric (path) inequality."""
    n = ineq.n
    if ineq.kind == "cycle":
        coef = dict(zip(build_complete_digraph(n).arcs, ineq.coeffs))
        for (i, j), a in coef.items():
            if i < j and a != coef[(j, i)]:
                raise InvalidParameter(f"inequality is not symmetric on arcs ({i},{j}), ({j},{i})")
        G = build_complete_graph(n, path=False)
        return LinearInequality("ucycle", n, tuple(coef[e] for e in G.arcs), ineq.sense, ineq.rhs)
    if ineq.kind == "path":
        coef = dict(zip(build_path_digraph(n).arcs, ineq.coeffs))
        for (i, j), a in coef.items():
            if 0 < i < j < n and a != coef[(j, i)]:
                raise InvalidParameter(f"inequality is not pseudo-symmetric on arcs ({i},{j}), ({j},{i})")
        G = build_complete_graph(n, path=True)
        vals = []
        for (i, j) in G.arcs:
            vals.append(Fraction(0) if (i, j) == (0, n) else coef[(i, j)])
        return LinearInequality("upath", n, tuple(vals), ineq.sense, ineq.rhs)
    raise InvalidParameter("deorientation needs a directed inequality")


def undirected_counterpart(ineq: LinearInequality) -> LinearInequality | None:
    """Symmetrize (or pseudo-symmetrize) and deorient; None when no symmetric form exists."""
    mode = "symmetric" if ineq.kind == "cycle" else "pseudo_symmetric"
    sym = symmetrize(ineq, mode)
    return None if sym is None else deorient(sym)


def undirected_walk_vector(G, walk, closed: bool) -> tuple[int, ...]:
    """Edge incidence vector of a directed walk read as an undirected one."""
    vec = [0] * len(G.arcs)
    steps = list(zip(walk, walk[1:]))
    if closed:
        steps.append((walk[-1], walk[0]))
    for u, v in steps:
        vec[G.arc_index(u, v)] = 1
    return tuple(vec)
