"""Inequality classes for cardinality constrained path and cycle polytopes.

Every generator takes the owning graph first and returns a :class:`LinearInequality`
whose coefficient vector follows the graph's frozen arc order.  The variant of an
inequality (directed path, directed cycle, undirected path, undirected cycle) is
taken from the graph kind.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .exceptions import InvalidParameter
from .model import CardinalitySequence, Graph, as_sequence, build_graph

SENSES = ("<=", ">=", "=")

TAGS = (
    "flow", "degree", "nonneg", "cardinality_bound_lo", "cardinality_bound_hi",
    "cf_node", "cf_arc", "card_subgraph", "one_sided_min_cut", "min_cut",
    "multi_cycle_excl", "odd_excl", "even_excl", "modified_cf", "custom",
)

_SET_PARAMS = ("W", "S", "T", "P", "Q")


def _freeze_params(params: Mapping) -> tuple:
    out = []
    for key in sorted(params):
        val = params[key]
        if key in _SET_PARAMS:
            val = tuple(sorted(val))
        elif key == "F":
            val = tuple(sorted(tuple(a) for a in val))
        elif key == "arc":
            val = tuple(val)
        out.append((key, val))
    return tuple(out)


@dataclass(frozen=True)
class LinearInequality:
    kind: str
    n: int
    coeffs: tuple[Fraction, ...]
    sense: str
    rhs: Fraction
    tag: str = "custom"
    params: tuple = ()
    c: tuple[int, ...] | None = None
    valid: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.sense not in SENSES:
            raise InvalidParameter(f"unknown sense {self.sense!r}")
        if self.tag not in TAGS:
            raise InvalidParameter(f"unknown class tag {self.tag!r}")

    @property
    def param(self) -> dict:
        return dict(self.params)

    @property
    def graph(self) -> Graph:
        return build_graph(self.kind, self.n)

    def lhs(self, x: Sequence) -> Fraction:
        return sum((a * xi for a, xi in zip(self.coeffs, x) if a and xi), Fraction(0))

    def violation(self, x: Sequence) -> Fraction:
        """Positive iff ``x`` violates the inequality; the amount is the constraint excess."""
        v = self.lhs(x)
        if self.sense == "<=":
            return v - self.rhs
        if self.sense == ">=":
            return self.rhs - v
        return abs(v - self.rhs)

    def satisfied(self, x: Sequence) -> bool:
        return self.violation(x) <= 0

    def is_tight(self, x: Sequence) -> bool:
        return self.lhs(x) == self.rhs

    def as_le(self) -> tuple[tuple[Fraction, ...], Fraction]:
        """Coefficients and right-hand side of the equivalent ``<=`` form."""
        if self.sense == ">=":
            return tuple(-a for a in self.coeffs), -self.rhs
        return self.coeffs, self.rhs

    def integer_form(self) -> tuple[list[int], int]:
        """Coefficients and rhs scaled by a positive integer so that all are integral."""
        scale = lcm(*(Fraction(a).denominator for a in self.coeffs), Fraction(self.rhs).denominator)
        return [int(a * scale) for a in self.coeffs], int(self.rhs * scale)

    def key(self) -> tuple:
        """Deduplication key: class plus canonical parameters, or the explicit data."""
        if self.tag == "custom":
            return (self.kind, self.n, self.tag, self.coeffs, self.sense, self.rhs)
        return (self.kind, self.n, self.tag, self.params, self.c)

    def describe(self) -> str:
        D = self.graph
        var = "x" if D.directed else "y"
        terms = []
        for a, arc in zip(self.coeffs, D.arcs):
            if a:
                terms.append(f"{'+' if a > 0 else '-'}{'' if abs(a) == 1 else abs(a)}{var}{arc[0]},{arc[1]}")
        body = " ".join(terms) if terms else "0"
        return f"{body} {self.sense} {self.rhs}"


def _make(D: Graph, weights: Mapping[int, object], sense, rhs, tag, params=None, c=None, valid=None):
    coeffs = [Fraction(0)] * len(D.arcs)
    for k, w in weights.items():
        coeffs[k] += Fraction(w)
    return LinearInequality(
        D.kind, D.n, tuple(coeffs), sense, Fraction(rhs), tag,
        _freeze_params(params or {}), tuple(c) if c is not None else None, valid,
    )


def _acc(weights: dict, arcs: Iterable[int], value):
    for k in arcs:
        weights[k] = weights.get(k, 0) + value


def _node_set(D: Graph, nodes, name) -> frozenset:
    s = frozenset(nodes)
    bad = s - set(D.nodes)
    if bad:
        raise InvalidParameter(f"{name} contains nodes {sorted(bad)} outside the graph")
    return s


def _require(cond, msg):
    if not cond:
        raise InvalidParameter(msg)


def _bracket(c: CardinalitySequence, size: int, p: int | None) -> int:
    q = c.forbidden_bracket(size)
    if q is None or (p is not None and p != q):
        raise InvalidParameter(f"size {size} is not strictly between c_p and c_(p+1) for c={c}")
    return q


def _degree_arcs(D: Graph, i: int) -> list[int]:
    return D.out_arcs(i) if D.directed else D.incident(i)


# -- model equations and simple bounds --------------------------------------------------------

def flow_conservation(D: Graph, i: int) -> LinearInequality:
    _require(D.directed, "flow conservation is defined on digraphs")
    D._check_node(i)
    w: dict = {}
    _acc(w, D.out_arcs(i), 1)
    _acc(w, D.in_arcs(i), -1)
    b = 0
    if D.kind == "path":
        b = 1 if i == 0 else -1 if i == D.n else 0
    return _make(D, w, "=", b, "flow", {"i": i})


def degree_constraint(D: Graph, i: int) -> LinearInequality:
    D._check_node(i)
    if D.kind in ("path", "upath"):
        _require(i not in (0, D.n), "path degree constraints are for internal nodes")
    w: dict = {}
    _acc(w, _degree_arcs(D, i), 1)
    return _make(D, w, "<=", 1 if D.directed else 2, "degree", {"i": i})


def nonnegativity(D: Graph, arc) -> LinearInequality:
    k = D.arc_index(*arc)
    return _make(D, {k: 1}, ">=", 0, "nonneg", {"arc": D.arcs[k]})


def cardinality_bounds(D: Graph, c) -> tuple[LinearInequality, LinearInequality]:
    c = as_sequence(c)
    ones = {k: 1 for k in range(len(D.arcs))}
    lo = _make(D, ones, ">=", c.first, "cardinality_bound_lo", {}, c.values)
    hi = _make(D, ones, "<=", c.last, "cardinality_bound_hi", {}, c.values)
    return lo, hi


# -- cardinality forcing ------------------------------------------------------------------------

def cf_node(D: Graph, W, c, p: int | None = None) -> LinearInequality:
    """Node-counting cardinality forcing inequality.

    The path forms require 0, n in W and bracket |W| - 1, since a path visits one node more
    than it has arcs.
    """
    c = as_sequence(c)
    W = _node_set(D, W, "W")
    path = D.kind in ("path", "upath")
    if path:
        _require({0, D.n} <= W, "path cardinality forcing needs 0, n in W")
        size = len(W) - 1
    else:
        size = len(W)
    p = _bracket(c, size, p)
    big = c[p + 1] - size
    small = size - c[p]
    w: dict = {}
    for i in D.nodes:
        _acc(w, _degree_arcs(D, i), big if i in W else -small)
    rhs = c[p] * big * (1 if D.directed else 2)
    return _make(D, w, "<=", rhs, "cf_node", {"W": W, "p": p}, c.values)


def cf_arc(D: Graph, F, c, p: int | None = None) -> LinearInequality:
    c = as_sequence(c)
    idx = sorted({D.arc_index(*a) for a in F})
    p = _bracket(c, len(idx), p)
    big = c[p + 1] - len(idx)
    small = len(idx) - c[p]
    inF = set(idx)
    w = {k: (big if k in inF else -small) for k in range(len(D.arcs))}
    return _make(D, w, "<=", c[p] * big, "cf_arc", {"F": [D.arcs[k] for k in idx], "p": p}, c.values)


def cardinality_subgraph(D: Graph, W, c, p: int | None = None) -> LinearInequality:
    c = as_sequence(c)
    W = _node_set(D, W, "W")
    path = D.kind in ("path", "upath")
    if path:
        _require({0, D.n} <= W, "path cardinality-subgraph needs 0, n in W")
        size = len(W) - 1
    else:
        size = len(W)
    p = _bracket(c, size, p)
    # size - c_p - 1 equals |W| - c_p - 2 for the path forms
    penalty = size - c[p] - 1
    w: dict = {}
    _acc(w, D.inside(W), 2)
    if D.directed:
        _acc(w, D.cut(W), -penalty)
        _acc(w, D.cut(set(D.nodes) - W, W), -penalty)
    else:
        _acc(w, D.cut(W), -penalty)
    return _make(D, w, "<=", 2 * c[p], "card_subgraph", {"W": W, "p": p}, c.values)


# -- cut inequalities ---------------------------------------------------------------------------

def one_sided_min_cut(D: Graph, S, v: int, c=None) -> LinearInequality:
    S = _node_set(D, S, "S")
    D._check_node(v)
    _require(v not in S, "v must lie outside S")
    if D.kind in ("path", "upath"):
        _require({0, D.n} <= S, "path one-sided min-cut needs 0, n in S")
    w: dict = {}
    _acc(w, D.cut(S), 1)
    if D.kind == "path":
        _acc(w, D.in_arcs(v), -1)
    else:
        _acc(w, _degree_arcs(D, v), -1)
    valid = None
    if c is not None and D.kind in ("cycle", "ucycle"):
        valid = len(D.nodes) - len(S) <= as_sequence(c).first - 1
    elif c is not None:
        valid = True
    return _make(D, w, ">=", 0, "one_sided_min_cut", {"S": S, "v": v}, valid=valid)


def min_cut(D: Graph, S, c=None) -> LinearInequality:
    S = _node_set(D, S, "S")
    _require(0 < len(S) < len(D.nodes), "S must be a nonempty proper subset")
    if D.kind in ("path", "upath"):
        _require({0, D.n} <= S, "path min-cut needs 0, n in S")
    w: dict = {}
    _acc(w, D.cut(S), 1)
    valid = None
    if c is not None:
        c1 = as_sequence(c).first
        if D.kind in ("path", "upath"):
            valid = len(S) <= c1
        else:
            valid = max(len(S), len(D.nodes) - len(S)) <= c1 - 1
    return _make(D, w, ">=", 1 if D.directed else 2, "min_cut", {"S": S}, valid=valid)


def multiple_cycle_exclusion(D: Graph, S, v: int, w_node: int) -> LinearInequality:
    _require(D.kind in ("cycle", "ucycle"), "multiple cycle exclusion lives on cycle polytopes")
    S = _node_set(D, S, "S")
    _require(2 <= len(S) <= len(D.nodes) - 2, "need 2 <= |S| <= n-2")
    _require(v in S and w_node in D.nodes and w_node not in S, "need v in S and w outside S")
    w: dict = {}
    _acc(w, _degree_arcs(D, v), 1)
    _acc(w, _degree_arcs(D, w_node), 1)
    _acc(w, D.cut(S), -1)
    return _make(D, w, "<=", 1 if D.directed else 2, "multi_cycle_excl", {"S": S, "v": v, "w": w_node})


def parity_exclusion(D: Graph, S, T, parity: str, c) -> LinearInequality:
    """Exclude paths or cycles of the given ``parity`` ('odd' or 'even').

    'odd' requires every c_p even and vice versa.  The directed cycle form for odd
    cycles partitions N minus the node n and carries extra terms on arcs at n.
    """
    c = as_sequence(c)
    _require(parity in ("odd", "even"), "parity must be 'odd' or 'even'")
    S = _node_set(D, S, "S")
    T = _node_set(D, T, "T")
    _require(not S & T, "S and T must be disjoint")
    if parity == "odd":
        _require(c.all_parity(0) and c.first >= 2, "odd exclusion needs all c_p even")
    else:
        _require(c.all_parity(1) and c.first >= 3, "even exclusion needs all c_p odd and c_1 >= 3")
    nodes = set(D.nodes)
    w: dict = {}
    rhs = 1
    if D.kind in ("path", "upath"):
        _require(S | T == nodes, "S and T must partition the node set")
        if parity == "odd":
            _require(0 in S and D.n in T, "odd path exclusion needs 0 in S, n in T")
        else:
            _require(0 in S and D.n in S, "even path exclusion needs 0, n in S")
    elif D.kind == "cycle" and parity == "odd":
        _require(D.n not in S | T and S | T | {D.n} == nodes, "S, T, {n} must partition the node set")
        _acc(w, D.cut(T, {D.n}), 1)
        _acc(w, D.cut({D.n}, T), -1)
        rhs = 0
    else:
        _require(parity == "even", "undirected odd cycle exclusion is not a class")
        _require(S | T == nodes, "S and T must partition the node set")
    _acc(w, D.inside(S), 1)
    _acc(w, D.inside(T), 1)
    tag = "odd_excl" if parity == "odd" else "even_excl"
    return _make(D, w, ">=", rhs, tag, {"S": S, "T": T}, c.values)


def modified_cf(D: Graph, P, Q, r: int, c, p: int | None = None) -> LinearInequality:
    _require(D.kind == "cycle", "modified cardinality forcing lives on the directed cycle polytope")
    c = as_sequence(c, cycle=True)
    P = _node_set(D, P, "P")
    Q = _node_set(D, Q, "Q")
    D._check_node(r)
    _require(not P & Q and r not in P | Q and P | Q | {r} == set(D.nodes), "P, Q, {r} must partition N")
    _require(D.n >= 6 and c.m >= 3, "needs n >= 6 and m >= 3")
    candidates = [q for q in range(2, c.m - 1)
                  if c[q + 2] == c[q + 1] + 2 == c[q] + 4 and len(P) == c[q] + 1]
    if p is None:
        _require(candidates, f"no admissible bracket for |P|={len(P)} and c={c}")
        p = candidates[0]
    _require(p in candidates, f"p={p} is not an admissible bracket for |P|={len(P)} and c={c}")
    w: dict = {}
    for i in P:
        _acc(w, D.out_arcs(i), 1)
    for i in Q:
        _acc(w, D.out_arcs(i), -1)
    _acc(w, D.cut(Q, {r}), 1)
    _acc(w, D.cut(P, {r}), -1)
    return _make(D, w, "<=", c[p], "modified_cf", {"P": P, "Q": Q, "r": r, "p": p}, c.values)


def custom(D: Graph, coeffs: Sequence, sense: str, rhs) -> LinearInequality:
    if len(coeffs) != len(D.arcs):
        raise InvalidParameter("coefficient vector does not match the arc count")
    return LinearInequality(D.kind, D.n, tuple(Fraction(a) for a in coeffs), sense, Fraction(rhs))


# -- regeneration -------------------------------------------------------------------------------

def regenerate(tag: str, params: Mapping, n: int, c, kind: str) -> LinearInequality:
    """Rebuild a class inequality from its tag and canonical parameters."""
    D = build_graph(kind, n)
    P = dict(params)
    if tag == "flow":
        return flow_conservation(D, P["i"])
    if tag == "degree":
        return degree_constraint(D, P["i"])
    if tag == "nonneg":
        return nonnegativity(D, P["arc"])
    if tag == "cardinality_bound_lo":
        return cardinality_bounds(D, c)[0]
    if tag == "cardinality_bound_hi":
        return cardinality_bounds(D, c)[1]
    if tag == "cf_node":
        return cf_node(D, P["W"], c, P.get("p"))
    if tag == "cf_arc":
        return cf_arc(D, P["F"], c, P.get("p"))
    if tag == "card_subgraph":
        return cardinality_subgraph(D, P["W"], c, P.get("p"))
    if tag == "one_sided_min_cut":
        return one_sided_min_cut(D, P["S"], P["v"])
    if tag == "min_cut":
        return min_cut(D, P["S"])
    if tag == "multi_cycle_excl":
        return multiple_cycle_exclusion(D, P["S"], P["v"], P["w"])
    if tag in ("odd_excl", "even_excl"):
        return parity_exclusion(D, P["S"], P["T"], tag.split("_")[0], c)
    if tag == "modified_cf":
        return modified_cf(D, P["P"], P["Q"], P["r"], c, P.get("p"))
    raise InvalidParameter(f"cannot regenerate class {tag!r}")


# -- equivalence transformations ----------------------------------------------------------------

def _flow_rhs(D: Graph, i: int) -> int:
    if D.kind == "path":
        return 1 if i == 0 else -1 if i == D.n else 0
    return 0


def _apply_potentials(ineq: LinearInequality, lam: Mapping[int, Fraction], tag=None) -> LinearInequality:
    """Add sum_i lam_i * (flow equation at i); arc (i,j) changes by lam_i - lam_j."""
    D = ineq.graph
    coeffs = [a + lam.get(u, 0) - lam.get(v, 0) for a, (u, v) in zip(ineq.coeffs, D.arcs)]
    rhs = ineq.rhs + sum(Fraction(lam.get(i, 0)) * _flow_rhs(D, i) for i in D.nodes)
    return LinearInequality(D.kind, D.n, tuple(Fraction(a) for a in coeffs), ineq.sense, Fraction(rhs),
                            "custom" if tag is None else tag, () if tag is None else ineq.params, ineq.c)


def normalize(ineq: LinearInequality, tree: Iterable, targets: Mapping) -> LinearInequality:
    """Equivalent inequality whose coefficients on the spanning tree arcs equal ``targets``.

    Only flow conservation equations are added, so the two inequalities agree on every
    point satisfying them and define the same face.
    """
    D = ineq.graph
    _require(D.directed, "normalization uses flow conservation; needs a digraph")
    tree = [tuple(a) for a in tree]
    _require(len(tree) == len(D.nodes) - 1, "a spanning tree has |N| - 1 arcs")
    targets = {tuple(a): Fraction(v) for a, v in targets.items()}
    _require(set(targets) == set(tree), "targets must be given exactly on the tree arcs")
    adj: dict[int, list] = {i: [] for i in D.nodes}
    for (u, v) in tree:
        k = D.arc_index(u, v)
        # lam_u - lam_v = target - current
        d = targets[(u, v)] - ineq.coeffs[k]
        adj[u].append((v, -d))
        adj[v].append((u, d))
    root = D.nodes[0]
    lam = {root: Fraction(0)}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, d in adj[u]:
            if v not in lam:
                lam[v] = lam[u] + d
                queue.append(v)
    _require(len(lam) == len(D.nodes), "tree does not span the node set")
    out = _apply_potentials(ineq, lam)
    for (u, v), t in targets.items():
        if out.coeffs[D.arc_index(u, v)] != t:
            raise RuntimeError("internal error: tree system inconsistent")
    return out


@dataclass(frozen=True)
class NodePotentials:
    t: dict
    root: int


def node_potentials(ineq: LinearInequality, mode: str = "symmetric") -> NodePotentials | None:
    """Solve t_i - t_j = c_ij - c_ji over the required pairs, or return None if inconsistent."""
    D = ineq.graph
    if mode == "symmetric":
        _require(D.kind == "cycle", "symmetric mode needs an inequality over the complete digraph")
        nodes = list(D.nodes)
    elif mode == "pseudo_symmetric":
        # on the cycle digraph node 1 stands for the merged endpoints of the path digraph
        _require(D.kind in ("path", "cycle"), "pseudo-symmetric mode needs a directed inequality")
        nodes = list(D.internal_nodes) if D.kind == "path" else [i for i in D.nodes if i != 1]
    else:
        raise InvalidParameter(f"unknown mode {mode!r}")
    coef = dict(zip(D.arcs, ineq.coeffs))
    root = nodes[0]
    t = {root: Fraction(0)}
    for j in nodes[1:]:
        t[j] = t[root] - (coef[(root, j)] - coef[(j, root)])
    for a in range(len(nodes)):
        for b in range(a + 1, len(nodes)):
            i, j = nodes[a], nodes[b]
            if t[i] - t[j] != coef[(i, j)] - coef[(j, i)]:
                return None
    return NodePotentials(t, root)


def symmetrize(ineq: LinearInequality, mode: str = "symmetric") -> LinearInequality | None:
    """Equivalent (pseudo-)symmetric inequality, scaled to clear denominators; None if none exists."""
    pot = node_potentials(ineq, mode)
    if pot is None:
        return None
    lam = {i: -ti / 2 for i, ti in pot.t.items()}
    out = _apply_potentials(ineq, lam)
    scale = lcm(*(a.denominator for a in out.coeffs), out.rhs.denominator)
    if scale != 1:
        out = LinearInequality(out.kind, out.n, tuple(a * scale for a in out.coeffs), out.sense,
                               out.rhs * scale, out.tag, out.params, out.c)
    return out
