"""Separation routines for the inequality classes.

Exact oracles: one-sided min-cut / multiple cycle exclusion (max-flow), node and arc
cardinality forcing (sort and take a prefix), modified cardinality forcing (the same
greedy once per node r).  Parity exclusion and cardinality-subgraph separation are
exhaustive up to a node budget and local search above it; ``exhausted`` tells which.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import inequalities as ineqs
from .exceptions import InvalidParameter
from .inequalities import LinearInequality
from .model import Graph, as_sequence

DEFAULT_BUDGET = 8


@dataclass(frozen=True)
class FractionalPoint:
    entries: tuple[Fraction, ...]

    def __init__(self, entries: Iterable):
        vals = tuple(Fraction(v) for v in entries)
        if any(v < 0 for v in vals):
            raise InvalidParameter("fractional points must be nonnegative")
        object.__setattr__(self, "entries", vals)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.entries)


@dataclass(frozen=True)
class Violation:
    inequality: LinearInequality
    amount: Fraction


@dataclass
class SeparationResult:
    point: FractionalPoint
    violated: list[Violation] = field(default_factory=list)
    exhausted: bool = True

    def __post_init__(self):
        for v in self.violated:
            actual = v.inequality.violation(self.point)
            if actual <= 0 or actual != v.amount:
                raise AssertionError(f"reported cut {v.inequality.tag} is not violated by the point")
        self.violated.sort(key=lambda v: (-v.amount, v.inequality.key()))

    def __bool__(self):
        return bool(self.violated)

    def __len__(self):
        return len(self.violated)

    @property
    def inequalities(self) -> list[LinearInequality]:
        return [v.inequality for v in self.violated]

    @property
    def max_violation(self) -> Fraction:
        return max((v.amount for v in self.violated), default=Fraction(0))


def _point(D: Graph, x) -> FractionalPoint:
    x = x if isinstance(x, FractionalPoint) else FractionalPoint(x)
    if len(x) != len(D.arcs):
        raise InvalidParameter(f"point has {len(x)} entries, graph has {len(D.arcs)} arcs")
    return x


def _emit(x, candidates: Iterable[LinearInequality], exhausted=True) -> SeparationResult:
    seen = {}
    for ineq in candidates:
        amt = ineq.violation(x)
        if amt > 0 and ineq.key() not in seen:
            seen[ineq.key()] = Violation(ineq, amt)
    return SeparationResult(x, list(seen.values()), exhausted)


# -- max-flow ------------------------------------------------------------------------------------

def _edmonds_karp(nodes, cap: dict, s, t) -> tuple[Fraction, set]:
    residual: dict = {u: {} for u in nodes}
    for (u, v), c in cap.items():
        if c < 0:
            raise InvalidParameter("capacities must be nonnegative")
        residual[u][v] = residual[u].get(v, Fraction(0)) + Fraction(c)
        residual[v].setdefault(u, Fraction(0))
    value = Fraction(0)
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for v in sorted(residual[u], key=repr):
                if v not in parent and residual[u][v] > 0:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            break
        path = []
        v = t
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        delta = min(residual[u][v] for u, v in path)
        for u, v in path:
            residual[u][v] -= delta
            residual[v][u] += delta
        value += delta
    return value, set(parent)


_SOURCE = "s*"
_SINK = "t*"


def max_flow(D: Graph, capacities, s, t) -> tuple[Fraction, frozenset]:
    """Exact maximum flow and the source side of a minimum cut.

    ``capacities`` is an arc-indexed sequence or an arc -> value mapping.  ``s`` and ``t``
    may be nodes or node sets; sets are joined to a super source / sink.  Undirected
    graphs carry capacity in both directions.
    """
    if isinstance(capacities, Mapping):
        caps = {D.arcs[D.arc_index(*a)]: Fraction(v) for a, v in capacities.items()}
    else:
        if len(capacities) != len(D.arcs):
            raise InvalidParameter("capacity vector does not match the arc count")
        caps = {a: Fraction(v) for a, v in zip(D.arcs, capacities)}
    S = {s} if isinstance(s, int) else set(s)
    T = {t} if isinstance(t, int) else set(t)
    if not S or not T or S & T:
        raise InvalidParameter("source and sink must be nonempty and distinct")
    for u in S | T:
        D._check_node(u)
    arcs: dict = {}
    for (u, v), c in caps.items():
        if not c:
            continue
        arcs[(u, v)] = arcs.get((u, v), 0) + c
        if not D.directed:
            arcs[(v, u)] = arcs.get((v, u), 0) + c
    nodes = list(D.nodes) + [_SOURCE, _SINK]
    big = sum(caps.values()) + 1
    for u in S:
        arcs[(_SOURCE, u)] = big
    for u in T:
        arcs[(u, _SINK)] = big
    value, side = _edmonds_karp(nodes, arcs, _SOURCE, _SINK)
    return value, frozenset(side - {_SOURCE})


# -- one-sided min-cut and multiple cycle exclusion ----------------------------------------------

def _in_weight(D: Graph, x, v) -> Fraction:
    return sum((x[k] for k in (D.in_arcs(v) if D.directed else D.incident(v))), Fraction(0))


def _out_weight(D: Graph, x, v) -> Fraction:
    return sum((x[k] for k in (D.out_arcs(v) if D.directed else D.incident(v))), Fraction(0))


def separate_one_sided_min_cut(D: Graph, x) -> SeparationResult:
    """Path graphs: one-sided min-cut inequalities.  Cycle graphs: multiple cycle exclusion.

    Path: for every internal l the cheapest cut between {0, n} and l is compared with the
    weight entering l.  Cycle: for every ordered pair (v, w) the cheapest v-w cut S gives the
    largest x(out(v)) + x(out(w)) - x((S : N-S)); cuts with |S| = 1 or n - 1 collapse to degree
    constraints and are skipped.
    """
    x = _point(D, x)
    out = []
    if D.kind in ("path", "upath"):
        for l in D.internal_nodes:
            value, side = max_flow(D, x, {0, D.n}, l)
            if value < _in_weight(D, x, l):
                out.append(ineqs.one_sided_min_cut(D, side, l))
    else:
        rhs = 1 if D.directed else 2
        for v in D.nodes:
            for w in D.nodes:
                if v == w:
                    continue
                gain = _out_weight(D, x, v) + _out_weight(D, x, w) - rhs
                if gain <= 0:
                    continue
                side = _balanced_cut(D, x, v, w, gain)
                if side is not None:
                    out.append(ineqs.multiple_cycle_exclusion(D, side, v, w))
    return _emit(x, out)


def _balanced_cut(D: Graph, x, v, w, gain):
    """Cheapest v-w cut with at least two nodes on each side, if it is cheaper than ``gain``."""
    n = len(D.nodes)
    value, side = max_flow(D, x, v, w)
    if value >= gain:
        return None
    if 2 <= len(side) <= n - 2:
        return side
    # the plain minimum is a degenerate cut; force a second node onto each side
    best = None
    others = [u for u in D.nodes if u not in (v, w)]
    for u in others:
        for z in others:
            if u == z:
                continue
            val, S = max_flow(D, x, {v, u}, {w, z})
            if val < gain and (best is None or val < best[0]):
                best = (val, S)
    return None if best is None else best[1]


# -- cardinality forcing -------------------------------------------------------------------------

def node_loads(D: Graph, x) -> dict[int, Fraction]:
    """y_i = x(out(i)) on digraphs, y(delta(i)) on graphs."""
    return {i: _out_weight(D, x, i) for i in D.nodes}


def _top(nodes, y, k):
    # ties broken by node index ascending
    return sorted(nodes, key=lambda i: (-y[i], i))[:k]


def separate_cf_greedy(D: Graph, x, c) -> SeparationResult:
    """Most violated node cardinality-forcing inequality for every forbidden size.

    For a fixed |W| the left-hand side is (c_{p+1} - c_p) * y(W) - (|W| - c_p) * y(N) plus a
    constant, so the nodes with the largest loads form an optimal W.
    """
    x = _point(D, x)
    c = as_sequence(c)
    y = node_loads(D, x)
    path = D.kind in ("path", "upath")
    out = []
    for p, lo, hi in c.brackets():
        for size in range(lo + 1, hi):
            if path:
                k = size + 1 - 2
                if k > len(D.internal_nodes):
                    continue
                W = {0, D.n} | set(_top(D.internal_nodes, y, k))
            else:
                if size > len(D.nodes):
                    continue
                W = set(_top(D.nodes, y, size))
            out.append(ineqs.cf_node(D, W, c, p))
    return _emit(x, out)


def separate_cf_arc(D: Graph, x, c) -> SeparationResult:
    """Most violated arc cardinality-forcing inequality for every forbidden size."""
    x = _point(D, x)
    c = as_sequence(c)
    order = sorted(range(len(D.arcs)), key=lambda k: (-x[k], k))
    out = []
    for p, lo, hi in c.brackets():
        for size in range(lo + 1, min(hi, len(D.arcs) + 1)):
            out.append(ineqs.cf_arc(D, [D.arcs[k] for k in order[:size]], c, p))
    return _emit(x, out)


def mcf_brackets(c) -> list[int]:
    c = as_sequence(c)
    return [p for p in range(2, c.m - 1) if c[p + 2] == c[p + 1] + 2 == c[p] + 4]


def separate_mcf(D: Graph, x, c, *, require_node: int | None = None) -> SeparationResult:
    """Most violated modified cardinality-forcing inequality for every r and bracket.

    With r fixed, put y'_v = x(out(v)) - x_vr.  The left-hand side is 2 y'(P) - y'(N - r),
    so the |P| largest loads give the optimum.  ``require_node`` forces a node into P.
    """
    if D.kind != "cycle":
        raise InvalidParameter("modified cardinality forcing lives on the directed cycle polytope")
    x = _point(D, x)
    c = as_sequence(c)
    brackets = mcf_brackets(c)
    if not brackets or D.n < 6:
        return SeparationResult(x, [], True)
    out = []
    for p in brackets:
        size = c[p] + 1
        for r in D.nodes:
            rest = [v for v in D.nodes if v != r]
            if size > len(rest):
                continue
            y = {v: _out_weight(D, x, v) - x[D.arc_index(v, r)] for v in rest}
            if require_node is not None and require_node != r:
                P = {require_node} | set(_top([v for v in rest if v != require_node], y, size - 1))
            elif require_node is not None:
                continue
            else:
                P = set(_top(rest, y, size))
            out.append(ineqs.modified_cf(D, P, set(rest) - P, r, c, p))
    return _emit(x, out)


# -- budgeted classes ----------------------------------------------------------------------------

def _budget(budget):
    return DEFAULT_BUDGET if budget is None else int(budget)


def _parity_layout(D: Graph, parity: str):
    """(fixed S members, fixed T members, free nodes, excluded node) for the class."""
    if D.kind in ("path", "upath"):
        fixed_s = {0} | ({D.n} if parity == "even" else set())
        fixed_t = {D.n} if parity == "odd" else set()
        return fixed_s, fixed_t, list(D.internal_nodes), None
    if D.kind == "cycle" and parity == "odd":
        return set(), set(), [v for v in D.nodes if v != D.n], D.n
    return set(), set(), list(D.nodes), None


def _local_search(free, score, start):
    """Single-flip ascent on a 0/1 labelling of ``free``; ``score`` is maximized."""
    cur = dict(start)
    best = score(cur)
    improved = True
    while improved:
        improved = False
        for v in free:
            cur[v] = not cur[v]
            val = score(cur)
            if val > best:
                best = val
                improved = True
            else:
                cur[v] = not cur[v]
    return cur


def separate_parity_exclusion(D: Graph, x, c, parity: str, budget: int | None = None) -> SeparationResult:
    x = _point(D, x)
    c = as_sequence(c)
    if parity == "odd" and not c.all_parity(0):
        raise InvalidParameter("odd exclusion needs every cardinality even")
    if parity == "even" and not (c.all_parity(1) and c.first >= 3):
        raise InvalidParameter("even exclusion needs every cardinality odd and c_1 >= 3")
    if parity == "odd" and D.kind == "ucycle":
        raise InvalidParameter("odd exclusion is not a class on the undirected cycle polytope")
    fixed_s, fixed_t, free, special = _parity_layout(D, parity)
    arcs = [(u, v, x[k]) for k, (u, v) in enumerate(D.arcs) if x[k]]

    def parts(label):
        S = set(fixed_s) | {v for v in free if label[v]}
        T = set(fixed_t) | {v for v in free if not label[v]}
        return S, T

    def lhs(label):
        S, T = parts(label)
        total = Fraction(0)
        for u, v, w in arcs:
            if (u in S and v in S) or (u in T and v in T):
                total += w
            elif special is not None and u in T and v == special:
                total += w
            elif special is not None and u == special and v in T:
                total -= w
        return total

    def score(label):
        return -lhs(label)

    labels = []
    exhausted = len(D.nodes) - 1 <= _budget(budget) if D.kind in ("path", "upath") else D.n <= _budget(budget)
    if exhausted:
        for bits in itertools.product((True, False), repeat=len(free)):
            labels.append(dict(zip(free, bits)))
    else:
        starts = [{v: (i % 2 == 0) for i, v in enumerate(free)}, {v: True for v in free},
                  {v: False for v in free}]
        labels = [_local_search(free, score, s) for s in starts]
    out = []
    for label in labels:
        S, T = parts(label)
        out.append(ineqs.parity_exclusion(D, S, T, parity, c))
    return _emit(x, out, exhausted)


def separate_cardinality_subgraph(D: Graph, x, c, budget: int | None = None) -> SeparationResult:
    x = _point(D, x)
    c = as_sequence(c)
    path = D.kind in ("path", "upath")
    base = {0, D.n} if path else set()
    free = list(D.internal_nodes) if path else list(D.nodes)
    size_shift = 1 if path else 0
    n_nodes = len(D.nodes)
    exhausted = (n_nodes - 1 if path else n_nodes) <= _budget(budget)
    y = node_loads(D, x)
    out = []
    for p, lo, hi in c.brackets():
        for size in range(lo + 1, hi):
            k = size + size_shift - len(base)
            if k < 0 or k > len(free):
                continue

            def value(W):
                ineq = ineqs.cardinality_subgraph(D, W, c, p)
                return ineq.lhs(x), ineq

            if exhausted:
                for extra in itertools.combinations(free, k):
                    out.append(value(base | set(extra))[1])
                continue
            W = base | set(_top(free, y, k))
            best, ineq = value(W)
            improved = True
            while improved:
                improved = False
                for a in sorted(W - base):
                    for b in free:
                        if b in W:
                            continue
                        cand = (W - {a}) | {b}
                        val, cand_ineq = value(cand)
                        if val > best:
                            best, ineq, W = val, cand_ineq, cand
                            improved = True
                            break
                    if improved:
                        break
            out.append(ineq)
    return _emit(x, out, exhausted)


# -- exhaustive references -----------------------------------------------------------------------

def exhaustive_one_sided_min_cut(D: Graph, x) -> Fraction:
    """Largest violation over every one-sided min-cut (path) or multiple cycle exclusion (cycle)."""
    x = _point(D, x)
    best = Fraction(0)
    if D.kind in ("path", "upath"):
        free = list(D.internal_nodes)
        for r in range(len(free) + 1):
            for extra in itertools.combinations(free, r):
                S = {0, D.n} | set(extra)
                for v in free:
                    if v not in S:
                        best = max(best, ineqs.one_sided_min_cut(D, S, v).violation(x))
        return best
    nodes = list(D.nodes)
    for r in range(2, len(nodes) - 1):
        for S in itertools.combinations(nodes, r):
            for v in S:
                for w in nodes:
                    if w not in S:
                        best = max(best, ineqs.multiple_cycle_exclusion(D, S, v, w).violation(x))
    return best


def exhaustive_cf(D: Graph, x, c) -> Fraction:
    """Largest violation over every node cardinality-forcing inequality."""
    x = _point(D, x)
    c = as_sequence(c)
    path = D.kind in ("path", "upath")
    free = list(D.internal_nodes) if path else list(D.nodes)
    best = Fraction(0)
    for r in range(len(free) + 1):
        for extra in itertools.combinations(free, r):
            W = ({0, D.n} if path else set()) | set(extra)
            p = c.forbidden_bracket(len(W) - (1 if path else 0))
            if p is not None:
                best = max(best, ineqs.cf_node(D, W, c, p).violation(x))
    return best
