"""Graphs, cardinality sequences and enumeration of feasible paths and cycles.

Four graph kinds are supported, all with a frozen lexicographic arc order:

``path``    D~_n: nodes 0..n, arcs (0,i), (i,n) and (i,j) for internal i != j.
``cycle``   D_n: complete digraph on nodes 1..n.
``upath``   K_{n+1}: complete graph on nodes 0..n.
``ucycle``  K_n: complete graph on nodes 1..n.

Undirected edges are stored as pairs (i, j) with i < j.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .exceptions import InvalidParameter

KINDS = ("path", "cycle", "upath", "ucycle")


@dataclass(frozen=True)
class CardinalitySequence:
    values: tuple[int, ...]

    def __init__(self, values: Iterable[int], *, cycle: bool = False):
        vals = tuple(int(v) for v in values)
        if not vals:
            raise InvalidParameter("cardinality sequence must be nonempty")
        if vals[0] < 1:
            raise InvalidParameter(f"cardinalities must be >= 1, got {vals}")
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise InvalidParameter(f"cardinalities must be strictly increasing, got {vals}")
        if cycle and vals[0] < 2:
            raise InvalidParameter("cycle polytopes need c_1 >= 2")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, p: int) -> int:
        """1-based access, matching c_1, ..., c_m."""
        if not 1 <= p <= len(self.values):
            raise IndexError(p)
        return self.values[p - 1]

    def __contains__(self, k) -> bool:
        return k in self.values

    def __repr__(self):
        return f"CardinalitySequence({self.values})"

    def __str__(self):
        return "(" + ",".join(map(str, self.values)) + ")"

    @property
    def m(self) -> int:
        return len(self.values)

    @property
    def first(self) -> int:
        return self.values[0]

    @property
    def last(self) -> int:
        return self.values[-1]

    def forbidden_bracket(self, k: int) -> int | None:
        """Return p with c_p < k < c_{p+1}, or None if k is not strictly inside a gap."""
        i = bisect_left(self.values, k)
        if i == 0 or i == len(self.values) or self.values[i] == k:
            return None
        return i

    def brackets(self) -> Iterator[tuple[int, int, int]]:
        """Yield (p, c_p, c_{p+1}) for every gap that contains a forbidden value."""
        for p in range(1, self.m):
            lo, hi = self[p], self[p + 1]
            if hi - lo >= 2:
                yield p, lo, hi

    def forbidden(self) -> list[int]:
        return [k for _, lo, hi in self.brackets() for k in range(lo + 1, hi)]

    def all_parity(self, parity: int) -> bool:
        return all(v % 2 == parity for v in self.values)


def as_sequence(c, *, cycle: bool = False) -> CardinalitySequence:
    if isinstance(c, CardinalitySequence):
        if cycle and c.first < 2:
            raise InvalidParameter("cycle polytopes need c_1 >= 2")
        return c
    return CardinalitySequence(c, cycle=cycle)


@dataclass(frozen=True)
class Graph:
    kind: str
    n: int
    nodes: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...]

    @property
    def directed(self) -> bool:
        return self.kind in ("path", "cycle")

    @property
    def dimension(self) -> int:
        return len(self.arcs)

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {a: k for k, a in enumerate(self.arcs)}

    @property
    def source(self) -> int | None:
        return 0 if self.kind in ("path", "upath") else None

    @property
    def sink(self) -> int | None:
        return self.n if self.kind in ("path", "upath") else None

    @property
    def internal_nodes(self) -> tuple[int, ...]:
        if self.kind in ("path", "upath"):
            return tuple(range(1, self.n))
        return self.nodes

    def arc_index(self, u: int, v: int) -> int:
        key = (u, v) if self.directed or u < v else (v, u)
        try:
            return self.index[key]
        except KeyError:
            raise InvalidParameter(f"{(u, v)} is not an arc of {self.kind} graph n={self.n}") from None

    def has_arc(self, u: int, v: int) -> bool:
        key = (u, v) if self.directed or u < v else (v, u)
        return key in self.index

    def _check_node(self, i):
        if i not in self.nodes:
            raise InvalidParameter(f"node {i} not in {self.kind} graph n={self.n}")

    def out_arcs(self, i: int) -> list[int]:
        self._check_node(i)
        return [k for k, (u, _) in enumerate(self.arcs) if u == i]

    def in_arcs(self, i: int) -> list[int]:
        self._check_node(i)
        return [k for k, (_, v) in enumerate(self.arcs) if v == i]

    def incident(self, i: int) -> list[int]:
        self._check_node(i)
        return [k for k, a in enumerate(self.arcs) if i in a]

    def cut(self, S: Iterable[int], T: Iterable[int] | None = None) -> list[int]:
        """Arcs (S:T); for undirected graphs the edges with one end in each set."""
        S = set(S)
        T = set(self.nodes) - S if T is None else set(T)
        if self.directed:
            return [k for k, (u, v) in enumerate(self.arcs) if u in S and v in T]
        return [k for k, (u, v) in enumerate(self.arcs)
                if (u in S and v in T) or (v in S and u in T)]

    def inside(self, S: Iterable[int]) -> list[int]:
        S = set(S)
        return [k for k, (u, v) in enumerate(self.arcs) if u in S and v in S]

    def vector(self, weights: dict[tuple[int, int], object]) -> list:
        vec = [0] * len(self.arcs)
        for (u, v), w in weights.items():
            vec[self.arc_index(u, v)] = w
        return vec


class PathDigraph(Graph):
    pass


class CompleteDigraph(Graph):
    pass


class CompleteGraph(Graph):
    pass


def build_path_digraph(n: int) -> PathDigraph:
    if n < 3:
        raise InvalidParameter(f"path digraph needs n >= 3, got {n}")
    arcs = [(0, i) for i in range(1, n)]
    for i in range(1, n):
        arcs.extend((i, j) for j in range(1, n + 1) if j != i)
    return PathDigraph("path", n, tuple(range(n + 1)), tuple(sorted(arcs)))


def build_complete_digraph(n: int) -> CompleteDigraph:
    if n < 2:
        raise InvalidParameter(f"complete digraph needs n >= 2, got {n}")
    nodes = tuple(range(1, n + 1))
    arcs = tuple((i, j) for i in nodes for j in nodes if i != j)
    return CompleteDigraph("cycle", n, nodes, arcs)


def build_complete_graph(n: int, *, path: bool) -> CompleteGraph:
    """K_{n+1} on 0..n when ``path`` else K_n on 1..n."""
    if n < 3:
        raise InvalidParameter(f"complete graph needs n >= 3, got {n}")
    nodes = tuple(range(0, n + 1)) if path else tuple(range(1, n + 1))
    edges = tuple((i, j) for i in nodes for j in nodes if i < j)
    return CompleteGraph("upath" if path else "ucycle", n, nodes, edges)


def build_graph(kind: str, n: int) -> Graph:
    if kind == "path":
        return build_path_digraph(n)
    if kind == "cycle":
        return build_complete_digraph(n)
    if kind in ("upath", "ucycle"):
        return build_complete_graph(n, path=kind == "upath")
    raise InvalidParameter(f"unknown graph kind {kind!r}")


@dataclass(frozen=True)
class IncidenceVector:
    entries: tuple[int, ...]
    kind: str  # "path" | "cycle"
    cardinality: int
    walk: tuple[int, ...] = ()

    def __post_init__(self):
        if any(e not in (0, 1) for e in self.entries):
            raise InvalidParameter("incidence vectors are 0/1")
        if sum(self.entries) != self.cardinality:
            raise InvalidParameter("cardinality does not match number of ones")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def support(self) -> list[int]:
        return [k for k, e in enumerate(self.entries) if e]


def _walk_vector(D: Graph, walk: Sequence[int], closed: bool) -> tuple[int, ...]:
    vec = [0] * len(D.arcs)
    steps = list(zip(walk, walk[1:]))
    if closed:
        steps.append((walk[-1], walk[0]))
    for u, v in steps:
        vec[D.arc_index(u, v)] = 1
    return tuple(vec)


def _check_bounds(D: Graph, c: CardinalitySequence, limit: int):
    if c.last > limit:
        raise InvalidParameter(f"c_m={c.last} exceeds {limit} for {D.kind} graph n={D.n}")


def enumerate_paths(D: Graph, c) -> list[IncidenceVector]:
    """All simple (0,n)-paths with an allowed number of arcs, in DFS order."""
    if D.kind not in ("path", "upath"):
        raise InvalidParameter("enumerate_paths needs a path digraph or K_{n+1}")
    c = as_sequence(c)
    _check_bounds(D, c, D.n)
    allowed = set(c.values)
    longest = c.last
    s, t = 0, D.n
    internal = D.internal_nodes
    out = []
    walk = [s]
    used = set()

    def extend():
        arcs_so_far = len(walk) - 1
        if arcs_so_far + 1 in allowed and D.has_arc(walk[-1], t):
            path = walk + [t]
            out.append(IncidenceVector(_walk_vector(D, path, False), "path", arcs_so_far + 1, tuple(path)))
        # one more internal node still leaves room for the closing arc only if below the longest length
        if arcs_so_far + 2 > longest:
            return
        for j in internal:
            if j not in used and D.has_arc(walk[-1], j):
                used.add(j)
                walk.append(j)
                extend()
                walk.pop()
                used.discard(j)

    extend()
    return out


def enumerate_cycles(D: Graph, c, *, through: int | None = None) -> list[IncidenceVector]:
    """All simple cycles of allowed cardinality, each once, rotated to start at the smallest node.

    Undirected cycles are additionally listed in a single direction.  ``through`` restricts the
    output to cycles visiting that node.
    """
    if D.kind not in ("cycle", "ucycle"):
        raise InvalidParameter("enumerate_cycles needs a complete digraph or K_n")
    c = as_sequence(c)
    if c.first < (2 if D.directed else 3):
        raise InvalidParameter(f"c_1={c.first} too small for {D.kind} polytope")
    _check_bounds(D, c, len(D.nodes))
    allowed = set(c.values)
    longest = c.last
    nodes = D.nodes
    out = []

    for start in nodes:
        walk = [start]
        used = {start}

        def extend():
            k = len(walk)
            if k in allowed and k >= 2:
                ok = D.directed or (k >= 3 and walk[1] < walk[-1])
                if ok and (through is None or through in used):
                    out.append(IncidenceVector(_walk_vector(D, walk, True), "cycle", k, tuple(walk)))
            if k >= longest:
                return
            for j in nodes:
                if j > start and j not in used:
                    used.add(j)
                    walk.append(j)
                    extend()
                    walk.pop()
                    used.discard(j)

        extend()
    return out


def enumerate_vertices(D: Graph, c, *, through: int | None = None) -> list[IncidenceVector]:
    if D.kind in ("path", "upath"):
        return enumerate_paths(D, c)
    return enumerate_cycles(D, c, through=through)


def forbidden_bracket(c, k: int) -> int | None:
    return as_sequence(c).forbidden_bracket(k)
