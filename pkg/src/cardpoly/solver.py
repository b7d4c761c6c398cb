"""Cutting-plane / branch-and-cut solver for minimum (or maximum) weight path and cycle problems.

Starting model: flow conservation, degree constraints and cardinality bounds.  Each LP
point is handed to the exact separators (one-sided min-cut or multiple cycle exclusion,
node cardinality forcing, modified cardinality forcing) and then to the budgeted ones.
When no cut is found and the point is fractional, the most fractional arc is fixed
both ways, depth first.  Undirected kinds are solved by enumeration.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import inequalities as ineqs
from . import separation as sep
from .exceptions import InvalidParameter, VerificationMismatch
from .inequalities import LinearInequality
from .lp import INFEASIBLE, lp_solve
from .model import KINDS, as_sequence, build_graph, enumerate_vertices

BUDGET_ENV = "CARDPOLY_ENUM_BUDGET"


def enumeration_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return 8
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameter(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class Instance:
    kind: str
    n: int
    c: tuple[int, ...]
    weights: tuple[Fraction, ...]
    objective: str = "minimize"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameter(f"unknown kind {self.kind!r}")
        if self.objective not in ("minimize", "maximize"):
            raise InvalidParameter("objective must be minimize or maximize")
        D = build_graph(self.kind, self.n)
        seq = as_sequence(self.c, cycle=self.kind in ("cycle", "ucycle"))
        if self.kind == "ucycle" and seq.first < 3:
            raise InvalidParameter("undirected cycles need c_1 >= 3")
        limit = len(D.nodes)
        if self.kind in ("path", "upath"):
            limit = self.n
        if seq.last > limit:
            raise InvalidParameter(f"c_m={seq.last} exceeds {limit}")
        if len(self.weights) != len(D.arcs):
            raise InvalidParameter(f"{len(self.weights)} weights for {len(D.arcs)} arcs")
        object.__setattr__(self, "c", seq.values)
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    @property
    def graph(self):
        return build_graph(self.kind, self.n)

    @classmethod
    def from_arc_weights(cls, kind, n, c, weights: dict, objective="minimize"):
        D = build_graph(kind, n)
        vec = [Fraction(0)] * len(D.arcs)
        for arc, w in weights.items():
            vec[D.arc_index(*arc)] = Fraction(w)
        return cls(kind, n, tuple(c), tuple(vec), objective)

    def value(self, x: Sequence) -> Fraction:
        return sum((w * v for w, v in zip(self.weights, x)), Fraction(0))


@dataclass
class SolverConfig:
    exact: tuple[str, ...] = ("one_sided_min_cut", "cf_greedy", "mcf")
    budgeted: tuple[str, ...] = ("parity", "card_subgraph")
    budget: int | None = None
    max_nodes: int = 20000
    cross_check: bool = True


@dataclass
class Iteration:
    node: int
    depth: int
    lp_value: Fraction | None
    cuts: dict
    status: str  # integral | fractional | infeasible | pruned

    @property
    def cuts_added(self) -> int:
        return sum(self.cuts.values())


@dataclass
class SolveLog:
    iterations: list[Iteration] = field(default_factory=list)
    status: str = "unsolved"
    vector: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    certificate: str = ""
    nodes: int = 0
    objective: str = "minimize"

    def cuts_by_class(self) -> dict:
        out: dict = {}
        for it in self.iterations:
            for k, v in it.cuts.items():
                out[k] = out.get(k, 0) + v
        return out

    def monotone(self) -> bool:
        """LP bounds never weaken along the cut loop of any single search node."""
        sign = 1 if self.objective == "minimize" else -1
        last: dict = {}
        for it in self.iterations:
            if it.lp_value is None:
                continue
            v = sign * it.lp_value
            if it.node in last and v < last[it.node]:
                return False
            last[it.node] = v
        return True


def base_constraints(D, c) -> list[LinearInequality]:
    cons = [ineqs.flow_conservation(D, i) for i in D.nodes]
    cons += [ineqs.degree_constraint(D, i) for i in D.internal_nodes]
    cons += list(ineqs.cardinality_bounds(D, c))
    return cons


def _separate(D, x, c, config: SolverConfig) -> list[LinearInequality]:
    budget = config.budget if config.budget is not None else enumeration_budget()
    cuts: list[LinearInequality] = []
    if "one_sided_min_cut" in config.exact:
        cuts += sep.separate_one_sided_min_cut(D, x).inequalities
    if "cf_greedy" in config.exact:
        cuts += sep.separate_cf_greedy(D, x, c).inequalities
    if "mcf" in config.exact and D.kind == "cycle":
        cuts += sep.separate_mcf(D, x, c).inequalities
    if cuts:
        return cuts
    if "parity" in config.budgeted:
        if c.all_parity(0):
            cuts += sep.separate_parity_exclusion(D, x, c, "odd", budget).inequalities
        elif c.all_parity(1) and c.first >= 3:
            cuts += sep.separate_parity_exclusion(D, x, c, "even", budget).inequalities
    if "card_subgraph" in config.budgeted:
        cuts += sep.separate_cardinality_subgraph(D, x, c, budget).inequalities
    return cuts


def is_feasible_vertex(D, x, c) -> bool:
    """True iff the integral point x is the incidence vector of a single allowed path or cycle."""
    if any(v not in (0, 1) for v in x):
        return False
    succ: dict = {}
    for k, v in enumerate(x):
        if v:
            u, w = D.arcs[k]
            if u in succ:
                return False
            succ[u] = w
    k = len(succ)
    if k not in as_sequence(c):
        return False
    start = 0 if D.kind == "path" else next(iter(succ), None)
    if start is None:
        return False
    seen, u = {start}, start
    for _ in range(k):
        u = succ.get(u)
        if u is None:
            return False
        if u in seen and not (D.kind == "cycle" and u == start):
            return False
        seen.add(u)
    return u == (D.n if D.kind == "path" else start)


def _repair_cuts(D, x, c) -> list[LinearInequality]:
    """Exact cuts for an integral point that is not a feasible vertex."""
    cuts = sep.separate_one_sided_min_cut(D, x).inequalities
    cuts += sep.separate_cf_greedy(D, x, c).inequalities
    if not cuts:
        cuts = sep.separate_cf_arc(D, x, c).inequalities
    return cuts


def _fractional_arc(x) -> int | None:
    best = None
    for k, v in enumerate(x):
        if v.denominator != 1:
            score = abs(v - Fraction(1, 2))
            if best is None or score < best[0]:
                best = (score, k)
    return None if best is None else best[1]


def enumeration_optimum(inst: Instance):
    """Best vertex by brute force, or (None, None) when the polytope is empty."""
    D = inst.graph
    sign = 1 if inst.objective == "minimize" else -1
    best = None
    for v in enumerate_vertices(D, inst.c):
        val = inst.value(v.entries)
        if best is None or sign * val < sign * best[0]:
            best = (val, v)
    return (None, None) if best is None else best


def solve(inst: Instance, config: SolverConfig | None = None) -> SolveLog:
    config = config or SolverConfig()
    D = inst.graph
    c = as_sequence(inst.c)
    log = SolveLog(objective=inst.objective)
    limit = config.budget if config.budget is not None else enumeration_budget()
    if inst.kind in ("upath", "ucycle"):
        val, v = enumeration_optimum(inst)
        log.certificate = "enumeration-fallback"
        if v is None:
            log.status = "infeasible"
        else:
            log.status, log.value, log.vector = "optimal", val, tuple(Fraction(e) for e in v.entries)
        return log

    sign = 1 if inst.objective == "minimize" else -1
    cost = [sign * w for w in inst.weights]
    base = base_constraints(D, c)
    pool: dict = {}
    incumbent = None  # (internal value, vector)
    branched = False
    stack = [({}, 0)]
    node_id = 0
    while stack:
        fixed, depth = stack.pop()
        if node_id >= config.max_nodes:
            raise RuntimeError("node limit reached")
        this = node_id
        node_id += 1
        fix_rows = []
        for k, v in sorted(fixed.items()):
            e = [0] * len(D.arcs)
            e[k] = 1
            fix_rows.append((e, "=", v))
        while True:
            res = lp_solve(base + list(pool.values()) + fix_rows, cost, upper_bounds=False)
            if res.status == INFEASIBLE:
                log.iterations.append(Iteration(this, depth, None, {}, "infeasible"))
                break
            if not res.optimal:
                raise RuntimeError(f"unexpected LP status {res.status}")
            x = res.point
            if incumbent is not None and res.value >= incumbent[0]:
                log.iterations.append(Iteration(this, depth, sign * res.value, {}, "pruned"))
                break
            cuts = [ct for ct in _separate(D, x, c, config) if ct.key() not in pool]
            integral = all(v.denominator == 1 for v in x)
            if not cuts and integral and not is_feasible_vertex(D, x, c):
                # the configured separators missed an infeasible integral point
                cuts = [ct for ct in _repair_cuts(D, x, c) if ct.key() not in pool]
                if not cuts:
                    raise RuntimeError("integral point is infeasible but no cut separates it")
            counts: dict = {}
            for ct in cuts:
                pool[ct.key()] = ct
                counts[ct.tag] = counts.get(ct.tag, 0) + 1
            log.iterations.append(Iteration(this, depth, sign * res.value, counts,
                                            "integral" if integral else "fractional"))
            if cuts:
                continue
            if integral:
                incumbent = (res.value, x)
                break
            k = _fractional_arc(x)
            branched = True
            # depth first, exploring x_k = 1 before x_k = 0
            stack.append(({**fixed, k: 0}, depth + 1))
            stack.append(({**fixed, k: 1}, depth + 1))
            break
    log.nodes = node_id
    if incumbent is None:
        log.status = "infeasible"
    else:
        log.status = "optimal"
        log.vector = tuple(incumbent[1])
        log.value = sign * incumbent[0]
    log.certificate = "branch" if branched else "cutting-plane-integral"
    if config.cross_check and inst.n <= limit:
        val, _ = enumeration_optimum(inst)
        if val != log.value:
            raise VerificationMismatch(f"solver value {log.value} differs from enumeration {val}")
    return log
