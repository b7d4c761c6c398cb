"""Brute-force ground truth: dimensions, validity, facet certificates and class sweeps.

A face is certified facet-defining when the tight vertices span an affine space of
dimension dim P - 1.  Ranks are exact; a rank modulo a large prime serves as a
certified lower bound so that most facet checks never touch big integers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import inequalities as ineqs
from .exceptions import InvalidParameter
from .facets import Answer, Verdict, facet_predicate
from .inequalities import LinearInequality
from .linalg import integer_affine_rank, integer_affine_rank_lower_bound
from .model import CardinalitySequence, Graph, IncidenceVector, as_sequence, build_graph, enumerate_vertices

# polytope variant -> graph kind
GRAPH_KIND = {"path": "path", "cycle": "cycle", "pstar": "cycle", "upath": "upath", "ucycle": "ucycle"}
# spellings accepted for the polytope kind
KIND_ALIASES = {
    "path": "path", "cycle": "cycle", "pstar": "pstar", "upath": "upath", "ucycle": "ucycle",
    "undirected_path": "upath", "undirected_cycle": "ucycle",
}


def variant_of(kind: str) -> str:
    try:
        return KIND_ALIASES[kind]
    except KeyError:
        raise InvalidParameter(f"unknown polytope kind {kind!r}") from None


class Polytope:
    """Vertex list of a cardinality constrained path or cycle polytope."""

    def __init__(self, variant: str, n: int, c):
        self.variant = variant_of(variant)
        self.n = n
        self.graph: Graph = build_graph(GRAPH_KIND[self.variant], n)
        cycle = self.graph.kind in ("cycle", "ucycle")
        self.c: CardinalitySequence = as_sequence(c, cycle=cycle)
        through = 1 if self.variant == "pstar" else None
        self.vertices: list[IncidenceVector] = enumerate_vertices(self.graph, self.c, through=through)

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def matrix(self) -> np.ndarray:
        if not self.vertices:
            return np.zeros((0, len(self.graph.arcs)), dtype=np.int64)
        return np.array([v.entries for v in self.vertices], dtype=np.int64)

    @cached_property
    def dim(self) -> int:
        if not self.vertices:
            return -1
        return integer_affine_rank(self.matrix)

    def evaluate(self, ineq: LinearInequality) -> tuple[np.ndarray, int]:
        """Scaled left-hand sides on all vertices and the matching scaled rhs."""
        _check_compatible(ineq, self.graph)
        a, b = ineq.integer_form()
        big = max((abs(x) for x in a), default=0)
        if big * len(a) < 2 ** 62:
            return self.matrix @ np.array(a, dtype=np.int64), b
        vals = np.array([sum(a[k] for k in np.nonzero(row)[0]) for row in self.matrix], dtype=object)
        return vals, b


def _check_compatible(ineq: LinearInequality, D: Graph):
    if ineq.kind != D.kind or ineq.n != D.n:
        raise InvalidParameter(f"inequality over {ineq.kind} n={ineq.n} used on {D.kind} n={D.n}")


def polytope(variant: str, n: int, c) -> Polytope:
    return Polytope(variant, n, c)


def polytope_dimension(D: Graph | int, c, kind: str | None = None) -> int:
    """Affine dimension of the polytope, or -1 when it has no vertices.

    ``D`` may be a graph or the node parameter n; ``kind`` defaults to the graph kind.
    """
    if isinstance(D, Graph):
        n = D.n
        kind = kind or D.kind
        if GRAPH_KIND[variant_of(kind)] != D.kind:
            raise InvalidParameter(f"kind {kind!r} does not live on a {D.kind} graph")
    else:
        n = int(D)
        if kind is None:
            raise InvalidParameter("kind is required when no graph is given")
    return Polytope(kind, n, c).dim


def _as_matrix(vertices, D=None) -> np.ndarray:
    if isinstance(vertices, Polytope):
        return vertices.matrix
    rows = [list(v) for v in vertices]
    return np.array(rows, dtype=np.int64) if rows else np.zeros((0, 0), dtype=np.int64)


def _violations(ineq: LinearInequality, vertices) -> tuple[np.ndarray, np.ndarray, int]:
    if isinstance(vertices, Polytope):
        lhs, b = vertices.evaluate(ineq)
        return vertices.matrix, lhs, b
    M = _as_matrix(vertices)
    if M.shape[0] and M.shape[1] != len(ineq.coeffs):
        raise InvalidParameter("vertex length does not match the inequality")
    a, b = ineq.integer_form()
    lhs = M.astype(object) @ np.array(a, dtype=object) if M.shape[0] else np.zeros(0, dtype=object)
    return M, lhs, b


def _bad_mask(lhs, b, sense):
    if sense == "<=":
        return lhs > b
    if sense == ">=":
        return lhs < b
    return lhs != b


@dataclass(frozen=True)
class ValidityResult:
    valid: bool
    counterexample: object = None

    def __bool__(self):
        return self.valid

    def __iter__(self):
        return iter((self.valid, self.counterexample))


def is_valid(ineq: LinearInequality, vertices) -> ValidityResult:
    """True iff every vertex satisfies the inequality; otherwise the first violating vertex."""
    _, lhs, b = _violations(ineq, vertices)
    bad = np.nonzero(_bad_mask(lhs, b, ineq.sense))[0]
    if bad.size == 0:
        return ValidityResult(True)
    k = int(bad[0])
    vs = vertices.vertices if isinstance(vertices, Polytope) else list(vertices)
    return ValidityResult(False, vs[k])


def tight_vertices(ineq: LinearInequality, vertices) -> np.ndarray:
    M, lhs, b = _violations(ineq, vertices)
    return M[np.asarray(lhs == b, dtype=bool)]


def is_facet(ineq: LinearInequality, vertices, dim: int | None = None) -> bool:
    """True iff the tight vertices have affine rank dim - 1.  Invalid input raises."""
    M, lhs, b = _violations(ineq, vertices)
    if np.any(_bad_mask(lhs, b, ineq.sense)):
        raise InvalidParameter("inequality is not valid on the given vertices")
    if dim is None:
        dim = vertices.dim if isinstance(vertices, Polytope) else integer_affine_rank(M)
    tight_mask = np.asarray(lhs == b, dtype=bool)
    T = M[tight_mask]
    if T.shape[0] < dim:
        return False
    if tight_mask.all():
        # the inequality holds with equality on the whole polytope
        return False
    # tight vertices of a proper face span at most dim - 1
    if integer_affine_rank_lower_bound(T) >= dim - 1:
        return True
    return integer_affine_rank(T) == dim - 1


# -- sweeps --------------------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepSpec:
    sweep_id: str
    variant: str
    tags: tuple[str, ...]
    instances: Callable  # (n, c) -> iterator of (tag, params)
    admissible: Callable  # (n, c) -> bool
    extra_fixed: Callable = lambda n: ()
    note: str = ""


def _subsets(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def _cs_path(n, c):
    return c.m >= 2 and c.first >= 2 and c.last <= n and c.values != (2, 3)


def _cs_cycle(n, c):
    return c.m >= 2 and c.first >= 2 and c.last <= n


def _cs_ucycle(n, c):
    return c.m >= 2 and c.first >= 3 and c.last <= n


def _has_gap(c):
    return any(True for _ in c.brackets())


def _mcf_brackets(c):
    return [p for p in range(2, c.m - 1) if c[p + 2] == c[p + 1] + 2 == c[p] + 4]


def _gen_nonneg(variant):
    def gen(n, c):
        for arc in build_graph(GRAPH_KIND[variant], n).arcs:
            yield "nonneg", {"arc": arc}
    return gen


def _gen_degree(variant):
    def gen(n, c):
        D = build_graph(GRAPH_KIND[variant], n)
        for i in D.internal_nodes:
            yield "degree", {"i": i}
    return gen


def _gen_bounds(n, c):
    yield "cardinality_bound_lo", {}
    yield "cardinality_bound_hi", {}


def _gen_node_sets(variant, tag):
    """W of every forbidden size; path forms contain 0, n and pstar forms contain 1."""
    def gen(n, c):
        if variant in ("path", "upath"):
            base, free, shift = (0, n), list(range(1, n)), 1
        elif variant == "pstar":
            base, free, shift = (1,), list(range(2, n + 1)), 0
        else:
            base, free, shift = (), list(range(1, n + 1)), 0
        for extra in _subsets(free):
            W = set(base) | set(extra)
            p = c.forbidden_bracket(len(W) - shift)
            if p is not None:
                yield tag, {"W": W, "p": p}
    return gen


def _gen_one_sided(variant):
    def gen(n, c):
        if variant in ("path", "upath"):
            free = list(range(1, n))
            for extra in _subsets(free):
                S = {0, n} | set(extra)
                for v in free:
                    if v not in S:
                        yield "one_sided_min_cut", {"S": S, "v": v}
        else:
            nodes = list(range(1, n + 1))
            for S in _subsets(nodes):
                for v in nodes:
                    if v not in S:
                        yield "one_sided_min_cut", {"S": set(S), "v": v}
    return gen


def _gen_min_cut(variant):
    def gen(n, c):
        if variant in ("path", "upath"):
            for extra in _subsets(list(range(1, n))):
                if len(extra) < n - 1:
                    yield "min_cut", {"S": {0, n} | set(extra)}
        else:
            nodes = list(range(1, n + 1))
            for S in _subsets(nodes):
                if 0 < len(S) < n:
                    yield "min_cut", {"S": set(S)}
    return gen


def _gen_mcec(n, c):
    nodes = list(range(1, n + 1))
    for S in _subsets(nodes):
        if 2 <= len(S) <= n - 2:
            for v in S:
                for w in nodes:
                    if w not in S:
                        yield "multi_cycle_excl", {"S": set(S), "v": v, "w": w}


def _gen_parity(variant, parity):
    tag = f"{parity}_excl"

    def gen(n, c):
        if variant in ("path", "upath"):
            free = list(range(1, n))
            for extra in _subsets(free):
                S = {0} | set(extra)
                if parity == "even":
                    S.add(n)
                T = set(range(n + 1)) - S
                yield tag, {"S": S, "T": T}
        elif variant == "cycle" and parity == "odd":
            free = list(range(1, n))
            for S in _subsets(free):
                yield tag, {"S": set(S), "T": set(free) - set(S)}
        else:
            nodes = list(range(1, n + 1))
            for S in _subsets(nodes):
                yield tag, {"S": set(S), "T": set(nodes) - set(S)}
    return gen


def _gen_mcf(variant):
    def gen(n, c):
        nodes = list(range(1, n + 1))
        for p in _mcf_brackets(c):
            size = c[p] + 1
            for r in nodes:
                rest = [x for x in nodes if x != r]
                for P in itertools.combinations(rest, size):
                    if variant == "pstar" and 1 not in P:
                        continue
                    yield "modified_cf", {"P": set(P), "Q": set(rest) - set(P), "r": r, "p": p}
    return gen


def _parity_ok(parity, first_min):
    def ok(c):
        if parity == "odd":
            return c.all_parity(0)
        return c.all_parity(1) and c.first >= first_min
    return ok


def _spec(sweep_id, variant, tags, gen, admissible, extra_fixed=lambda n: (), note=""):
    return SweepSpec(sweep_id, variant, tuple(tags), gen, admissible, extra_fixed, note)


def _build_catalog() -> dict[str, SweepSpec]:
    cat = {}

    def add(s: SweepSpec):
        cat[s.sweep_id] = s

    base = {"path": _cs_path, "upath": _cs_path, "cycle": _cs_cycle, "pstar": _cs_cycle, "ucycle": _cs_ucycle}
    for v in ("path", "cycle", "upath", "ucycle"):
        ok = base[v]
        add(_spec(f"{v}-nonneg", v, ["nonneg"], _gen_nonneg(v), ok))
        add(_spec(f"{v}-degree", v, ["degree"], _gen_degree(v), ok))
        add(_spec(f"{v}-bounds", v, ["cardinality_bound_lo", "cardinality_bound_hi"], _gen_bounds, ok))
        add(_spec(f"{v}-cf", v, ["cf_node"], _gen_node_sets(v, "cf_node"),
                  lambda n, c, ok=ok: ok(n, c) and _has_gap(c)))
        add(_spec(f"{v}-card-subgraph", v, ["card_subgraph"], _gen_node_sets(v, "card_subgraph"),
                  lambda n, c, ok=ok: ok(n, c) and _has_gap(c)))
        add(_spec(f"{v}-one-sided-min-cut", v, ["one_sided_min_cut"], _gen_one_sided(v), ok))
        add(_spec(f"{v}-min-cut", v, ["min_cut"], _gen_min_cut(v), ok))
        add(_spec(f"{v}-even-excl", v, ["even_excl"], _gen_parity(v, "even"),
                  lambda n, c, ok=ok: ok(n, c) and _parity_ok("even", 3)(c)))
    for v in ("path", "cycle", "upath"):
        ok = base[v]
        fixed = (lambda n: (n,)) if v == "cycle" else (lambda n: ())
        add(_spec(f"{v}-odd-excl", v, ["odd_excl"], _gen_parity(v, "odd"),
                  lambda n, c, ok=ok: ok(n, c) and _parity_ok("odd", 2)(c), fixed))
    add(_spec("cycle-multi-cycle-excl", "cycle", ["multi_cycle_excl"], _gen_mcec, _cs_cycle))
    add(_spec("ucycle-two-sided-min-cut", "ucycle", ["multi_cycle_excl"], _gen_mcec, _cs_ucycle))
    for v in ("pstar", "cycle"):
        add(_spec(f"{v}-mcf", v, ["modified_cf"], _gen_mcf(v),
                  lambda n, c: n >= 6 and c.m >= 3 and c.first >= 2 and c.last <= n and bool(_mcf_brackets(c))))
    add(_spec("pstar-cf", "pstar", ["cf_node"], _gen_node_sets("pstar", "cf_node"),
              lambda n, c: n >= 4 and _cs_cycle(n, c) and _has_gap(c)))
    add(_spec("pstar-card-subgraph", "pstar", ["card_subgraph"], _gen_node_sets("pstar", "card_subgraph"),
              lambda n, c: _cs_cycle(n, c) and _has_gap(c)))
    return cat


CATALOG: dict[str, SweepSpec] = _build_catalog()


def sweep_ids() -> list[str]:
    return sorted(CATALOG)


def admissible_sequences(sweep_id: str, n: int) -> list[tuple[int, ...]]:
    """Every cardinality sequence (m >= 2) on which the sweep's class is defined at size n."""
    spec = CATALOG[sweep_id]
    out = []
    for r in range(2, n):
        for vals in itertools.combinations(range(2, n + 1), r):
            c = CardinalitySequence(vals)
            if spec.admissible(n, c):
                out.append(vals)
    return out


def _fixed_and_free(spec: SweepSpec, n: int):
    if spec.variant in ("path", "upath"):
        fixed = [0, n]
        nodes = range(n + 1)
    elif spec.variant == "pstar":
        fixed = [1]
        nodes = range(1, n + 1)
    else:
        fixed = []
        nodes = range(1, n + 1)
    fixed += [x for x in spec.extra_fixed(n) if x not in fixed]
    free = [x for x in nodes if x not in fixed]
    return fixed, free


def _signature(x: int, params: dict) -> tuple:
    sig = []
    for key in sorted(params):
        val = params[key]
        if key in ("W", "S", "T", "P", "Q"):
            sig.append(x in val)
        elif key in ("v", "w", "r", "i"):
            sig.append(x == val)
        elif key == "arc":
            sig.append((x == val[0], x == val[1]))
    return tuple(sig)


def canonical_key(spec: SweepSpec, n: int, tag: str, params: dict) -> tuple:
    """Orbit key under permutations of the interchangeable nodes of the variant."""
    fixed, free = _fixed_and_free(spec, n)
    rest = tuple((k, params[k]) for k in sorted(params) if k == "p")
    return (tag, tuple(_signature(x, params) for x in fixed),
            tuple(sorted(_signature(x, params) for x in free)), rest)


@dataclass
class SweepRecord:
    tag: str
    params: dict
    predicate: Verdict
    valid: bool
    facet: bool

    @property
    def agrees(self) -> bool | None:
        if not self.predicate.known:
            return None
        return (self.predicate.answer is Answer.TRUE) == self.facet

    def params_text(self) -> str:
        parts = []
        for k in sorted(self.params):
            v = self.params[k]
            if isinstance(v, (set, frozenset)):
                v = "{" + ",".join(map(str, sorted(v))) + "}"
            parts.append(f"{k}={v}")
        return " ".join(parts)


@dataclass
class SweepReport:
    sweep_id: str
    variant: str
    n: int
    c: tuple[int, ...]
    canonical: bool
    records: list[SweepRecord] = field(default_factory=list)

    @property
    def agreements(self) -> list[SweepRecord]:
        return [r for r in self.records if r.agrees is True]

    @property
    def disagreements(self) -> list[SweepRecord]:
        return [r for r in self.records if r.agrees is False]

    @property
    def unknown(self) -> list[SweepRecord]:
        return [r for r in self.records if r.agrees is None]

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def summary(self) -> dict:
        return {
            "sweep": self.sweep_id, "variant": self.variant, "n": self.n,
            "c": "(" + ",".join(map(str, self.c)) + ")",
            "instances": len(self.records), "agree": len(self.agreements),
            "disagree": len(self.disagreements), "unknown": len(self.unknown),
            "unknown_facet": sum(r.facet for r in self.unknown),
            "unknown_vs_stated": sum(1 for r in self.unknown
                                     if r.predicate.stated is not None and r.predicate.stated != r.facet),
            "facets": sum(r.facet for r in self.records),
        }

    def text(self) -> str:
        s = self.summary()
        lines = [f"sweep {s['sweep']} n={s['n']} c={s['c']}: {s['instances']} instances, "
                 f"{s['agree']} agree, {s['disagree']} disagree, {s['unknown']} unresolved by the predicate"]
        for r in self.disagreements:
            lines.append(f"  MISMATCH {r.tag} {r.params_text()}: predicate {r.predicate}, facet {r.facet}")
        for r in self.unknown:
            lines.append(f"  resolved {r.tag} {r.params_text()}: facet {r.facet} (stated {r.predicate.stated})")
        return "\n".join(lines)


def sweep_instances(sweep_id: str, n: int, c, canonical: bool = True) -> list[tuple[str, dict]]:
    spec = CATALOG[sweep_id]
    c = as_sequence(c)
    seen = set()
    out = []
    for tag, params in spec.instances(n, c):
        if canonical:
            key = canonical_key(spec, n, tag, params)
            if key in seen:
                continue
            seen.add(key)
        out.append((tag, params))
    return out


def build_instance(spec: SweepSpec, D: Graph, c, tag: str, params: dict) -> LinearInequality:
    P = params
    if tag == "nonneg":
        return ineqs.nonnegativity(D, P["arc"])
    if tag == "degree":
        return ineqs.degree_constraint(D, P["i"])
    if tag == "cardinality_bound_lo":
        return ineqs.cardinality_bounds(D, c)[0]
    if tag == "cardinality_bound_hi":
        return ineqs.cardinality_bounds(D, c)[1]
    if tag == "cf_node":
        return ineqs.cf_node(D, P["W"], c, P["p"])
    if tag == "card_subgraph":
        return ineqs.cardinality_subgraph(D, P["W"], c, P["p"])
    if tag == "one_sided_min_cut":
        return ineqs.one_sided_min_cut(D, P["S"], P["v"], c)
    if tag == "min_cut":
        return ineqs.min_cut(D, P["S"], c)
    if tag == "multi_cycle_excl":
        return ineqs.multiple_cycle_exclusion(D, P["S"], P["v"], P["w"])
    if tag in ("odd_excl", "even_excl"):
        return ineqs.parity_exclusion(D, P["S"], P["T"], tag.split("_")[0], c)
    if tag == "modified_cf":
        return ineqs.modified_cf(D, P["P"], P["Q"], P["r"], c, P["p"])
    raise InvalidParameter(f"no builder for {tag!r}")


def sweep_theorem(sweep_id: str, n: int, c, canonical: bool = True, poly: Polytope | None = None) -> SweepReport:
    """Compare the published facet condition with the certificate for every class instance."""
    if sweep_id not in CATALOG:
        raise InvalidParameter(f"unknown sweep {sweep_id!r}; choose from {', '.join(sweep_ids())}")
    spec = CATALOG[sweep_id]
    c = as_sequence(c)
    if not spec.admissible(n, c):
        raise InvalidParameter(f"sweep {sweep_id} is not defined for n={n}, c={c}")
    poly = poly or Polytope(spec.variant, n, c)
    report = SweepReport(sweep_id, spec.variant, n, c.values, canonical)
    for tag, params in sweep_instances(sweep_id, n, c, canonical):
        ineq = build_instance(spec, poly.graph, c, tag, params)
        valid = is_valid(ineq, poly).valid
        facet = valid and is_facet(ineq, poly, poly.dim)
        pred = facet_predicate(tag, params, n, c, spec.variant)
        report.records.append(SweepRecord(tag, params, pred, valid, facet))
    return report


def certified_facets(report: SweepReport) -> Iterable[SweepRecord]:
    return (r for r in report.records if r.facet)
