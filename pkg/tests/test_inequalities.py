import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cardpoly import InvalidParameter
from cardpoly import inequalities as I
from cardpoly.facets import Answer, facet_predicate
from cardpoly.model import build_complete_digraph, build_graph, build_path_digraph, enumerate_cycles, enumerate_paths
from cardpoly.verify import CATALOG, GRAPH_KIND, Polytope, admissible_sequences, build_instance, is_valid, sweep_instances


def vec(D, arcs):
    x = [0] * len(D.arcs)
    for a in arcs:
        x[D.arc_index(*a)] = 1
    return x


def walk_arcs(walk, closed):
    steps = list(zip(walk, walk[1:]))
    return steps + [(walk[-1], walk[0])] if closed else steps


def support(ineq):
    D = ineq.graph
    return {D.arcs[k]: a for k, a in enumerate(ineq.coeffs) if a}


# -- model rows ---------------------------------------------------------------------------------

def test_flow_conservation_examples():
    D = build_path_digraph(4)
    f0 = I.flow_conservation(D, 0)
    assert support(f0) == {(0, 1): 1, (0, 2): 1, (0, 3): 1} and f0.sense == "=" and f0.rhs == 1
    f2 = I.flow_conservation(D, 2)
    assert f2.rhs == 0
    assert all(a == (1 if u == 2 else -1) for (u, v), a in support(f2).items())
    assert set(support(f2)) == set(D.arcs[k] for k in D.out_arcs(2) + D.in_arcs(2))
    f3 = I.flow_conservation(build_complete_digraph(4), 3)
    assert f3.rhs == 0 and len(support(f3)) == 6


def test_degree_examples():
    assert support(I.degree_constraint(build_path_digraph(4), 2)) == {(2, 1): 1, (2, 3): 1, (2, 4): 1}
    assert support(I.degree_constraint(build_complete_digraph(3), 1)) == {(1, 2): 1, (1, 3): 1}
    D = build_path_digraph(5)
    deg = I.degree_constraint(D, 3)
    assert {deg.lhs(v.entries) for v in enumerate_paths(D, (2, 3, 4, 5))} == {0, 1}
    with pytest.raises(InvalidParameter):
        I.degree_constraint(D, 0)


def test_nonnegativity():
    D = build_complete_digraph(4)
    nn = I.nonnegativity(D, (1, 2))
    assert support(nn) == {(1, 2): 1} and nn.rhs == 0 and nn.sense == ">="
    assert all(nn.satisfied(v.entries) for v in enumerate_cycles(D, (2, 3, 4)))


def test_cardinality_bounds():
    D = build_path_digraph(5)
    lo, hi = I.cardinality_bounds(D, (2, 4))
    assert (lo.rhs, hi.rhs) == (2, 4)
    paths = enumerate_paths(D, (2, 3, 4))
    three = next(v for v in paths if v.cardinality == 3)
    two = next(v for v in paths if v.cardinality == 2)
    assert lo.satisfied(three.entries) and hi.satisfied(three.entries)
    assert lo.is_tight(two.entries)


# -- cardinality forcing ------------------------------------------------------------------------

def test_cf_node_cycle_example():
    D = build_complete_digraph(5)
    cf = I.cf_node(D, {1, 2, 3}, (2, 4))
    assert cf.rhs == 2
    for (u, v), a in zip(D.arcs, cf.coeffs):
        assert a == (1 if u in {1, 2, 3} else -1)
    assert cf.lhs(vec(D, walk_arcs((1, 2, 3), True))) == 3
    assert cf.is_tight(vec(D, [(1, 2), (2, 1)]))
    assert all(cf.satisfied(v.entries) for v in enumerate_cycles(D, (2, 4)))


def test_cf_node_path_example():
    D = build_path_digraph(6)
    cf = I.cf_node(D, {0, 1, 2, 6}, (2, 4))
    assert cf.rhs == 2
    assert set(cf.coeffs) == {1, -1}
    assert cf.lhs(vec(D, walk_arcs((0, 1, 2, 6), False))) == 3
    assert all(cf.satisfied(v.entries) for v in enumerate_paths(D, (2, 4)))


def test_cf_node_rejects_allowed_size():
    with pytest.raises(InvalidParameter):
        I.cf_node(build_complete_digraph(5), {1, 2, 3, 4}, (2, 4))
    with pytest.raises(InvalidParameter):
        I.cf_node(build_path_digraph(5), {1, 2, 3}, (2, 4))


def test_cf_arc_tightness():
    D = build_complete_digraph(5)
    c = (2, 5)
    F = [(1, 2), (2, 3), (3, 4)]
    cf = I.cf_arc(D, F, c)
    assert cf.lhs(vec(D, F)) == 3 * (5 - 3) > cf.rhs
    assert cf.is_tight(vec(D, F[:2]))
    H = F + [(4, 5), (5, 1)]
    assert cf.is_tight(vec(D, H))


def test_cardinality_subgraph_examples():
    D = build_complete_digraph(6)
    cs = I.cardinality_subgraph(D, {1, 2, 3, 4}, (2, 5))
    five = vec(D, walk_arcs((1, 2, 3, 4, 5), True))
    assert cs.lhs(five) == 2 * 3 - 1 * 2 == 4 == cs.rhs
    assert cs.is_tight(vec(D, [(1, 2), (2, 1)]))
    assert all(cs.satisfied(v.entries) for v in enumerate_cycles(D, (2, 5)))


# -- cut inequalities ---------------------------------------------------------------------------

def test_one_sided_min_cut_path():
    D = build_path_digraph(6)
    S = {0, 1, 2, 3, 6}
    ineq = I.one_sided_min_cut(D, S, 4)
    paths = enumerate_paths(D, (4, 5))
    for v in paths:
        assert ineq.satisfied(v.entries)
        if 4 not in v.walk and all(u in S for u in v.walk):
            assert ineq.is_tight(v.entries)
    verdict = facet_predicate("one_sided_min_cut", {"S": frozenset(S), "v": 4}, 6, (4, 5), "path")
    assert verdict.answer is Answer.TRUE


@pytest.mark.parametrize("c", [(2, 5), (3, 5), (4, 5)])
def test_min_cut_validity_threshold(c):
    D = build_path_digraph(5)
    poly = Polytope("path", 5, c)
    inner = [1, 2, 3, 4]
    for r in range(0, 4):
        for extra in itertools.combinations(inner, r):
            S = {0, 5, *extra}
            ineq = I.min_cut(D, S, c)
            res = is_valid(ineq, poly)
            assert res.valid == (len(S) <= c[0]) == ineq.valid
            if not res.valid:
                assert set(res.counterexample.walk) <= S


def test_min_cut_tight_example():
    D = build_path_digraph(6)
    S = {0, 6, 1}
    ineq = I.min_cut(D, S)
    assert ineq.is_tight(vec(D, walk_arcs((0, 1, 2, 6), False)))


def test_multiple_cycle_exclusion():
    D = build_complete_digraph(6)
    S, v, w = {1, 2, 3}, 1, 4
    ineq = I.multiple_cycle_exclusion(D, S, v, w)
    for cyc in enumerate_cycles(D, (2, 3, 4, 5, 6)):
        assert ineq.satisfied(cyc.entries)
        if set(cyc.walk) <= S and v in cyc.walk:
            assert ineq.is_tight(cyc.entries)
    assert facet_predicate("multi_cycle_excl", {"S": frozenset(S), "v": v, "w": w}, 6, (3, 4), "cycle").answer is Answer.TRUE
    assert facet_predicate("multi_cycle_excl", {"S": frozenset(S), "v": v, "w": w}, 6, (2, 6), "cycle").answer is Answer.FALSE


def test_odd_path_exclusion():
    D = build_path_digraph(6)
    S, T = {0, 2, 4}, {1, 3, 5, 6}
    ineq = I.parity_exclusion(D, S, T, "odd", (2, 4))
    for v in enumerate_paths(D, (2, 4)):
        assert ineq.satisfied(v.entries)
    # 0 -> 1 -> 2 -> 4 -> 6 alternates except for the inner S arc (2,4)
    assert ineq.is_tight(vec(D, walk_arcs((0, 1, 2, 4, 6), False)))
    # odd paths are cut off when they alternate
    assert not ineq.satisfied(vec(D, walk_arcs((0, 1, 2, 6), False)))


def test_parity_rejects_wrong_parity():
    with pytest.raises(InvalidParameter):
        I.parity_exclusion(build_path_digraph(5), {0, 1}, {2, 3, 4, 5}, "odd", (2, 3))


def test_modified_cf_example():
    D = build_complete_digraph(8)
    c = (2, 3, 5, 7)
    P, r = {1, 2, 3, 4}, 8
    Q = {5, 6, 7}
    ineq = I.modified_cf(D, P, Q, r, c, 2)
    for k in D.incident(r):
        assert ineq.coeffs[k] == 0
    assert ineq.lhs(vec(D, walk_arcs((1, 2, 3), True))) == 3 == ineq.rhs
    for cyc in enumerate_cycles(D, c):
        if r not in cyc.walk:
            assert ineq.satisfied(cyc.entries)


# -- class-wide properties ----------------------------------------------------------------------

def sweep_inequalities(n, per_sweep=2):
    for sid, spec in sorted(CATALOG.items()):
        seqs = admissible_sequences(sid, n)
        if not seqs:
            continue
        picks = seqs[:: max(1, len(seqs) // per_sweep)][:per_sweep]
        for c in picks:
            poly = Polytope(spec.variant, n, c)
            for tag, params in sweep_instances(sid, n, c):
                yield sid, spec, c, poly, build_instance(spec, poly.graph, c, tag, params)


@pytest.mark.parametrize("n", [5, 6])
def test_generators_valid_when_asserted(n):
    checked = 0
    for sid, spec, c, poly, ineq in sweep_inequalities(n):
        res = is_valid(ineq, poly)
        if ineq.valid is None or ineq.valid:
            assert res.valid, (sid, c, ineq.tag, ineq.params)
        else:
            assert not res.valid
        checked += 1
    assert checked > 150


def test_generators_valid_n7_sample():
    rng = random.Random(7)
    for sid in ("path-cf", "path-card-subgraph", "path-odd-excl", "cycle-cf", "cycle-multi-cycle-excl",
                "cycle-mcf", "path-one-sided-min-cut", "cycle-even-excl"):
        spec = CATALOG[sid]
        seqs = admissible_sequences(sid, 7)
        c = seqs[rng.randrange(len(seqs))]
        poly = Polytope(spec.variant, 7, c)
        insts = sweep_instances(sid, 7, c)
        for tag, params in rng.sample(insts, min(12, len(insts))):
            ineq = build_instance(spec, poly.graph, c, tag, params)
            if ineq.valid is not False:
                assert is_valid(ineq, poly).valid, (sid, c, params)


@pytest.mark.parametrize("n", [5, 6])
def test_regeneration_is_exact(n):
    for sid, spec, c, poly, ineq in sweep_inequalities(n):
        again = I.regenerate(ineq.tag, dict(ineq.params), n, ineq.c if ineq.c else c, poly.graph.kind)
        assert again.coeffs == ineq.coeffs and again.rhs == ineq.rhs and again.sense == ineq.sense
        assert again.key() == ineq.key()


def spanning_tree(D, rng):
    nodes = list(D.nodes)
    rng.shuffle(nodes)
    tree = []
    for k in range(1, len(nodes)):
        v = nodes[k]
        options = [(u, v) if D.has_arc(u, v) else (v, u) for u in nodes[:k] if D.has_arc(u, v) or D.has_arc(v, u)]
        if not options:
            return spanning_tree(D, rng)
        tree.append(options[rng.randrange(len(options))])
    return tree


@pytest.mark.parametrize("kind,c", [("path", (2, 4)), ("path", (3, 5)), ("cycle", (2, 4)), ("cycle", (3, 5))])
def test_normalize_preserves_slack(kind, c):
    rng = random.Random(11)
    D = build_graph(kind, 5)
    verts = Polytope(kind, 5, c).vertices
    for _ in range(15):
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in D.arcs]
        ineq = I.custom(D, coeffs, "<=", rng.randint(0, 4))
        tree = spanning_tree(D, rng)
        targets = {a: Fraction(rng.randint(-2, 2), rng.randint(1, 3)) for a in tree}
        out = I.normalize(ineq, tree, targets)
        for a, t in targets.items():
            assert out.coeffs[D.arc_index(*a)] == t
        for v in verts:
            assert out.rhs - out.lhs(v.entries) == ineq.rhs - ineq.lhs(v.entries)
        assert out.tag == "custom"


def test_normalize_identity_and_zero_tree():
    D = build_path_digraph(5)
    ineq = I.cf_node(D, {0, 1, 2, 5}, (2, 4))
    tree = [(0, i) for i in range(1, 5)] + [(1, 5)]
    same = I.normalize(ineq, tree, {a: ineq.coeffs[D.arc_index(*a)] for a in tree})
    assert same.coeffs == ineq.coeffs and same.rhs == ineq.rhs
    zero = I.normalize(ineq, tree, {a: 0 for a in tree})
    assert all(zero.coeffs[D.arc_index(*a)] == 0 for a in tree)
    tight_before = {v.walk for v in enumerate_paths(D, (2, 4)) if ineq.is_tight(v.entries)}
    tight_after = {v.walk for v in enumerate_paths(D, (2, 4)) if zero.is_tight(v.entries)}
    assert tight_before == tight_after


def test_symmetrize_degree():
    D = build_complete_digraph(5)
    sym = I.symmetrize(I.degree_constraint(D, 2), "symmetric")
    assert sym.rhs == 2
    assert support(sym) == {a: 1 for a in D.arcs if 2 in a}


def test_symmetrize_absent_for_odd_cycle_exclusion():
    D = build_complete_digraph(6)
    odd = I.parity_exclusion(D, {1, 2}, {3, 4, 5}, "odd", (2, 4))
    assert I.symmetrize(odd, "symmetric") is None


def test_pseudo_symmetrize_absent_for_modified_cf():
    D = build_complete_digraph(8)
    mcf = I.modified_cf(D, {1, 2, 3, 4}, {5, 6, 7}, 8, (2, 3, 5, 7))
    assert I.symmetrize(mcf, "pseudo_symmetric") is None


@pytest.mark.parametrize("kind,mode,c", [("cycle", "symmetric", (2, 4)), ("path", "pseudo_symmetric", (2, 4)),
                                         ("path", "pseudo_symmetric", (3, 5))])
def test_symmetrize_preserves_slack(kind, mode, c):
    rng = random.Random(5)
    D = build_graph(kind, 5)
    verts = Polytope(kind, 5, c).vertices
    found = 0
    for _ in range(40):
        # random potentials applied to a symmetric base guarantee consistency
        base = {}
        for (u, v) in D.arcs:
            base.setdefault(frozenset((u, v)), Fraction(rng.randint(-2, 2)))
        coeffs = [base[frozenset(a)] for a in D.arcs]
        lam = {i: Fraction(rng.randint(-3, 3)) for i in D.nodes}
        coeffs = [a + lam[u] - lam[v] for a, (u, v) in zip(coeffs, D.arcs)]
        ineq = I.custom(D, coeffs, "<=", rng.randint(0, 3))
        sym = I.symmetrize(ineq, mode)
        assert sym is not None
        found += 1
        ratio = None
        for v in verts:
            s0, s1 = ineq.rhs - ineq.lhs(v.entries), sym.rhs - sym.lhs(v.entries)
            if s0:
                ratio = ratio or s1 / s0
                assert s1 == ratio * s0 and ratio > 0
            else:
                assert s1 == 0
    assert found == 40


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=4), min_size=20, max_size=20))
def test_violation_sign(x):
    D = build_complete_digraph(5)
    ineq = I.cf_node(D, {1, 2, 3}, (2, 4))
    assert (ineq.violation(x) > 0) == (not ineq.satisfied(x))
    le, b = ineq.as_le()
    assert ineq.violation(x) == sum(a * v for a, v in zip(le, x)) - b


def test_describe_uses_variable_names():
    assert "x1,2" in I.degree_constraint(build_complete_digraph(3), 1).describe()
    assert "y" in I.degree_constraint(build_graph("ucycle", 4), 1).describe()
