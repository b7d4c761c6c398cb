import itertools

import pytest

from cardpoly import InvalidParameter
from cardpoly import inequalities as I
from cardpoly.facets import Answer, facet_predicate
from cardpoly.model import build_complete_digraph, build_graph, build_path_digraph
from cardpoly.verify import (CATALOG, Polytope, admissible_sequences, certified_facets, is_facet, is_valid,
                             polytope_dimension, sweep_ids, sweep_instances, sweep_theorem)


def path_sequences(n):
    """Cardinality sequences with m >= 2, 2 <= c_1, c_m <= n and c != (2,3)."""
    for r in range(2, n):
        for c in itertools.combinations(range(2, n + 1), r):
            if c != (2, 3):
                yield c


def test_dimension_examples():
    assert polytope_dimension(3, (2, 3), "cycle") == 4
    assert polytope_dimension(4, (3,), "cycle") == 6
    assert polytope_dimension(build_complete_digraph(4), (2, 3, 4)) == 9


@pytest.mark.parametrize("n", [4, 5, 6])
def test_cycle_dimension(n):
    for r in range(2, n):
        for c in itertools.combinations(range(2, n + 1), r):
            assert polytope_dimension(n, c, "cycle") == (n - 1) ** 2


@pytest.mark.parametrize("n", [4, 5, 6])
def test_single_cardinality_cycle_dimension(n):
    arcs = n * (n - 1)
    for k in range(2, n + 1):
        if k == 2:
            expected = arcs // 2 - 1
        elif k == n:
            expected = n * n - 3 * n + 1
        elif n >= 5:
            expected = n * n - 2 * n
        else:
            expected = 6  # k = 3 on four nodes
        assert polytope_dimension(n, (k,), "cycle") == expected


@pytest.mark.parametrize("n", [4, 5, 6])
def test_path_dimension(n):
    for c in path_sequences(n):
        assert polytope_dimension(n, c, "path") == n * n - 2 * n


@pytest.mark.parametrize("n", [4, 5])
def test_undirected_dimensions(n):
    E_path = len(build_graph("upath", n).arcs)
    E_cycle = len(build_graph("ucycle", n).arcs)
    for c in path_sequences(n):
        assert polytope_dimension(n, c, "upath") == E_path - 3
    for r in range(2, n):
        for c in itertools.combinations(range(3, n + 1), r):
            assert polytope_dimension(n, c, "ucycle") == E_cycle


def test_empty_polytope_dimension():
    assert polytope_dimension(4, (1,), "path") == -1
    with pytest.raises(InvalidParameter):
        polytope_dimension(4, (5,), "path")


def test_through_one_face_matches_path_dimension():
    # node 1 of D_n plays both endpoints 0 and n of the path digraph on the same n
    for n, c in [(5, (2, 4)), (5, (3, 5)), (6, (2, 4, 6)), (6, (3, 5))]:
        assert polytope_dimension(n, c, "pstar") == polytope_dimension(n, c, "path")
        assert len(Polytope("pstar", n, c)) == len(Polytope("path", n, c))


def test_is_valid_examples():
    D = build_path_digraph(5)
    poly = Polytope("path", 5, (3, 5))
    for i in D.internal_nodes:
        assert is_valid(I.degree_constraint(D, i), poly).valid
    for i in D.nodes:
        assert is_valid(I.flow_conservation(D, i), poly).valid
    bad = is_valid(I.min_cut(D, {0, 5, 1, 2}), poly)
    assert not bad.valid
    assert set(bad.counterexample.walk) <= {0, 5, 1, 2}


def test_is_facet_examples():
    D = build_complete_digraph(5)
    poly = Polytope("cycle", 5, (2, 3))
    assert all(is_facet(I.degree_constraint(D, i), poly) for i in D.nodes)
    dominated = I.cf_node(D, {1, 2, 3}, (2, 4))  # |W| + 1 = c_(p+1) < n
    assert not is_facet(dominated, Polytope("cycle", 5, (2, 4)))
    P = build_path_digraph(6)
    for c, facet in [((4, 6), True), ((5, 6), True), ((2, 6), False), ((3, 6), False)]:
        lo = I.cardinality_bounds(P, c)[0]
        assert is_facet(lo, Polytope("path", 6, c)) == facet


def test_is_facet_rejects_invalid():
    D = build_path_digraph(5)
    with pytest.raises(InvalidParameter):
        is_facet(I.min_cut(D, {0, 5, 1, 2}), Polytope("path", 5, (3, 5)))


def test_facet_predicate_examples():
    v = facet_predicate("cf_node", {"W": frozenset({1, 2, 3, 4}), "p": 1}, 5, (2, 5), "cycle")
    assert v.answer is Answer.TRUE
    v = facet_predicate("cf_node", {"W": frozenset({1, 2, 3}), "p": 1}, 5, (2, 4), "cycle")
    assert v.answer is Answer.FALSE
    v = facet_predicate("degree", {"i": 2}, 6, (2, 6), "path")
    assert v.answer is Answer.UNKNOWN
    with pytest.raises(ValueError):
        bool(v)


def test_sweep_min_cut_example():
    rep = sweep_theorem("path-min-cut", 6, (4, 5))
    assert rep.records and not rep.disagreements


def test_sweep_cycle_cf_example():
    rep = sweep_theorem("cycle-cf", 6, (2, 4))
    assert rep.records and not rep.disagreements


def test_sweep_resolves_unknown_regimes():
    rep = sweep_theorem("path-degree", 6, (2, 6))
    assert rep.unknown
    assert all(isinstance(r.facet, bool) for r in rep.unknown)
    s = rep.summary()
    assert s["unknown"] == len(rep.unknown) and s["instances"] == len(rep.records)


def test_sweep_records_facets_are_valid():
    for sid in ("path-one-sided-min-cut", "path-min-cut", "cycle-min-cut", "cycle-multi-cycle-excl"):
        for c in admissible_sequences(sid, 5):
            for r in sweep_theorem(sid, 5, c).records:
                assert r.valid or not r.facet


def test_sweep_is_deterministic():
    a = sweep_theorem("cycle-card-subgraph", 6, (2, 5))
    b = sweep_theorem("cycle-card-subgraph", 6, (2, 5))
    assert [(r.tag, r.params, r.facet) for r in a.records] == [(r.tag, r.params, r.facet) for r in b.records]


def test_canonical_sweep_matches_full_sweep():
    for sid in ("path-cf", "cycle-cf", "path-odd-excl", "cycle-multi-cycle-excl", "upath-one-sided-min-cut"):
        for c in admissible_sequences(sid, 5)[:3]:
            canon = sweep_theorem(sid, 5, c)
            full = sweep_theorem(sid, 5, c, canonical=False)
            assert len(full.records) >= len(canon.records)
            assert bool(full.disagreements) == bool(canon.disagreements)
            assert ({r.facet for r in full.records} == {r.facet for r in canon.records})


def test_sweep_rejects_bad_input():
    with pytest.raises(InvalidParameter):
        sweep_theorem("no-such-sweep", 5, (2, 4))
    with pytest.raises(InvalidParameter):
        sweep_theorem("cycle-mcf", 5, (2, 4))


def test_catalog_covers_every_variant():
    variants = {CATALOG[s].variant for s in sweep_ids()}
    assert variants == {"path", "cycle", "upath", "ucycle", "pstar"}


def test_certified_facets():
    rep = sweep_theorem("path-degree", 5, (3, 5))
    assert len(list(certified_facets(rep))) == sum(r.facet for r in rep.records) == 1
    full = sweep_theorem("path-degree", 5, (3, 5), canonical=False)
    assert len(list(certified_facets(full))) == 4
