from __future__ import annotations

import json
from itertools import combinations

import numpy as np
import pytest

from pauliscope import qutrit as qt
from pauliscope.graph import VertexSet
from pauliscope.operators import canonical_labels, commutes, from_label
from pauliscope.search import is_independent, maximal_cliques


def test_p9_report():
    rep = qt.p9_analysis()
    assert rep.ok
    assert (rep.v, rep.e) == (80, 1000)
    assert rep.degrees == {25}
    assert rep.spectrum == {-7: 15, -1: 40, 5: 24, 25: 1}
    assert not rep.srg.strongly_regular


def test_listed_sets_are_commuting_subspaces():
    for name, labels in qt.MCS_LIST.items():
        assert len(labels) == 8, name
        ops = [from_label(x, 3, 2) for x in labels]
        assert all(commutes(p, q) for p, q in combinations(ops, 2)), name
        assert qt.is_isotropic_subspace(labels), name


def test_non_subspace_is_detected():
    assert not qt.is_isotropic_subspace(["1", "a"])  # Z x I and I x Z generate more


def test_enumerated_sets_equal_the_listed_ones():
    match = qt.enumerate_mcs()
    assert match.ok and not match.differences()
    assert set(match.incidences.values()) == {4}
    assert set(match.incidences) == set(canonical_labels(3, 2))


def test_maximal_cliques_of_p9():
    g = qt.p9_graph()
    cliques = maximal_cliques(g)
    assert {frozenset(c.labels(g)) for c in cliques} == set(qt.MCS_LIST.values())


def test_dual_graph_identity():
    g = qt.dual_graph()
    a = np.array(g.adjacency_matrix())
    n = g.v
    assert np.array_equal(a @ a + 2 * a - 8 * np.eye(n, dtype=int), 4 * np.ones((n, n), dtype=int))


def test_dual_report():
    rep = qt.dual_analysis()
    assert rep.ok
    assert rep.lines == 40 and rep.points_per_line == {4} and rep.lines_per_point == {4}


def test_neighbors_of_l1():
    g = qt.dual_graph()
    assert [g.labels[w] for w in g.neighbors(g.index("L1"))] == [
        "L2", "L3", "L4", "M1", "N1", "P1", "X1", "X5", "Y1", "Y5", "Z1", "Z5",
    ]


def test_lines_share_a_common_operator():
    geom = qt.w9_geometry()
    for line in geom.lines:
        assert len(qt.shared_operators(geom.names(line))) == 2


def test_ovoids():
    ovs = qt.ovoids()
    g = qt.dual_graph()
    assert len(ovs) == 36
    assert all(len(o) == 10 and is_independent(g, g.indices(o)) for o in ovs)
    assert all(qt.is_spread_of_p9(o) for o in ovs)
    assert set(qt.LISTED_OVOID) in [set(o) for o in ovs]
    assert not qt.is_spread_of_p9(["L1", "L2"])


@pytest.mark.parametrize("ref", ["L1", "X3", "Z8"])
def test_perp_decomposition(ref):
    dec = qt.perp_decomposition(ref)
    assert dec.ok
    assert all(ref in o for o in dec.ovoids)


def test_hyperplanes_of_w9():
    rep = qt.w9_hyperplanes(references=["L1", "Y4"])
    assert rep.ok
    assert rep.independence_number == 10 and rep.ovoid_count == 36


def test_tripartite_partition():
    tri = qt.w9_tripartite()
    assert tri.ok
    assert tri.sizes == (10, 9, 9, 3, 3, 3, 3)
    assert tri.pivot == "L1"
    assert tri.triangles == [["L2", "L3", "L4"], ["M1", "N1", "P1"], ["X1", "Y1", "Z1"], ["X5", "Y5", "Z5"]]
    assert tri.shared_pairs == [["a", "e"], ["1", "5"], ["9", "45"], ["13", "41"]]
    data = json.loads(tri.to_json())
    assert len(data["triangles"]) == 4


def test_tripartite_for_every_ovoid():
    g = qt.dual_graph()
    for ov in qt.ovoids()[:6]:
        tri = qt.w9_tripartite(ov)
        assert tri is not None and tri.ok
        assert set(tri.ovoid) == set(ov)
        assert len(VertexSet.of(g, tri.ovoid)) == 10


def test_mcs_json():
    data = json.loads(qt.mcs_json())
    assert len(data) == 40
    assert data["L1"] == ["1", "5", "9", "13", "41", "45", "a", "e"]
