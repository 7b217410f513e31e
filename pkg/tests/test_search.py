from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pauliscope.graph import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    hypercube,
    induced_subgraph,
    line_graph,
    petersen_graph,
    rook_graph,
)
from pauliscope.search import (
    SearchLimitError,
    all_min_vertex_covers,
    apply_mapping,
    chromatic_number,
    clique_number,
    exact_cover,
    is_clique,
    is_independent,
    is_isomorphic,
    max_independent_sets,
    maximal_cliques,
    maximum_cliques,
    min_vertex_cover,
)
from test_graph import graphs, to_nx


@given(graphs(max_v=12))
def test_maximal_cliques_match_networkx(g):
    ours = {tuple(c.sorted()) for c in maximal_cliques(g)}
    theirs = {tuple(sorted(c)) for c in nx.find_cliques(to_nx(g))} if g.v else set()
    assert ours == theirs


@given(graphs(max_v=12))
def test_clique_number_matches_networkx(g):
    expected = max((len(c) for c in nx.find_cliques(to_nx(g))), default=0)
    assert clique_number(g) == expected


@given(graphs(max_v=11))
def test_maximum_cliques_enumeration_is_complete(g):
    size, sets = maximum_cliques(g, enumerate_all=True)
    brute = {
        c for k in [size] for c in combinations(range(g.v), k) if is_clique(g, c)
    }
    assert {tuple(s.sorted()) for s in sets} == brute


@given(graphs(max_v=11))
def test_independence_cover_duality(g):
    ind = max_independent_sets(g, enumerate_all=True)
    cover = min_vertex_cover(g)
    assert ind.size + len(cover.cover) == g.v
    for w in ind.witnesses:
        assert is_independent(g, w)
    assert is_independent(g, cover.cover.complement())
    for i, j in g.edges():
        assert i in cover.cover or j in cover.cover
    covers = all_min_vertex_covers(g)
    assert covers[0] == cover.cover


def _brute_chromatic(g: Graph) -> int:
    for k in range(1, g.v + 1):
        for colouring in _colourings(g.v, k):
            if all(colouring[i] != colouring[j] for i, j in g.edges()):
                return k
    return 0


def _colourings(n, k):
    if n == 0:
        yield ()
        return
    for rest in _colourings(n - 1, k):
        for c in range(k):
            yield rest + (c,)


@given(graphs(max_v=7))
def test_chromatic_number_matches_brute_force(g):
    assert chromatic_number(g) == _brute_chromatic(g)


@pytest.mark.parametrize(
    "g, chi",
    [(petersen_graph(), 3), (hypercube(3), 2), (complete_graph(5), 5), (cycle_graph(5), 3), (rook_graph(3, 3), 3)],
)
def test_chromatic_numbers_of_named_graphs(g, chi):
    assert chromatic_number(g) == chi


def test_chromatic_cap():
    with pytest.raises(SearchLimitError):
        chromatic_number(hypercube(7))


def test_independence_cap():
    with pytest.raises(SearchLimitError):
        max_independent_sets(hypercube(8))


@given(graphs(max_v=9), st.randoms(use_true_random=False))
def test_isomorphic_to_relabelled_copy(g, rng):
    perm = list(range(g.v))
    rng.shuffle(perm)
    h = Graph(apply_mapping(g, dict(enumerate(perm))))
    ok, mapping = is_isomorphic(g, h)
    assert ok
    assert Graph(apply_mapping(g, mapping)).same_adjacency(h)


@given(graphs(max_v=8), graphs(max_v=8))
def test_isomorphism_matches_networkx(g, h):
    assert is_isomorphic(g, h)[0] == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_isomorphism_on_regular_graphs():
    # same degree sequence and spectrum-level coarse data, different graphs
    assert not is_isomorphic(rook_graph(4, 4), Graph.from_edges(16, _shrikhande_edges()))[0]
    assert is_isomorphic(complement(line_graph(complete_graph(5))), petersen_graph())[0]


def _shrikhande_edges():
    cells = [(a, b) for a in range(4) for b in range(4)]
    steps = {(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)}
    return [
        (i, j)
        for i, j in combinations(range(16), 2)
        if ((cells[j][0] - cells[i][0]) % 4, (cells[j][1] - cells[i][1]) % 4) in steps
    ]


def test_isomorphism_cap():
    big = Graph([0] * 301)
    with pytest.raises(SearchLimitError):
        is_isomorphic(big, big)


def test_exact_cover_textbook_instance():
    subsets = {
        "A": {1, 4, 7},
        "B": {1, 4},
        "C": {4, 5, 7},
        "D": {3, 5, 6},
        "E": {2, 3, 6, 7},
        "F": {2, 7},
    }
    assert [sorted(s) for s in exact_cover(range(1, 8), subsets)] == [["B", "D", "F"]]


def test_exact_cover_enumerates_all_and_is_deterministic():
    rng = random.Random(3)
    universe = list(range(8))
    subsets = {k: set(rng.sample(universe, rng.randint(1, 3))) for k in range(30)}
    first = list(exact_cover(universe, subsets))
    assert first == list(exact_cover(universe, subsets))
    for sol in first:
        covered = [x for k in sol for x in subsets[k]]
        assert sorted(covered) == universe
    brute = [
        set(c)
        for r in range(1, 9)
        for c in combinations(subsets, r)
        if sorted(x for k in c for x in subsets[k]) == universe
    ]
    assert sorted(map(sorted, brute)) == sorted(map(sorted, first))


def test_p22_cover_is_petersen(p22):
    cover = min_vertex_cover(p22)
    assert len(cover.cover) == 10
    assert is_isomorphic(cover.subgraph, petersen_graph())[0]
    assert induced_subgraph(p22, cover.cover).e == 15
