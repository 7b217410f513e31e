"""Two qutrits: the Pauli graph P[3,2], its forty maximally commuting sets and their dual graph.

The dual graph W9 has the maximally commuting sets (MCSs) as vertices and
joins two of them when they share an operator. It turns out to be
srg(40,12,2,4), the collinearity graph of a generalized quadrangle of
order three, and the hyperplane-like partitions below are all checked on it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .graph import Graph, VertexSet, hypercube, induced_subgraph, rook_graph
from .operators import build_pauli_graph, from_label, index_of, multiply
from .quadrangle import PointLineGeometry
from .search import exact_cover, is_independent, is_isomorphic, max_independent_sets, maximal_cliques
from .spectral import Spectrum, SrgCheck, spectrum, verify_srg

_RAW_MCS = """
L1 1 5 a 9 13 e 41 45
L2 2 6 a 10 14 e 42 46
L3 3 7 a 11 15 e 43 47
L4 4 8 a 12 16 e 44 48
M1 1 5 b 17 21 f 49 53
M2 2 6 b 18 22 f 50 54
M3 3 7 b 19 23 f 51 55
M4 4 8 b 20 24 f 52 56
N1 1 5 c 25 29 g 57 61
N2 2 6 c 26 30 g 58 62
N3 3 7 c 27 31 g 59 63
N4 4 8 c 28 32 g 60 64
P1 1 5 d 33 37 h 65 69
P2 2 6 d 34 38 h 66 70
P3 3 7 d 35 39 h 67 71
P4 4 8 d 36 40 h 68 72
X1 9 22 32 39 45 50 60 67
X2 10 17 27 40 46 53 63 68
X3 11 20 30 33 47 56 58 69
X4 12 23 25 34 48 51 61 70
X5 13 18 28 35 41 54 64 71
X6 14 21 31 36 42 49 59 72
X7 15 24 26 37 43 52 62 65
X8 16 19 29 38 44 55 57 66
Y1 9 23 30 40 45 51 58 68
Y2 10 19 32 33 46 55 60 69
Y3 11 22 25 36 47 50 61 72
Y4 12 17 26 39 48 53 62 67
Y5 13 20 27 34 41 56 63 70
Y6 14 23 28 37 42 51 64 65
Y7 15 18 29 40 43 54 57 68
Y8 16 21 30 35 44 49 58 71
Z1 9 24 31 38 45 52 59 66
Z2 10 24 25 35 46 52 61 71
Z3 11 17 28 38 47 53 64 66
Z4 12 18 31 33 48 54 59 69
Z5 13 19 26 36 41 55 62 72
Z6 14 20 29 39 42 56 57 67
Z7 15 21 32 34 43 49 60 70
Z8 16 22 27 37 44 50 63 65
"""

MCS_LIST: dict[str, frozenset[str]] = {
    row.split()[0]: frozenset(row.split()[1:]) for row in _RAW_MCS.strip().splitlines()
}
MCS_NAMES: tuple[str, ...] = tuple(MCS_LIST)

LISTED_OVOID = ("L1", "M2", "N3", "P4", "X3", "X8", "Y4", "Y6", "Z2", "Z7")


def _label_key(label: str) -> tuple[int, str]:
    return (0, f"{int(label):03d}") if label.isdigit() else (1, label)


def sorted_labels(labels) -> list[str]:
    return sorted(labels, key=_label_key)


# ---------------------------------------------------------------------------
# P9 itself


@dataclass
class P9Report:
    v: int
    e: int
    degrees: set[int]
    spectrum: Spectrum
    srg: SrgCheck

    @property
    def ok(self) -> bool:
        return (
            self.v == 80
            and self.degrees == {25}
            and self.spectrum == {-7: 15, -1: 40, 5: 24, 25: 1}
            and not self.srg.strongly_regular
        )


def p9_graph() -> Graph:
    return build_pauli_graph(3, 2)


def p9_analysis() -> P9Report:
    g = p9_graph()
    return P9Report(g.v, g.e, set(g.degrees()), spectrum(g), verify_srg(g))


# ---------------------------------------------------------------------------
# Maximally commuting sets


@dataclass
class McsMatch:
    enumerated: list[frozenset[str]]
    missing: dict[str, frozenset[str]]  # listed but not found
    extra: list[frozenset[str]]  # found but not listed
    incidences: dict[str, int]  # operator -> number of listed sets containing it

    @property
    def ok(self) -> bool:
        return (
            len(self.enumerated) == 40
            and all(len(s) == 8 for s in self.enumerated)
            and not self.missing
            and not self.extra
            and set(self.incidences.values()) == {4}
        )

    def differences(self) -> list[str]:
        out = [f"{name}: listed {sorted_labels(s)} is not a maximal commuting set" for name, s in self.missing.items()]
        out += [f"unlisted maximal commuting set {sorted_labels(s)}" for s in self.extra]
        return out


@lru_cache(maxsize=None)
def _enumerated() -> tuple[frozenset[str], ...]:
    g = p9_graph()
    return tuple(frozenset(c.labels(g)) for c in maximal_cliques(g))


def enumerate_mcs() -> McsMatch:
    found = list(_enumerated())
    listed = set(MCS_LIST.values())
    missing = {name: s for name, s in MCS_LIST.items() if s not in set(found)}
    extra = [s for s in found if s not in listed]
    counts: dict[str, int] = {}
    for s in MCS_LIST.values():
        for x in s:
            counts[x] = counts.get(x, 0) + 1
    return McsMatch(found, missing, extra, counts)


def is_isotropic_subspace(labels) -> bool:
    """Do the operators, with the identity, form a group up to phase?"""
    ops = [from_label(x, 3, 2) for x in labels]
    members = {index_of(op) for op in ops}
    for p in ops:
        for q in ops:
            r = multiply(p, q)
            if not r.is_identity and index_of(r) not in members:
                return False
    return True


# ---------------------------------------------------------------------------
# The dual graph W9


@lru_cache(maxsize=None)
def dual_graph() -> Graph:
    sets = [MCS_LIST[n] for n in MCS_NAMES]
    edges = [(i, j) for i, j in combinations(range(len(sets)), 2) if sets[i] & sets[j]]
    return Graph.from_edges(len(sets), edges, MCS_NAMES)


@dataclass
class DualReport:
    degrees: set[int]
    srg: SrgCheck
    spectrum: Spectrum
    lines: int
    points_per_line: set[int]
    lines_per_point: set[int]
    gq_axiom: bool

    @property
    def ok(self) -> bool:
        p = self.srg.params
        return (
            self.srg.strongly_regular
            and (p.v, p.D, p.lam, p.mu) == (40, 12, 2, 4)
            and self.spectrum == {-4: 15, 2: 24, 12: 1}
            and self.lines == 40
            and self.points_per_line == {4}
            and self.lines_per_point == {4}
            and self.gq_axiom
        )


def w9_geometry() -> PointLineGeometry:
    """Lines recovered as the maximal cliques of W9."""
    g = dual_graph()
    lines = tuple(tuple(c.sorted()) for c in maximal_cliques(g))
    return PointLineGeometry(g.labels, lines)


def dual_analysis() -> DualReport:
    g = dual_graph()
    geom = w9_geometry()
    return DualReport(
        set(g.degrees()),
        verify_srg(g),
        spectrum(g),
        len(geom.lines),
        {len(line) for line in geom.lines},
        {len(geom.lines_through(p)) for p in range(geom.v)},
        geom.is_near_linear() and geom.gq_axiom(),
    )


def shared_operators(names) -> frozenset[str]:
    out = None
    for n in names:
        out = MCS_LIST[n] if out is None else out & MCS_LIST[n]
    return out or frozenset()


# ---------------------------------------------------------------------------
# Hyperplanes of W9


def _names(g: Graph, idx) -> list[str]:
    return [g.labels[i] for i in idx]


@lru_cache(maxsize=None)
def ovoids() -> tuple[tuple[str, ...], ...]:
    """Every maximum independent set of W9, as tuples of names."""
    g = dual_graph()
    found = max_independent_sets(g, enumerate_all=True)
    return tuple(tuple(_names(g, s.sorted())) for s in found.witnesses)


def is_spread_of_p9(names) -> bool:
    covered: list[str] = []
    for n in names:
        covered.extend(MCS_LIST[n])
    return len(covered) == 80 and len(set(covered)) == 80


@dataclass
class PerpDecomposition:
    reference: str
    perp: list[str]
    ovoids: list[list[str]]

    @property
    def ok(self) -> bool:
        if len(self.perp) != 12 or len(self.ovoids) != 3:
            return False
        sets = [set(o) for o in self.ovoids]
        pairwise = all(a & b == {self.reference} for a, b in combinations(sets, 2))
        covered = set().union(*sets) | set(self.perp)
        return pairwise and len(covered) == 40


def perp_decomposition(reference: str) -> PerpDecomposition:
    """The 12 neighbors of ``reference`` and three ovoids covering the other 27 vertices."""
    g = dual_graph()
    r = g.index(reference)
    perp = _names(g, g.neighbors(r))
    far = [x for x in g.labels if x != reference and x not in perp]
    through = {k: [x for x in o if x != reference] for k, o in enumerate(ovoids()) if reference in o}
    for sol in exact_cover(far, through):
        chosen = [sorted(ovoids()[k], key=MCS_NAMES.index) for k in sorted(sol)]
        return PerpDecomposition(reference, perp, chosen)
    return PerpDecomposition(reference, perp, [])


@dataclass
class HyperplaneReport:
    grid_ok: bool
    coclique_ok: bool
    hypercube_ok: bool
    independence_number: int
    listed_ovoid_ok: bool
    ovoid_count: int
    ovoids_are_spreads: bool
    perp_ok: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.grid_ok
            and self.coclique_ok
            and self.hypercube_ok
            and self.independence_number == 10
            and self.listed_ovoid_ok
            and self.ovoids_are_spreads
            and bool(self.perp_ok)
            and all(self.perp_ok.values())
        )


def _group(letter: str) -> list[str]:
    return [n for n in MCS_NAMES if n[0] in letter]


def w9_hyperplanes(references=None) -> HyperplaneReport:
    g = dual_graph()
    grid = induced_subgraph(g, VertexSet.of(g, _group("LMNP")))
    cube = induced_subgraph(g, VertexSet.of(g, _group("YZ")))
    all_ovoids = ovoids()
    if references is None:
        references = MCS_NAMES
    return HyperplaneReport(
        grid_ok=is_isomorphic(grid, rook_graph(4, 4))[0],
        coclique_ok=is_independent(g, g.indices(_group("X"))),
        hypercube_ok=is_isomorphic(cube, hypercube(4))[0],
        independence_number=len(all_ovoids[0]) if all_ovoids else 0,
        listed_ovoid_ok=is_independent(g, g.indices(LISTED_OVOID)) and len(LISTED_OVOID) == len(all_ovoids[0]),
        ovoid_count=len(all_ovoids),
        ovoids_are_spreads=all(is_spread_of_p9(o) for o in all_ovoids),
        perp_ok={ref: perp_decomposition(ref).ok for ref in references},
    )


# ---------------------------------------------------------------------------
# The tripartite partition


@dataclass
class Tripartite:
    ovoid: list[str]
    pivot: str  # member of the ovoid whose neighbors give the triangles
    cocliques: list[list[str]]
    triangles: list[list[str]]
    shared_pairs: list[list[str]]

    @property
    def sizes(self) -> tuple[int, ...]:
        return (len(self.ovoid), *(len(c) for c in self.cocliques), *(len(t) for t in self.triangles))

    @property
    def ok(self) -> bool:
        g = dual_graph()
        covered = self.ovoid + [x for c in self.cocliques for x in c] + [x for t in self.triangles for x in t]
        union = set().union(*map(set, self.shared_pairs)) if self.shared_pairs else set()
        return (
            len(covered) == 40
            and set(covered) == set(MCS_NAMES)
            and len(self.ovoid) == 10
            and sorted(len(c) for c in self.cocliques) == [9, 9]
            and len(self.triangles) == 4
            and all(is_independent(g, g.indices(c)) for c in [self.ovoid, *self.cocliques])
            and all(len(t) == 3 and all(g.has_edge(*g.indices(p)) for p in combinations(t, 2)) for t in self.triangles)
            and all(len(p) == 2 for p in self.shared_pairs)
            and union in set(MCS_LIST.values())
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "ovoid": self.ovoid,
                "cocliques": self.cocliques,
                "triangles": self.triangles,
                "shared_operators": [sorted_labels(p) for p in self.shared_pairs],
            }
        )


def _two_colouring(g: Graph, members: list[int]) -> list[list[int]] | None:
    side = {}
    for start in members:
        if start in side:
            continue
        side[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w not in members:
                    continue
                if w not in side:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    return [sorted(u for u in members if side[u] == k) for k in (0, 1)]


def _triangles_around(g: Graph, pivot: int) -> list[list[int]] | None:
    geom = w9_geometry()
    lines = [[p for p in line if p != pivot] for line in geom.lines_through(pivot)]
    return lines if len(lines) == 4 and all(len(t) == 3 for t in lines) else None


def w9_tripartite(ovoid=LISTED_OVOID) -> Tripartite | None:
    """A 10-coclique, two 9-cocliques and four triangles.

    The triangles are the four lines through one ovoid member with that
    member removed; the 18 leftover vertices must split into two cocliques.
    Candidates are tried in a fixed order: the given ovoid first, then all others.
    """
    g = dual_graph()
    candidates = [tuple(ovoid)] + [o for o in ovoids() if set(o) != set(ovoid)]
    for ov in candidates:
        ov_idx = g.indices(ov)
        for pivot in ov_idx:
            tris = _triangles_around(g, pivot)
            if tris is None:
                continue
            used = set(ov_idx) | {x for t in tris for x in t}
            rest = [u for u in range(g.v) if u not in used]
            parts = _two_colouring(g, rest)
            if parts is None or sorted(map(len, parts)) != [9, 9]:
                continue
            triangles = [_names(g, t) for t in tris]
            return Tripartite(
                list(ov),
                g.labels[pivot],
                [_names(g, p) for p in parts],
                triangles,
                [sorted_labels(shared_operators(t)) for t in triangles],
            )
    return None


def mcs_json() -> str:
    return json.dumps({name: sorted_labels(s) for name, s in MCS_LIST.items()})

