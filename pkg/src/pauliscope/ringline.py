"""Projective lines over the ring of 2x2 binary matrices and its order-four subrings.

Ring elements carry the primed labels 0'..15'. A point of the line is a
unit class of admissible pairs; two points are neighbors when the stacked
2x2 matrix over the ring is not invertible. Neighbor plays the role of
commuting.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .graph import Graph, VertexSet, induced_subgraph
from .operators import build_pauli_graph, canonical_labels, canonical_operators, multiply, relative_phase
from .polar import symplectic_space
from .search import is_isomorphic

LABEL_MATRICES: dict[int, tuple[tuple[int, int], tuple[int, int]]] = {
    0: ((0, 0), (0, 0)),
    1: ((1, 0), (0, 1)),
    2: ((0, 1), (1, 0)),
    3: ((1, 1), (1, 1)),
    4: ((0, 0), (1, 1)),
    5: ((1, 0), (1, 0)),
    6: ((0, 1), (0, 1)),
    7: ((1, 1), (0, 0)),
    8: ((0, 1), (0, 0)),
    9: ((1, 1), (0, 1)),
    10: ((0, 0), (1, 0)),
    11: ((1, 0), (1, 1)),
    12: ((0, 1), (1, 1)),
    13: ((1, 1), (1, 0)),
    14: ((0, 0), (0, 1)),
    15: ((1, 0), (0, 0)),
}
_MATRIX_LABELS = {m: k for k, m in LABEL_MATRICES.items()}

FULL = "M2(Z2)"
SUBRING_LABELS: dict[str, tuple[int, ...]] = {
    FULL: tuple(range(16)),
    "F4": (0, 1, 12, 13),
    "Z2[x]/x^2": (0, 1, 8, 9),
    "Z2xZ2": (0, 1, 14, 15),
}
RING_NAMES = tuple(SUBRING_LABELS)


class RingError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class RingElement:
    label: int

    def __post_init__(self):
        if self.label not in LABEL_MATRICES:
            raise RingError(f"no ring element {self.label}'")

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return LABEL_MATRICES[self.label]

    def __add__(self, other: RingElement) -> RingElement:
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        return RingElement(_MATRIX_LABELS[((a ^ e, b ^ f), (c ^ g, d ^ h))])

    def __mul__(self, other: RingElement) -> RingElement:
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        m = (((a * e + b * g) & 1, (a * f + b * h) & 1), ((c * e + d * g) & 1, (c * f + d * h) & 1))
        return RingElement(_MATRIX_LABELS[m])

    @property
    def determinant(self) -> int:
        (a, b), (c, d) = self.matrix
        return (a * d + b * c) & 1

    def is_unit(self) -> bool:
        return self.determinant == 1

    def __str__(self) -> str:
        return f"{self.label}'"


ZERO, ONE = RingElement(0), RingElement(1)


def element(label: int | str) -> RingElement:
    return RingElement(int(str(label).rstrip("'′")))


@dataclass(frozen=True)
class Ring:
    name: str
    elements: tuple[RingElement, ...]

    @property
    def units(self) -> tuple[RingElement, ...]:
        return tuple(x for x in self.elements if x.is_unit())

    @property
    def zero_divisors(self) -> tuple[RingElement, ...]:
        """Non-units, zero included (in a finite ring these are exactly the zero-divisors)."""
        return tuple(x for x in self.elements if not x.is_unit())

    def add_table(self) -> list[list[int]]:
        return [[(x + y).label for y in self.elements] for x in self.elements]

    def mul_table(self) -> list[list[int]]:
        return [[(x * y).label for y in self.elements] for x in self.elements]

    def is_commutative(self) -> bool:
        return all(x * y == y * x for x in self.elements for y in self.elements)

    def to_json(self) -> str:
        names = [str(x) for x in self.elements]
        return json.dumps(
            {
                "ring": self.name,
                "elements": names,
                "addition": [[f"{k}'" for k in row] for row in self.add_table()],
                "multiplication": [[f"{k}'" for k in row] for row in self.mul_table()],
                "units": [str(x) for x in self.units],
                "zero_divisors": [str(x) for x in self.zero_divisors],
            },
            ensure_ascii=False,
        )


@lru_cache(maxsize=None)
def build_ring(which: str = FULL) -> Ring:
    if which not in SUBRING_LABELS:
        raise RingError(f"unknown ring {which!r}; choose from {', '.join(RING_NAMES)}")
    elems = tuple(RingElement(k) for k in sorted(SUBRING_LABELS[which]))
    members = set(elems)
    if ZERO not in members or ONE not in members:
        raise RingError(f"{which} lacks an identity")
    for x in elems:
        for y in elems:
            if x + y not in members or x * y not in members:
                raise RingError(f"{which} is not closed at ({x}, {y})")
    return Ring(which, elems)


# ---------------------------------------------------------------------------
# GF(2) helpers


def _rank_gf2(rows: list[int]) -> int:
    rank = 0
    rows = list(rows)
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if r >> top & 1 else r for r in rows]
    return rank


def _row_bits(a: RingElement, b: RingElement, i: int) -> int:
    (ra, rb) = a.matrix[i], b.matrix[i]
    return ra[0] << 3 | ra[1] << 2 | rb[0] << 1 | rb[1]


def pair_rank(a: RingElement, b: RingElement) -> int:
    """Rank of the 2x4 binary matrix [a|b]."""
    return _rank_gf2([_row_bits(a, b, 0), _row_bits(a, b, 1)])


def invertible_2x2(a: RingElement, b: RingElement, c: RingElement, d: RingElement) -> bool:
    """Is [[a, b], [c, d]] invertible over the full matrix ring (a 4x4 binary matrix of rank 4)?

    For a subring the answer is the same, since the inverse of an element of a
    finite ring is one of its powers.
    """
    return _rank_gf2([_row_bits(a, b, 0), _row_bits(a, b, 1), _row_bits(c, d, 0), _row_bits(c, d, 1)]) == 4


def admissible_by_completion(ring: Ring, a: RingElement, b: RingElement) -> bool:
    return any(invertible_2x2(a, b, c, d) for c in ring.elements for d in ring.elements)


def is_admissible(ring: Ring, a: RingElement, b: RingElement) -> bool:
    if ring.name == FULL:
        return pair_rank(a, b) == 2
    return admissible_by_completion(ring, a, b)


# ---------------------------------------------------------------------------
# Points and lines


@dataclass(frozen=True, order=True)
class RingLinePoint:
    alpha: RingElement
    beta: RingElement

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta})"

    @property
    def key(self) -> tuple[int, int]:
        return self.alpha.label, self.beta.label


def point(a: int | str, b: int | str) -> RingLinePoint:
    return RingLinePoint(element(a), element(b))


def unit_orbit(ring: Ring, a: RingElement, b: RingElement) -> set[tuple[int, int]]:
    return {((u * a).label, (u * b).label) for u in ring.units}


def canonical_point(ring: Ring, a: RingElement, b: RingElement) -> RingLinePoint:
    """Representative of the unit class of (a, b).

    A unit coordinate is scaled to 1' (the first one if both qualify).
    For a pair of zero-divisors the second coordinate is taken with a zero
    top row, then the least pair of labels wins.
    """
    orbit = unit_orbit(ring, a, b)
    with_one_first = sorted(p for p in orbit if p[0] == 1)
    if with_one_first:
        return point(*with_one_first[0])
    with_one_second = sorted(p for p in orbit if p[1] == 1)
    if with_one_second:
        return point(*with_one_second[0])
    return point(*min(orbit, key=lambda p: (any(LABEL_MATRICES[p[1]][0]), p)))


def distant(x: RingLinePoint, y: RingLinePoint) -> bool:
    return invertible_2x2(x.alpha, x.beta, y.alpha, y.beta)


def neighbor(x: RingLinePoint, y: RingLinePoint) -> bool:
    return x != y and not distant(x, y)


def _point_order(p: RingLinePoint) -> tuple:
    # unit-unit first, then (1', z), (z, 1'), then pairs of zero-divisors
    a, b = p.alpha, p.beta
    if a == ONE and b.is_unit():
        tier = 0
    elif a == ONE:
        tier = 1
    elif b == ONE:
        tier = 2
    else:
        tier = 3
    return tier, a.label, b.label


@dataclass(frozen=True)
class ProjectiveLine:
    ring: Ring
    points: tuple[RingLinePoint, ...]
    graph: Graph  # neighbor graph

    def index(self, p: RingLinePoint) -> int:
        return self.points.index(p)

    def to_json(self) -> str:
        return json.dumps(
            {
                "ring": self.ring.name,
                "points": [str(p) for p in self.points],
                "neighbors": [[str(self.points[i]), str(self.points[j])] for i, j in self.graph.edges()],
            },
            ensure_ascii=False,
        )


@lru_cache(maxsize=None)
def projective_line(which: str = FULL) -> ProjectiveLine:
    ring = build_ring(which)
    found = set()
    for a, b in product(ring.elements, repeat=2):
        if is_admissible(ring, a, b):
            found.add(canonical_point(ring, a, b))
    pts = tuple(sorted(found, key=_point_order))
    edges = [(i, j) for i, j in combinations(range(len(pts)), 2) if neighbor(pts[i], pts[j])]
    return ProjectiveLine(ring, pts, Graph.from_edges(len(pts), edges, [str(p) for p in pts]))


def act(line: ProjectiveLine, p: RingLinePoint, g: tuple[RingElement, RingElement, RingElement, RingElement]) -> RingLinePoint:
    """Right action of the 2x2 ring matrix g = [[g11, g12], [g21, g22]] on coordinates."""
    g11, g12, g21, g22 = g
    a = p.alpha * g11 + p.beta * g21
    b = p.alpha * g12 + p.beta * g22
    return canonical_point(line.ring, a, b)


def gl2_generators(ring: Ring) -> list[tuple[RingElement, RingElement, RingElement, RingElement]]:
    """Elementary, diagonal-unit and swap matrices; together they generate GL(2, R)."""
    gens = [(ONE, r, ZERO, ONE) for r in ring.elements if r != ZERO]
    gens += [(ONE, ZERO, r, ONE) for r in ring.elements if r != ZERO]
    gens += [(u, ZERO, ZERO, ONE) for u in ring.units if u != ONE]
    gens.append((ZERO, ONE, ONE, ZERO))
    return gens


# ---------------------------------------------------------------------------
# The BP + MS split seen from two distant reference points


U0 = point(1, 0)
V0 = point(0, 1)


@dataclass
class BpMsSplit:
    distant_to_both: list[RingLinePoint]
    neighbor_to_both: list[RingLinePoint]
    bp_graph: Graph
    ms_graph: Graph
    ms_rows: list[list[RingLinePoint]]  # one row per first coordinate
    bp_ok: bool
    ms_ok: bool
    polarized: bool
    w2_ok: bool  # the fifteen points together reproduce the two-qubit Pauli graph

    @property
    def ok(self) -> bool:
        return self.bp_ok and self.ms_ok and self.polarized and self.w2_ok


def bp_ms_from_reference_pair(line: ProjectiveLine | None = None) -> BpMsSplit:
    line = line or projective_line(FULL)
    if line.ring.name != FULL:
        raise RingError("the BP + MS split lives on the line over M2(Z2)")
    if not distant(U0, V0):
        raise RingError("reference points must be distant")
    far = [p for p in line.points if p not in (U0, V0) and distant(p, U0) and distant(p, V0)]
    near = [p for p in line.points if neighbor(p, U0) and neighbor(p, V0)]
    g = line.graph
    bp = induced_subgraph(g, VertexSet.of(g, [line.index(p) for p in far]))
    ms = induced_subgraph(g, VertexSet.of(g, [line.index(p) for p in near]))
    pauli = build_pauli_graph(2, 2)
    bp_ref = induced_subgraph(pauli, VertexSet.of(pauli, ["1", "2", "3", "a", "b", "c"]))
    ms_ref = induced_subgraph(pauli, VertexSet.of(pauli, [str(k) for k in range(4, 13)]))
    firsts = sorted({p.alpha for p in near})
    rows = [[p for p in near if p.alpha == a] for a in firsts]
    # polarization: the three points sharing a coordinate are pairwise neighbors, i.e. form a line
    polarized = all(
        all(neighbor(x, y) for x, y in combinations(grp, 2))
        for grp in rows + [[p for p in near if p.beta == b] for b in sorted({p.beta for p in near})]
    )
    both = induced_subgraph(g, VertexSet.of(g, [line.index(p) for p in far + near]))
    return BpMsSplit(
        far,
        near,
        bp,
        ms,
        rows,
        bp_ok=is_isomorphic(bp, bp_ref)[0],
        ms_ok=is_isomorphic(ms, ms_ref)[0],
        polarized=polarized and len(rows) == 3 and all(len(r) == 3 for r in rows),
        w2_ok=is_isomorphic(both, pauli)[0],
    )


# ---------------------------------------------------------------------------
# Subring lines as hyperplanes of W(2)


@dataclass(frozen=True)
class SubringLine:
    ring: str
    hyperplane: str
    points: int
    expected_points: int
    isomorphic: bool

    @property
    def ok(self) -> bool:
        return self.points == self.expected_points and self.isomorphic


_HYPERPLANE_SAMPLES = {
    "F4": ("ovoid", ["1", "2", "6", "9", "12"]),
    "Z2[x]/x^2": ("perp-set minus reference", ["1", "2", "3", "a", "b", "c"]),
    "Z2xZ2": ("grid", [str(k) for k in range(4, 13)]),
}


def _perp_minus_reference() -> list[str]:
    g = build_pauli_graph(2, 2)
    return [g.labels[w] for w in g.neighbors(g.index("1"))]


def subring_lines_as_hyperplanes() -> list[SubringLine]:
    pauli = build_pauli_graph(2, 2)
    out = []
    for ring, (kind, labels) in _HYPERPLANE_SAMPLES.items():
        if ring == "Z2[x]/x^2":
            labels = _perp_minus_reference()
        line = projective_line(ring)
        target = induced_subgraph(pauli, VertexSet.of(pauli, labels))
        out.append(SubringLine(ring, kind, len(line.points), len(labels), is_isomorphic(line.graph, target)[0]))
    return out


# ---------------------------------------------------------------------------
# PG(3,2) lines and the phase of o_k . o_l

_MU_NAMES = ("+1", "+i", "-1", "-i")


@dataclass(frozen=True)
class PgLine:
    labels: tuple[str, str, str]
    mu: int  # exponent of i in o_k . o_l = mu o_m
    isotropic: bool

    @property
    def mu_name(self) -> str:
        return _MU_NAMES[self.mu]


def pg32_line_phases() -> list[PgLine]:
    """All 35 lines {x, y, x + y} of PG(3,2), read as operator triples."""
    vectors = symplectic_space(2).points
    labels = canonical_labels(2, 2)
    ops = canonical_operators(2, 2)
    pos = {u: i for i, u in enumerate(vectors)}
    seen = set()
    out = []
    for i, j in combinations(range(len(vectors)), 2):
        k = pos[vectors[i] ^ vectors[j]]
        trio = tuple(sorted((i, j, k)))
        if trio in seen:
            continue
        seen.add(trio)
        a, b, c = trio
        prod_ab = multiply(ops[a], ops[b])
        mu = relative_phase(prod_ab)
        isotropic = prod_ab == multiply(ops[b], ops[a])
        out.append(PgLine((labels[a], labels[b], labels[c]), mu, isotropic))
    return out


def pg32_split() -> dict[str, int]:
    out = {"real": 0, "imaginary": 0}
    for ln in pg32_line_phases():
        out["real" if ln.mu % 2 == 0 else "imaginary"] += 1
    return out
