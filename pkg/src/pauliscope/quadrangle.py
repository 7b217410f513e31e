"""W(2), the generalized quadrangle of order two, read off the two-qubit Pauli graph.

Points are the fifteen two-qubit operators, lines their maximal commuting
triples. Hyperplanes, spreads, triads, the three factorizations and the
Mermin-square sign certificate all live here.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import cyclotomic as cy
from .graph import (
    Graph,
    VertexSet,
    bits,
    complement,
    complete_bipartite,
    hypercube,
    induced_subgraph,
    petersen_graph,
    to_mask,
)
from .operators import (
    build_pauli_graph,
    canonical_labels,
    commutes,
    from_label,
    index_of,
    multiply,
    relative_phase,
)
from .search import exact_cover, is_independent, is_isomorphic, max_independent_sets, maximal_cliques


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class PointLineGeometry:
    labels: tuple[str, ...]
    lines: tuple[tuple[int, ...], ...]

    @property
    def v(self) -> int:
        return len(self.labels)

    def line_masks(self) -> list[int]:
        return [to_mask(line) for line in self.lines]

    def lines_through(self, p: int) -> list[tuple[int, ...]]:
        return [line for line in self.lines if p in line]

    def collinearity_graph(self) -> Graph:
        edges = {(a, b) for line in self.lines for a, b in combinations(sorted(line), 2)}
        return Graph.from_edges(self.v, sorted(edges), self.labels)

    def collinear(self, p: int, q: int) -> bool:
        return p != q and any(p in line and q in line for line in self.lines)

    def perp(self, p: int) -> int:
        """Mask of p together with every point collinear with it."""
        m = 1 << p
        for line in self.lines_through(p):
            m |= to_mask(line)
        return m

    def index(self, label: str) -> int:
        return self.labels.index(str(label))

    def names(self, idx: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in idx]

    def is_near_linear(self) -> bool:
        seen = set()
        for line in self.lines:
            if len(line) < 2:
                return False
            for pair in combinations(sorted(line), 2):
                if pair in seen:
                    return False
                seen.add(pair)
        return True

    def gq_axiom(self) -> bool:
        """Each point off a line is collinear with exactly one point of it."""
        for line in self.lines:
            for p in range(self.v):
                if p in line:
                    continue
                if sum(self.collinear(p, q) for q in line) != 1:
                    return False
        return True

    def to_json(self, **extra) -> str:
        data = {"points": list(self.labels), "lines": [self.names(line) for line in self.lines]}
        data.update(extra)
        return json.dumps(data)


def w2_from_graph(g: Graph | None = None) -> PointLineGeometry:
    """Lines are the maximal cliques (commuting triples) of P[2,2]."""
    if g is None:
        g = build_pauli_graph(2, 2)
    lines = tuple(tuple(c.sorted()) for c in maximal_cliques(g))
    geom = PointLineGeometry(g.labels, lines)
    problems = []
    if geom.v != 15 or len(lines) != 15:
        problems.append(f"{geom.v} points / {len(lines)} lines")
    if any(len(line) != 3 for line in lines):
        problems.append("a line without three points")
    if any(len(geom.lines_through(p)) != 3 for p in range(geom.v)):
        problems.append("a point not on three lines")
    if any(bin(geom.perp(p)).count("1") != 7 for p in range(geom.v)):
        problems.append("a point not collinear with exactly six others")
    if not geom.is_near_linear():
        problems.append("two points on two lines")
    if not problems and not geom.gq_axiom():
        problems.append("generalized quadrangle axiom fails")
    if problems:
        raise GeometryError("not W(2): " + "; ".join(problems))
    return geom


# ---------------------------------------------------------------------------
# Hyperplanes


@dataclass(frozen=True)
class HyperplaneClass:
    kind: str  # "perp-set", "grid", "ovoid" or "other"
    points: tuple[int, ...]
    reference: int | None = None


def is_hyperplane(geom: PointLineGeometry, mask: int) -> bool:
    for line in geom.line_masks():
        k = (mask & line).bit_count()
        if k != 1 and k != line.bit_count():
            return False
    return True


def _is_grid(geom: PointLineGeometry, mask: int) -> bool:
    inside = [m for m in geom.line_masks() if m & mask == m]
    if not inside or any(sum(1 for m in inside if m >> p & 1) != 2 for p in bits(mask)):
        return False
    # two parallel classes of pairwise disjoint lines, each line meeting every line of the other class
    first = inside[0]
    same = [m for m in inside if not m & first or m == first]
    other = [m for m in inside if m not in same]
    return (
        len(same) == len(other)
        and all(not a & b for a, b in combinations(same, 2))
        and all((a & b).bit_count() == 1 for a in same for b in other)
    )


def classify(geom: PointLineGeometry, mask: int) -> HyperplaneClass:
    pts = tuple(bits(mask))
    if all((mask & m).bit_count() == 1 for m in geom.line_masks()):
        return HyperplaneClass("ovoid", pts)
    for p in pts:
        if geom.perp(p) == mask:
            return HyperplaneClass("perp-set", pts, p)
    if _is_grid(geom, mask):
        return HyperplaneClass("grid", pts)
    return HyperplaneClass("other", pts)


def classify_hyperplanes(geom: PointLineGeometry) -> list[HyperplaneClass]:
    """Every proper geometric hyperplane, by brute force over all point subsets."""
    full = (1 << geom.v) - 1
    found = [classify(geom, m) for m in range(1, full) if is_hyperplane(geom, m)]
    order = {"perp-set": 0, "grid": 1, "ovoid": 2, "other": 3}
    found.sort(key=lambda h: (order[h.kind], h.points))
    return found


def hyperplane_census(geom: PointLineGeometry) -> dict[str, int]:
    out: dict[str, int] = {}
    for h in classify_hyperplanes(geom):
        out[h.kind] = out.get(h.kind, 0) + 1
    return out


def spreads(geom: PointLineGeometry) -> list[list[tuple[int, ...]]]:
    """All partitions of the points into pairwise disjoint lines."""
    subsets = {k: line for k, line in enumerate(geom.lines)}
    sols = [sorted(geom.lines[k] for k in sol) for sol in exact_cover(range(geom.v), subsets)]
    sols.sort()
    return sols


# ---------------------------------------------------------------------------
# Triads


@dataclass(frozen=True)
class Triad:
    points: tuple[int, int, int]
    centers: tuple[int, ...]


def triad(geom: PointLineGeometry, pts: Sequence[int]) -> Triad:
    a, b, c = sorted(pts)
    if geom.collinear(a, b) or geom.collinear(a, c) or geom.collinear(b, c):
        raise GeometryError("triad points must be pairwise non-collinear")
    common = geom.perp(a) & geom.perp(b) & geom.perp(c)
    return Triad((a, b, c), tuple(bits(common)))


def classify_triads(geom: PointLineGeometry) -> dict[int, list[Triad]]:
    """All triads grouped by their number of centers."""
    out: dict[int, list[Triad]] = {}
    for trio in combinations(range(geom.v), 3):
        a, b, c = trio
        if geom.collinear(a, b) or geom.collinear(a, c) or geom.collinear(b, c):
            continue
        t = triad(geom, trio)
        out.setdefault(len(t.centers), []).append(t)
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# Products and factorizations


def product_label(x: str, y: str) -> tuple[int, str]:
    """(relative phase exponent of i, label) of the product x.y of named two-qubit operators."""
    p = multiply(from_label(x), from_label(y))
    if p.is_identity:
        return p.phase, "0"
    return relative_phase(p), canonical_labels(2, 2)[index_of(p)]


def friendship_graph(k: int) -> Graph:
    """k triangles sharing one vertex (vertex 0)."""
    edges = []
    for t in range(k):
        a, b = 2 * t + 1, 2 * t + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph.from_edges(2 * k + 1, edges)


LOCAL_OPERATORS = ("1", "2", "3", "a", "b", "c")


@dataclass
class Factorization:
    mode: str
    first: VertexSet
    second: VertexSet
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _edges_map_into(g: Graph, part: VertexSet, target: VertexSet) -> bool:
    sub = induced_subgraph(g, part)
    idx = part.sorted()
    for i, j in sub.edges():
        _, lab = product_label(g.labels[idx[i]], g.labels[idx[j]])
        if lab == "0" or g.index(lab) not in target:
            return False
    return True


def _lines_close(g: Graph, geom: PointLineGeometry, part: VertexSet) -> bool:
    """Every line inside ``part``: two of its points multiply to the third (up to sign)."""
    inside = [line for line in geom.lines if all(p in part for p in line)]
    for line in inside:
        for x, y in combinations(line, 2):
            (z,) = set(line) - {x, y}
            phase, lab = product_label(g.labels[x], g.labels[y])
            if lab != g.labels[z] or phase % 2:
                return False
    return bool(inside)


def grids(geom: PointLineGeometry) -> list[HyperplaneClass]:
    return [h for h in classify_hyperplanes(geom) if h.kind == "grid"]


def ovoids(geom: PointLineGeometry) -> list[HyperplaneClass]:
    return [h for h in classify_hyperplanes(geom) if h.kind == "ovoid"]


def _resolve_seed(g: Graph, options: list[HyperplaneClass], seed, default_labels) -> VertexSet:
    if seed is None:
        chosen = VertexSet.of(g, default_labels)
    elif isinstance(seed, int):
        if not 0 <= seed < len(options):
            raise GeometryError(f"seed index {seed} out of range 0..{len(options) - 1}")
        chosen = VertexSet.of(g, options[seed].points)
    else:
        chosen = VertexSet.of(g, seed)
    if tuple(chosen.sorted()) not in {h.points for h in options}:
        raise GeometryError(f"seed {chosen.labels(g)} is not a hyperplane of the requested kind")
    return chosen


def factorize(g: Graph | None = None, mode: str = "fano_cube", seed=None) -> Factorization:
    """Split P[2,2] along a perp-set, a grid or an ovoid and verify the structure.

    ``seed`` picks the hyperplane: a point label for ``fano_cube``; for the
    other modes an index into the sorted grids/ovoids or an explicit label
    collection. ``None`` uses the local-operator choice ({4..12} grid) and the
    ovoid {1, 2, 6, 9, 12}.
    """
    if g is None:
        g = build_pauli_graph(2, 2)
    geom = w2_from_graph(g)
    if mode == "fano_cube":
        label = "a" if seed is None else str(seed)
        try:
            ref = g.index(label)
        except ValueError as exc:
            raise GeometryError(f"invalid seed {seed!r}") from exc
        fp = VertexSet(geom.perp(ref), g.v)
        cb = fp.complement()
        checks = {
            "FP is the perp-set of the seed": classify(geom, fp.mask).kind == "perp-set",
            "FP ~ friendship graph on 7 vertices": is_isomorphic(induced_subgraph(g, fp), friendship_graph(3))[0],
            "CB ~ 3-cube": is_isomorphic(induced_subgraph(g, cb), hypercube(3))[0],
            "FP lines close under products": _lines_close(g, geom, fp),
            "CB edges map into FP": _edges_map_into(g, cb, fp),
        }
        return Factorization(mode, fp, cb, checks)
    if mode == "mermin_bipartite":
        ms = _resolve_seed(g, grids(geom), seed, [str(k) for k in range(4, 13)])
        bp = ms.complement()
        ms_graph = induced_subgraph(g, ms)
        checks = {
            "MS is a grid": classify(geom, ms.mask).kind == "grid",
            "MS is 4-regular": set(ms_graph.degrees()) == {4},
            "MS ~ its complement": is_isomorphic(ms_graph, complement(ms_graph))[0],
            "BP ~ K[3,3]": is_isomorphic(induced_subgraph(g, bp), complete_bipartite(3, 3))[0],
            "MS lines close under products": _lines_close(g, geom, ms),
            "BP edges map into MS": _edges_map_into(g, bp, ms),
        }
        return Factorization(mode, bp, ms, checks)
    if mode == "ovoid_petersen":
        ind = _resolve_seed(g, ovoids(geom), seed, ["1", "2", "6", "9", "12"])
        pg = ind.complement()
        alpha = max_independent_sets(g).size
        checks = {
            "I is an ovoid": classify(geom, ind.mask).kind == "ovoid",
            "I is a maximum independent set": is_independent(g, ind) and len(ind) == alpha,
            "PG ~ Petersen": is_isomorphic(induced_subgraph(g, pg), petersen_graph())[0],
            "PG edges map into I": _edges_map_into(g, pg, ind),
        }
        return Factorization(mode, ind, pg, checks)
    raise GeometryError(f"unknown factorization mode {mode!r}")


# ---------------------------------------------------------------------------
# Mermin square certificate


@dataclass
class MerminCertificate:
    lines: list[tuple[str, str, str]]
    signs: list[int]  # +1 or -1 per line: product of its three operators = sign * I
    classes: tuple[list[int], list[int]]  # indices into ``lines`` of the two parallel classes

    @property
    def negative(self) -> int:
        return self.signs.count(-1)

    @property
    def positive(self) -> int:
        return self.signs.count(1)

    @property
    def overall_sign(self) -> int:
        out = 1
        for s in self.signs:
            out *= s
        return out

    @property
    def contradiction(self) -> bool:
        return self.overall_sign == -1

    @property
    def polarized(self) -> bool:
        """One parallel class multiplies to -I on every line, the other to +I."""
        a = {self.signs[k] for k in self.classes[0]}
        b = {self.signs[k] for k in self.classes[1]}
        return len(a) == 1 and len(b) == 1 and a != b

    def table(self) -> str:
        rows = []
        for cls_name, members in zip(("class-1", "class-2"), self.classes):
            for k in members:
                sign = "-I" if self.signs[k] < 0 else "+I"
                rows.append(f"{cls_name}\t{' '.join(self.lines[k])}\t{sign}")
        rows.append(f"overall\t\t{'-I' if self.contradiction else '+I'}")
        return "\n".join(rows) + "\n"


def line_sign(labels: Sequence[str]) -> int:
    ops = [from_label(x) for x in labels]
    for a, b in combinations(ops, 2):
        if not commutes(a, b):
            raise GeometryError(f"operators {list(labels)} do not commute pairwise")
    prod = ops[0]
    for op in ops[1:]:
        prod = multiply(prod, op)
    if not prod.is_identity or prod.phase % 2:
        raise GeometryError(f"line {list(labels)} does not multiply to +-I")
    return 1 if prod.phase == 0 else -1


def mermin_certificate(nine: Iterable[str], geom: PointLineGeometry | None = None) -> MerminCertificate:
    geom = geom or w2_from_graph()
    pts = sorted(geom.index(x) for x in nine)
    mask = to_mask(pts)
    if len(pts) != 9 or not _is_grid(geom, mask):
        raise GeometryError("the nine operators do not carry a 3x3 grid of lines")
    inside = [line for line in geom.lines if to_mask(line) & mask == to_mask(line)]
    first = to_mask(inside[0])
    cls_a = [k for k, line in enumerate(inside) if not to_mask(line) & first or to_mask(line) == first]
    cls_b = [k for k in range(len(inside)) if k not in cls_a]
    named = [tuple(geom.names(line)) for line in inside]
    signs = [line_sign(line) for line in named]
    return MerminCertificate(named, signs, (cls_a, cls_b))


# ---------------------------------------------------------------------------
# Configurations


def verify_configuration(points: Sequence, lines: Sequence[Sequence], va: int, eb: int, a: int, b: int) -> bool:
    """True iff the incidence structure is a (va_a, eb_b) configuration."""
    pts = list(points)
    if len(pts) != va or len(lines) != eb:
        return False
    members = set(pts)
    if len(members) != va:
        return False
    for line in lines:
        if len(set(line)) != b or not set(line) <= members:
            return False
    for p in pts:
        if sum(1 for line in lines if p in line) != a:
            return False
    seen = set()
    for line in lines:
        for pair in combinations(sorted(line, key=str), 2):
            if pair in seen:
                return False
            seen.add(pair)
    return True


def fano_plane() -> tuple[list[int], list[tuple[int, int, int]]]:
    """PG(2,2): nonzero vectors of GF(2)^3 with lines {x, y, x+y}."""
    pts = list(range(1, 8))
    lines = sorted({tuple(sorted((x, y, x ^ y))) for x in pts for y in pts if x < y})
    return pts, lines


def non_commuting_product_triples(labels: Sequence[str]) -> list[tuple[str, str, str]]:
    """Triples {k, l, m} inside ``labels`` with o_k . o_l = +-i o_m."""
    members = set(labels)
    out = set()
    for x, y in combinations(labels, 2):
        phase, z = product_label(x, y)
        if z in members and phase % 2 == 1:
            out.add(tuple(sorted((x, y, z), key=lambda s: index_of(from_label(s)))))
    return sorted(out, key=lambda t: [index_of(from_label(s)) for s in t])


def grid_lines(geom: PointLineGeometry, labels: Sequence[str]) -> list[tuple[str, ...]]:
    mask = to_mask(geom.index(x) for x in labels)
    return [tuple(geom.names(line)) for line in geom.lines if to_mask(line) & mask == to_mask(line)]


# ---------------------------------------------------------------------------
# Entanglement of the joint eigenbasis of a line


def _kron_vector_entangled(v: list[cy.Cyclo]) -> bool:
    """Two-qubit vector has Schmidt rank 2 iff v00 v11 - v01 v10 != 0."""
    return bool(v[0] * v[3] - v[1] * v[2])


def line_basis_entanglement(line: Sequence[str]) -> str:
    """'entangled' or 'unentangled' for the common eigenbasis of a commuting triple."""
    ops = [from_label(x) for x in line]
    if len(ops) != 3:
        raise GeometryError("a line has exactly three operators")
    mats = [cy.dense(op) for op in ops]
    for x, y in combinations(mats, 2):
        if not cy.matrices_commute(x, y):
            raise GeometryError(f"operators {list(line)} do not commute")
    ident = cy.identity(4, 0)
    verdicts = set()
    a, b = mats[0], mats[1]
    for s1 in (1, -1):
        for s2 in (1, -1):
            pa = cy.matadd(ident, cy.scale(cy.Cyclo(s1, 0, 0), a))
            pb = cy.matadd(ident, cy.scale(cy.Cyclo(s2, 0, 0), b))
            proj = cy.matmul(pa, pb)  # 4 x rank-1 projector onto the joint eigenvector
            col = next(j for j in range(4) if any(proj[i][j] for i in range(4)))
            vec = [proj[i][col] for i in range(4)]
            verdicts.add(_kron_vector_entangled(vec))
    if len(verdicts) != 1:
        raise GeometryError(f"mixed basis for line {list(line)}")
    return "entangled" if verdicts.pop() else "unentangled"


def structurally_unentangled(line: Sequence[str]) -> bool:
    return any(x in LOCAL_OPERATORS for x in line)
