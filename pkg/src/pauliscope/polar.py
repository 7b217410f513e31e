"""Symplectic polar spaces W(2N-1, 2) behind the N-qubit Pauli graphs.

Points are nonzero vectors of GF(2)^(2N), packed into ints as
``x_bits << N | z_bits`` where factor j owns bit ``N - 1 - j`` of each half.
Commuting operators are exactly the pairs on which the symplectic form
vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

from .graph import Graph, VertexSet, bits, induced_subgraph
from .operators import QuditOperator, build_pauli_graph, canonical_operators
from .search import exact_cover, maximal_cliques
from .spectral import Spectrum, spectrum

MAX_RANK = 4


class PolarError(ValueError):
    pass


def _check_rank(N: int, upper: int = MAX_RANK) -> None:
    if not 2 <= N <= upper:
        raise PolarError(f"rank N={N} outside the supported range 2..{upper}")


def vector_of(op: QuditOperator) -> int:
    if op.d != 2:
        raise PolarError("only qubit operators map into W(2N-1, 2)")
    n = op.n
    x = z = 0
    for j, (a, b) in enumerate(op.exps):
        x |= a << (n - 1 - j)
        z |= b << (n - 1 - j)
    return (x << n) | z


def form(u: int, w: int, N: int) -> int:
    mask = (1 << N) - 1
    ux, uz, wx, wz = u >> N, u & mask, w >> N, w & mask
    return ((ux & wz).bit_count() + (uz & wx).bit_count()) & 1


@dataclass(frozen=True)
class SymplecticSpace:
    N: int
    points: tuple[int, ...]  # vectors in canonical operator order

    def perp(self, u: int) -> list[int]:
        return [w for w in self.points if w != u and form(u, w, self.N) == 0]

    def is_non_degenerate(self) -> bool:
        return all(any(form(u, w, self.N) for w in self.points) for u in self.points)

    def is_alternating(self) -> bool:
        return all(form(u, u, self.N) == 0 for u in self.points)


@lru_cache(maxsize=None)
def symplectic_space(N: int) -> SymplecticSpace:
    return SymplecticSpace(N, tuple(vector_of(op) for op in canonical_operators(2, N)))


@lru_cache(maxsize=None)
def _vector_index(N: int) -> dict[int, int]:
    return {u: i for i, u in enumerate(symplectic_space(N).points)}


@dataclass(frozen=True)
class Generator:
    """Nonzero vectors of a maximal totally isotropic subspace."""

    vectors: frozenset[int]
    N: int

    @property
    def indices(self) -> tuple[int, ...]:
        idx = _vector_index(self.N)
        return tuple(sorted(idx[u] for u in self.vectors))

    def is_closed(self) -> bool:
        vs = self.vectors
        return all((u ^ w) in vs for u in vs for w in vs if u != w)

    def is_isotropic(self) -> bool:
        return all(form(u, w, self.N) == 0 for u in self.vectors for w in self.vectors)


def _span_with(subspace: frozenset[int], w: int) -> frozenset[int]:
    return subspace | {w} | {u ^ w for u in subspace}


@lru_cache(maxsize=None)
def generators(N: int) -> tuple[Generator, ...]:
    """All maximal totally isotropic subspaces, grown one dimension at a time."""
    _check_rank(N)
    space = symplectic_space(N)
    pts = space.points
    pos = _vector_index(N)
    perp_mask = []
    for u in pts:
        m = 0
        for k, w in enumerate(pts):
            if form(u, w, N) == 0:
                m |= 1 << k
        perp_mask.append(m)
    # subspace -> mask of points orthogonal to all of it
    level = {frozenset([u]): perp_mask[pos[u]] for u in pts}
    for _ in range(N - 1):
        nxt: dict[frozenset[int], int] = {}
        for sub, orth in level.items():
            sub_mask = 0
            for u in sub:
                sub_mask |= 1 << pos[u]
            for k in bits(orth & ~sub_mask):
                w = pts[k]
                bigger = _span_with(sub, w)
                if bigger not in nxt:
                    nxt[bigger] = orth & perp_mask[k]
        level = nxt
    gens = [Generator(s, N) for s in level]
    gens.sort(key=lambda g: g.indices)
    return tuple(gens)


def generator_count_formula(N: int) -> int:
    return prod(2**i + 1 for i in range(1, N + 1))


@dataclass(frozen=True)
class CountingLaws:
    points: int
    spread_size: int
    generator_size: int
    non_perp: int


def counting_laws(N: int) -> CountingLaws:
    return CountingLaws(4**N - 1, 2**N + 1, 2**N - 1, 2 ** (2 * N - 1))


@dataclass(frozen=True)
class CountingCheck:
    laws: CountingLaws
    points_ok: bool
    generator_size_ok: bool
    non_perp_ok: bool
    spread_size_ok: bool | None  # None when no spread was searched

    @property
    def ok(self) -> bool:
        return self.points_ok and self.generator_size_ok and self.non_perp_ok and self.spread_size_ok is not False


def verify_counting_laws(N: int, check_spread: bool = True) -> CountingCheck:
    """Compare the closed-form counts with the constructed space and graph."""
    _check_rank(N)
    laws = counting_laws(N)
    g = build_pauli_graph(2, N)
    non_perp = {g.v - 1 - deg for deg in g.degrees()}
    gens = generators(N)
    spread_ok = None
    if check_spread and N <= 3:
        spread_ok = len(find_spread(N)) == laws.spread_size
    return CountingCheck(
        laws,
        points_ok=len(symplectic_space(N).points) == laws.points == g.v,
        generator_size_ok={len(x.vectors) for x in gens} == {laws.generator_size},
        non_perp_ok=non_perp == {laws.non_perp},
        spread_size_ok=spread_ok,
    )


def generators_match_cliques(N: int) -> bool:
    """Generator point sets equal the maximal cliques of P[2, N] as sets of sets."""
    g = build_pauli_graph(2, N)
    cliques = {tuple(c.sorted()) for c in maximal_cliques(g)}
    gens = {x.indices for x in generators(N)}
    return cliques == gens


def _spread_search(N: int):
    gens = generators(N)
    subsets = {k: gen.vectors for k, gen in enumerate(gens)}
    for sol in exact_cover(symplectic_space(N).points, subsets):
        yield [gens[k] for k in sorted(sol)]


def find_spread(N: int) -> list[Generator]:
    """One spread (partition of all points into generators)."""
    _check_rank(N, 3)
    return next(_spread_search(N))


def enumerate_spreads(N: int) -> list[list[Generator]]:
    _check_rank(N, 2)
    return sorted(_spread_search(N), key=lambda s: [g.indices for g in s])


def is_spread(N: int, spread: list[Generator]) -> bool:
    covered: set[int] = set()
    for gen in spread:
        if covered & gen.vectors:
            return False
        covered |= gen.vectors
    return covered == set(symplectic_space(N).points)


# ---------------------------------------------------------------------------
# Recursive block structure


GROUP_NAMES = ("I", "X", "Y", "Z")


@dataclass
class BlockReport:
    N: int
    order: list[int]  # original vertex indices in reordered sequence
    block_size: int
    names: list[list[str]]  # "O", "A" or "Â" per block
    diagonal_is_parent: bool
    a_is_o_plus_identity: bool
    pattern_ok: bool
    adjacency: list[list[int]] = field(repr=False, default_factory=list)

    @property
    def ok(self) -> bool:
        return self.diagonal_is_parent and self.a_is_o_plus_identity and self.pattern_ok

    def grid(self) -> str:
        return "\n".join(" ".join(f"{x:>2}" for x in row) for row in self.names)


def reference_triple(N: int) -> list[int]:
    """Indices of sigma_w (x) I (x) ... (x) I for w = x, y, z."""
    block = 4 ** (N - 1)
    return [w * block - 1 for w in (1, 2, 3)]


def block_order(N: int) -> list[list[int]]:
    """Vertex groups (by first tensor factor) after dropping the reference triple."""
    _check_rank(N)
    block = 4 ** (N - 1)
    refs = set(reference_triple(N))
    groups = []
    for w in range(4):
        lo = w * block - 1
        members = [i for i in range(max(lo, 0), lo + block) if i not in refs]
        groups.append(members)
    return groups


def block_structure(N: int) -> BlockReport:
    """Check the O / A / Â block law of the reduced adjacency matrix."""
    g = build_pauli_graph(2, N)
    groups = block_order(N)
    order = [i for grp in groups for i in grp]
    size = len(groups[0])
    parent = build_pauli_graph(2, N - 1).adjacency_matrix()
    o_block = parent
    a_block = [[o_block[i][j] + (i == j) for j in range(size)] for i in range(size)]
    ahat_block = [[1 - a_block[i][j] for j in range(size)] for i in range(size)]

    def block(gi: int, gj: int) -> list[list[int]]:
        return [[int(g.has_edge(u, w)) for w in groups[gj]] for u in groups[gi]]

    names = []
    pattern_ok = True
    for gi in range(4):
        row = []
        for gj in range(4):
            b = block(gi, gj)
            if gi == gj:
                expected, name = o_block, "O"
            elif gi == 0 or gj == 0:
                expected, name = a_block, "A"
            else:
                expected, name = ahat_block, "Â"
            found = next((nm for nm, m in (("O", o_block), ("A", a_block), ("Â", ahat_block)) if m == b), "?")
            row.append(found)
            pattern_ok &= b == expected and found == name
        names.append(row)
    diagonal = all(block(k, k) == parent for k in range(4))
    a_minus_o = all(
        a_block[i][j] - o_block[i][j] == (1 if i == j else 0) for i in range(size) for j in range(size)
    )
    adjacency = [[int(g.has_edge(u, w)) for w in order] for u in order]
    return BlockReport(N, order, size, names, diagonal, a_minus_o, pattern_ok, adjacency)


# ---------------------------------------------------------------------------
# Three-qubit distinguished subgraphs

# Positions of the two-qubit Mermin square {4..12} inside a 15-vertex block.
MS_POSITIONS = (4, 5, 6, 8, 9, 10, 12, 13, 14)


@dataclass
class SubgraphSpectrum:
    name: str
    vertices: list[int]
    degrees: set[int]
    spectrum: Spectrum


def _sub(g: Graph, name: str, idx: list[int]) -> SubgraphSpectrum:
    h = induced_subgraph(g, VertexSet.of(g, idx))
    return SubgraphSpectrum(name, idx, set(h.degrees()), spectrum(h))


def mermin_copies(N: int = 3) -> list[list[int]]:
    """The Mermin-square image inside each non-identity group, plus the identity group's (E)."""
    groups = block_order(N)
    return [[grp[k] for k in MS_POSITIONS] for grp in groups]


def m3_and_mermin_blocks(N: int = 3) -> dict[str, SubgraphSpectrum]:
    if N != 3:
        raise PolarError("the distinguished-block analysis is defined for N = 3")
    g = build_pauli_graph(2, 3)
    groups = block_order(3)
    e_set, ms_x, ms_y, ms_z = mermin_copies(3)
    out = {
        "M3": _sub(g, "M3", groups[1] + groups[2] + groups[3]),
        "MS": _sub(g, "MS", ms_x),
        "MSx2": _sub(g, "MSx2", ms_x + ms_y),
        "MSx3": _sub(g, "MSx3", ms_x + ms_y + ms_z),
        "E+MS": _sub(g, "E+MS", e_set + ms_x),
        "E+2MS": _sub(g, "E+2MS", e_set + ms_x + ms_y),
        "E+3MS": _sub(g, "E+3MS", e_set + ms_x + ms_y + ms_z),
    }
    return out
