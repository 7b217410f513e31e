"""Exact combinatorial searches on :class:`~pauliscope.graph.Graph`.

Everything here either returns an exact answer or raises
:class:`SearchLimitError`; no heuristic is substituted silently.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping

from .graph import Graph, VertexSet, bits, complement, induced_subgraph

CHROMATIC_CAP = 64
INDEPENDENCE_CAP = 128
ISOMORPHISM_CAP = 300


class SearchLimitError(RuntimeError):
    """The input exceeds the size an exact search is allowed to attempt."""


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# ---------------------------------------------------------------------------
# Maximal cliques (Bron-Kerbosch with Tomita pivoting)


def maximal_cliques(g: Graph) -> list[VertexSet]:
    """All maximal cliques, sorted by (size, member indices)."""
    rows = g.rows
    found: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(r)
            return
        px = p | x
        pivot = max(bits(px), key=lambda u: (rows[u] & p).bit_count())
        for u in bits(p & ~rows[pivot]):
            bit = 1 << u
            expand(r | bit, p & rows[u], x & rows[u])
            p &= ~bit
            x |= bit

    if g.v:
        expand(0, (1 << g.v) - 1, 0)
    out = [VertexSet(m, g.v) for m in found]
    out.sort(key=lambda s: (len(s), s.sorted()))
    return out


# ---------------------------------------------------------------------------
# Maximum cliques / independent sets (branch and bound, colouring bound)


def _maximum_cliques(rows: tuple[int, ...], candidates: int, enumerate_all: bool) -> tuple[int, list[int]]:
    best = [0]
    sols: list[int] = []

    def colour_order(p: int) -> tuple[list[int], list[int]]:
        order, bounds = [], []
        uncoloured = p
        colour = 0
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                u = _lowest(q)
                q &= ~rows[u] & ~(1 << u)
                uncoloured &= ~(1 << u)
                order.append(u)
                bounds.append(colour)
        return order, bounds

    def expand(r: int, size: int, p: int) -> None:
        if not p:
            if size > best[0]:
                best[0] = size
                sols.clear()
                sols.append(r)
            elif size == best[0] and enumerate_all:
                sols.append(r)
            return
        order, bounds = colour_order(p)
        for u, b in zip(reversed(order), reversed(bounds)):
            if size + b < best[0] or (size + b == best[0] and not enumerate_all):
                return
            expand(r | (1 << u), size + 1, p & rows[u])
            p &= ~(1 << u)

    expand(0, 0, candidates)
    return best[0], sols


def clique_number(g: Graph) -> int:
    return _maximum_cliques(g.rows, (1 << g.v) - 1, False)[0] if g.v else 0


def maximum_cliques(g: Graph, enumerate_all: bool = False) -> tuple[int, list[VertexSet]]:
    if g.v == 0:
        return 0, [VertexSet(0, 0)]
    size, masks = _maximum_cliques(g.rows, (1 << g.v) - 1, enumerate_all)
    sets = sorted((VertexSet(m, g.v) for m in masks), key=VertexSet.sorted)
    return size, sets


@dataclass(frozen=True)
class IndependentSets:
    size: int
    witnesses: tuple[VertexSet, ...]


def max_independent_sets(g: Graph, enumerate_all: bool = False) -> IndependentSets:
    """Independence number with one witness, or every maximum independent set."""
    if g.v > INDEPENDENCE_CAP:
        raise SearchLimitError(f"exact independence search capped at {INDEPENDENCE_CAP} vertices, got {g.v}")
    size, sets = maximum_cliques(complement(g), enumerate_all)
    return IndependentSets(size, tuple(sets))


@dataclass(frozen=True)
class VertexCover:
    cover: VertexSet
    subgraph: Graph


def min_vertex_cover(g: Graph) -> VertexCover:
    """Canonical minimum vertex cover: the lexicographically least one.

    The cover is the complement of a maximum independent set.
    """
    sets = max_independent_sets(g, enumerate_all=True).witnesses
    covers = [s.complement() for s in sets]
    best = min(covers, key=VertexSet.sorted)
    return VertexCover(best, induced_subgraph(g, best))


def all_min_vertex_covers(g: Graph) -> list[VertexSet]:
    sets = max_independent_sets(g, enumerate_all=True).witnesses
    return sorted((s.complement() for s in sets), key=VertexSet.sorted)


def is_independent(g: Graph, members: Iterable[int]) -> bool:
    members = list(members)
    mask = 0
    for i in members:
        mask |= 1 << i
    return all(not (g.rows[i] & mask) for i in members)


def is_clique(g: Graph, members: Iterable[int]) -> bool:
    members = list(members)
    mask = 0
    for i in members:
        mask |= 1 << i
    return all((g.rows[i] | (1 << i)) & mask == mask for i in members)


# ---------------------------------------------------------------------------
# Chromatic number (DSATUR branch and bound)


def _dsatur_greedy(g: Graph) -> int:
    colours = [-1] * g.v
    for _ in range(g.v):
        u = max(
            (w for w in range(g.v) if colours[w] < 0),
            key=lambda w: (len({colours[x] for x in bits(g.rows[w]) if colours[x] >= 0}), g.degree(w), -w),
        )
        used = {colours[x] for x in bits(g.rows[u])}
        c = 0
        while c in used:
            c += 1
        colours[u] = c
    return max(colours) + 1 if g.v else 0


def chromatic_number(g: Graph, cap: int = CHROMATIC_CAP) -> int:
    if g.v > cap:
        raise SearchLimitError(f"exact colouring capped at {cap} vertices, got {g.v}")
    if g.v == 0:
        return 0
    if g.e == 0:
        return 1
    lower = clique_number(g)
    best = [_dsatur_greedy(g)]
    if best[0] == lower:
        return lower
    rows = g.rows
    colours = [-1] * g.v

    def solve(coloured: int, used: int) -> bool:
        if used >= best[0]:
            return False
        if coloured == g.v:
            best[0] = used
            return best[0] == lower
        u, sat = -1, None
        for w in range(g.v):
            if colours[w] >= 0:
                continue
            s = len({colours[x] for x in bits(rows[w]) if colours[x] >= 0})
            key = (s, g.degree(w))
            if sat is None or key > sat:
                u, sat = w, key
        forbidden = {colours[x] for x in bits(rows[u]) if colours[x] >= 0}
        for c in range(min(used + 1, best[0] - 1)):
            if c in forbidden:
                continue
            colours[u] = c
            if solve(coloured + 1, max(used, c + 1)):
                return True
            colours[u] = -1
        return False

    solve(0, 0)
    return best[0]


# ---------------------------------------------------------------------------
# Isomorphism (individualisation-refinement backtracking)


def _refine(adj: list[int], colours: list[int]) -> list[int]:
    """Colour refinement to the coarsest equitable partition."""
    count = len(set(colours))
    while True:
        sigs = []
        for u, row in enumerate(adj):
            hist: dict[int, int] = {}
            for w in bits(row):
                hist[colours[w]] = hist.get(colours[w], 0) + 1
            sigs.append((colours[u], tuple(sorted(hist.items()))))
        names = {s: k for k, s in enumerate(sorted(set(sigs)))}
        colours = [names[s] for s in sigs]
        if len(names) == count:
            return colours
        count = len(names)


def is_isomorphic(g: Graph, h: Graph) -> tuple[bool, dict[int, int] | None]:
    """Exact isomorphism test; the witness maps vertices of ``g`` to ``h``."""
    if max(g.v, h.v) > ISOMORPHISM_CAP:
        raise SearchLimitError(f"isomorphism test capped at {ISOMORPHISM_CAP} vertices")
    if g.v != h.v or g.e != h.e or sorted(g.degrees()) != sorted(h.degrees()):
        return False, None
    n = g.v
    if n == 0:
        return True, {}
    adj = list(g.rows) + [r << n for r in h.rows]

    def balanced(colours: list[int]) -> bool:
        left: dict[int, int] = {}
        for c in colours[:n]:
            left[c] = left.get(c, 0) + 1
        right: dict[int, int] = {}
        for c in colours[n:]:
            right[c] = right.get(c, 0) + 1
        return left == right

    def search(colours: list[int]) -> dict[int, int] | None:
        colours = _refine(adj, colours)
        if not balanced(colours):
            return None
        classes: dict[int, list[int]] = {}
        for u, c in enumerate(colours):
            classes.setdefault(c, []).append(u)
        open_classes = [m for m in classes.values() if len(m) > 2]
        if not open_classes:
            mapping = {}
            for members in classes.values():
                a, b = members
                mapping[a] = b - n
            if all(
                {mapping[w] for w in bits(g.rows[u])} == set(bits(h.rows[mapping[u]])) for u in range(n)
            ):
                return mapping
            return None
        target = min(open_classes, key=len)
        u = target[0]
        fresh = max(colours) + 1
        for w in target:
            if w < n:
                continue
            trial = list(colours)
            trial[u] = fresh
            trial[w] = fresh
            found = search(trial)
            if found is not None:
                return found
        return None

    mapping = search([0] * (2 * n))
    return (mapping is not None), mapping


def apply_mapping(g: Graph, mapping: Mapping[int, int]) -> list[int]:
    """Rows of ``g`` relabelled through ``mapping`` (vertex i becomes mapping[i])."""
    rows = [0] * g.v
    for u in range(g.v):
        m = 0
        for w in bits(g.rows[u]):
            m |= 1 << mapping[w]
        rows[mapping[u]] = m
    return rows


# ---------------------------------------------------------------------------
# Exact cover (Algorithm X over dicts of sets)


def exact_cover(
    universe: Iterable[Hashable], subsets: Mapping[Hashable, Iterable[Hashable]]
) -> Iterator[list[Hashable]]:
    """Yield every selection of subset names partitioning ``universe``.

    Column choice is the smallest column, ties broken by sort order, so the
    sequence of solutions is reproducible.
    """
    universe = list(universe)
    rows = {name: tuple(items) for name, items in subsets.items()}
    cols: dict[Hashable, set] = {x: set() for x in universe}
    for name, items in rows.items():
        for x in items:
            if x not in cols:
                break
        else:
            for x in items:
                cols[x].add(name)
    order = {x: k for k, x in enumerate(universe)}
    row_order = {name: k for k, name in enumerate(rows)}

    def select(r):
        removed = []
        for j in rows[r]:
            for i in cols[j]:
                for k in rows[i]:
                    if k != j:
                        cols[k].discard(i)
            removed.append(cols.pop(j))
        return removed

    def deselect(r, removed):
        for j in reversed(rows[r]):
            cols[j] = removed.pop()
            for i in cols[j]:
                for k in rows[i]:
                    if k != j:
                        cols[k].add(i)

    def solve(partial):
        if not cols:
            yield list(partial)
            return
        c = min(cols, key=lambda x: (len(cols[x]), order[x]))
        for r in sorted(cols[c], key=row_order.__getitem__):
            partial.append(r)
            removed = select(r)
            yield from solve(partial)
            deselect(r, removed)
            partial.pop()

    yield from solve([])
