"""Acceptance suite: one timed pass/fail line per criterion.

Run under pytest (lines are echoed in the terminal summary) or directly:

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import pytest

from pauliscope import polar
from pauliscope import quadrangle as qd
from pauliscope import qutrit as qt
from pauliscope import ringline as rl
from pauliscope.graph import (
    Graph,
    VertexSet,
    complement,
    complete_graph,
    girth,
    induced_subgraph,
    line_graph,
    petersen_graph,
)
from pauliscope.operators import (
    QuditOperator,
    build_pauli_graph,
    commutes,
    format_product,
    from_label,
    multiply,
    render_tables,
    symplectic_form,
)
from pauliscope.search import (
    INDEPENDENCE_CAP,
    all_min_vertex_covers,
    chromatic_number,
    is_independent,
    is_isomorphic,
    max_independent_sets,
    maximal_cliques,
    maximum_cliques,
    min_vertex_cover,
)
from pauliscope.spectral import (
    Spectrum,
    spectrum,
    srg_multiplicities,
    verify_srg,
)

try:
    from conftest import ACCEPTANCE_LINES, FIXTURES
except ImportError:  # direct script run from elsewhere
    from pathlib import Path

    ACCEPTANCE_LINES: list[str] = []
    FIXTURES = Path(__file__).parent / "fixtures"


@dataclass
class Outcome:
    number: int
    name: str
    limit: float
    failures: list[str]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.failures and self.elapsed < self.limit

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        timing = f"{self.elapsed:.2f}s {'<' if self.elapsed < self.limit else '>='} {self.limit:g}s"
        detail = "" if not self.failures else " | " + "; ".join(self.failures)
        return f"criterion {self.number} {self.name}: {verdict} ({timing}){detail}"


class Checks:
    def __init__(self):
        self.failures: list[str] = []

    def eq(self, what: str, expected, computed) -> None:
        if expected != computed:
            self.failures.append(f"{what}: expected {expected}, computed {computed}")

    def true(self, what: str, flag: bool) -> None:
        if not flag:
            self.failures.append(what)


MS = [str(k) for k in range(4, 13)]
SUBSETS = {
    "PG=MVC": ["3", "a", "4", "5", "b", "7", "8", "c", "10", "11"],
    "MS": MS,
    "BP": ["1", "2", "3", "a", "b", "c"],
    "FP": ["1", "2", "3", "a", "4", "5", "6"],
    "CB": ["b", "7", "8", "9", "c", "10", "11", "12"],
}
# v, e, spectrum, girth, chromatic number; CB girth is printed as 3
PUBLISHED = {
    "P[2,2]": (15, 45, {-3: 5, 1: 9, 6: 1}, 3, 4),
    "PG=MVC": (10, 15, {-2: 4, 1: 5, 3: 1}, 5, 3),
    "MS": (9, 18, {-2: 4, 1: 4, 4: 1}, 3, 3),
    "BP": (6, 9, {-3: 1, 0: 4, 3: 1}, 4, 2),
    "FP": (7, 9, {-2: 1, -1: 3, 1: 2, 3: 1}, 3, 3),
    "CB": (8, 12, {-3: 1, -1: 3, 1: 3, 3: 1}, 3, 2),
}


def _sub(g: Graph, labels) -> Graph:
    return induced_subgraph(g, VertexSet.of(g, labels))


# ---------------------------------------------------------------------------


def c1_tables(ck: Checks) -> None:
    products, commutation = render_tables(2, 2)
    ck.eq("product table", (FIXTURES / "two_qubit_products.csv").read_text(encoding="utf-8"), products)
    ck.eq("commutation table", (FIXTURES / "two_qubit_commutation.csv").read_text(encoding="utf-8"), commutation)
    for x, y, want in (("1", "2", "i3"), ("4", "8", "-12"), ("8", "10", "6")):
        ck.eq(f"{x}.{y}", want, format_product(multiply(from_label(x), from_label(y))))


def c2_invariants(ck: Checks) -> None:
    g = build_pauli_graph(2, 2)
    for name, (v, e, spec, gi, kappa) in PUBLISHED.items():
        h = g if name == "P[2,2]" else _sub(g, SUBSETS[name])
        ck.eq(f"{name} v", v, h.v)
        ck.eq(f"{name} e", e, h.e)
        ck.true(f"{name} spectrum {spectrum(h)}", spectrum(h) == spec)
        ck.eq(f"{name} chromatic number", kappa, chromatic_number(h))
        if name == "CB":
            # the printed 3 is a typo: the graph is bipartite
            ck.eq("CB girth (flagged against printed 3)", 4, girth(h))
        else:
            ck.eq(f"{name} girth", gi, girth(h))


def c3_isomorphisms(ck: Checks) -> None:
    g = build_pauli_graph(2, 2)
    ck.true("P[2,2] ~ complement(L(K6))", is_isomorphic(g, complement(line_graph(complete_graph(6))))[0])
    ck.true("MVC(P[2,2]) ~ Petersen", is_isomorphic(min_vertex_cover(g).subgraph, petersen_graph())[0])
    k7 = complement(line_graph(complete_graph(7)))
    ck.true(
        "some MVC of complement(L(K7)) ~ P[2,2]",
        any(is_isomorphic(induced_subgraph(k7, c), g)[0] for c in all_min_vertex_covers(k7)),
    )


def c4_census(ck: Checks) -> None:
    g = build_pauli_graph(2, 2)
    geom = qd.w2_from_graph(g)
    ck.eq("lines", 15, len(geom.lines))
    ck.eq("hyperplanes", {"perp-set": 15, "grid": 10, "ovoid": 6}, qd.hyperplane_census(geom))
    ck.eq("spreads", 6, len(qd.spreads(geom)))
    ov = {tuple(h.points) for h in qd.ovoids(geom)}
    mis = {tuple(w.sorted()) for w in max_independent_sets(g, enumerate_all=True).witnesses}
    ck.true("ovoids are the maximum independent sets", ov == mis and len(ov) == 6)
    for trio, want in ((("b", "5", "11"), 3), (("1", "6", "12"), 1)):
        ck.eq(f"centers of {trio}", want, len(qd.triad(geom, [geom.index(x) for x in trio]).centers))


def c5_mermin(ck: Checks) -> None:
    cert = qd.mermin_certificate(MS)
    ck.eq("-I lines", 3, cert.negative)
    ck.eq("+I lines", 3, cert.positive)
    ck.eq("overall sign", -1, cert.overall_sign)
    ck.true("contradiction", cert.contradiction)


def c6_configurations(ck: Checks) -> None:
    g = build_pauli_graph(2, 2)
    geom = qd.w2_from_graph(g)
    pg = SUBSETS["PG=MVC"]
    ck.true("complement(Petersen) is (10_3)", qd.verify_configuration(pg, qd.non_commuting_product_triples(pg), 10, 10, 3, 3))
    ck.true("MS is (9_2,6_3)", qd.verify_configuration(MS, qd.grid_lines(geom, MS), 9, 6, 2, 3))
    ms = _sub(g, MS)
    ck.true("MS is self-complementary", is_isomorphic(ms, complement(ms))[0])
    entangled = sum(qd.line_basis_entanglement(geom.names(ln)) == "entangled" for ln in geom.lines)
    ck.eq("entangled lines", 6, entangled)


def c7_ringline(ck: Checks) -> None:
    line = rl.projective_line(rl.FULL)
    ck.eq("points over M2(Z2)", 35, len(line.points))
    split = rl.bp_ms_from_reference_pair(line)
    ck.eq(
        "distant to both",
        "(1',1') (1',2') (1',9') (1',11') (1',12') (1',13')",
        " ".join(map(str, split.distant_to_both)),
    )
    ck.eq(
        "neighbor to both",
        "(3',4') (3',10') (3',14') (5',4') (5',10') (5',14') (6',4') (6',10') (6',14')",
        " ".join(map(str, split.neighbor_to_both)),
    )
    ck.true("BP/MS graphs and W(2)", split.ok)
    for row in rl.subring_lines_as_hyperplanes():
        ck.eq(f"points over {row.ring}", row.expected_points, row.points)
        ck.true(f"{row.ring} line ~ {row.hyperplane}", row.isomorphic)
    ck.eq("points per subring", [5, 6, 9], [len(rl.projective_line(r).points) for r in ("F4", "Z2[x]/x^2", "Z2xZ2")])
    lines = rl.pg32_line_phases()
    real = sum(ln.mu % 2 == 0 for ln in lines)
    ck.eq("PG(3,2) split", (15, 20), (real, len(lines) - real))


def c8_counting(ck: Checks) -> None:
    for N, (points, partners, gens) in {2: (15, 8, 15), 3: (63, 32, 135), 4: (255, 128, 2295)}.items():
        laws = polar.verify_counting_laws(N, check_spread=N <= 3)
        ck.true(f"N={N} counting laws {laws}", laws.ok)
        ck.eq(f"N={N} points", points, len(polar.symplectic_space(N).points))
        g = build_pauli_graph(2, N)
        ck.eq(f"N={N} non-commuting partners", {partners}, {g.v - 1 - d for d in g.degrees()})
        ck.eq(f"N={N} generators", gens, len(polar.generators(N)))
    spread = polar.find_spread(3)
    ck.true("N=3 spread of 9 generators", len(spread) == 9 and polar.is_spread(3, spread))


def c9_spectra(ck: Checks) -> None:
    g3 = build_pauli_graph(2, 3)
    ck.true(f"spec P[2,3] = {spectrum(g3)}", spectrum(g3) == {-5: 27, 3: 35, 30: 1})
    for N, row in {2: (15, 6, 1, 3), 3: (63, 30, 13, 15), 4: (255, 126, 61, 63)}.items():
        p = verify_srg(build_pauli_graph(2, N)).params
        ck.eq(f"N={N} srg", row, p and (p.v, p.D, p.lam, p.mu))
        if N in (2, 3) and p:
            e = srg_multiplicities(p)
            ck.eq(f"N={N} (f, g)", {2: (9, 5), 3: (35, 27)}[N], (e.f, e.g))


def c10_blocks(ck: Checks) -> None:
    rep = polar.block_structure(3)
    ck.true(f"O/A/Â pattern\n{rep.grid()}", rep.pattern_ok)
    ck.true("A = O + identity", rep.a_is_o_plus_identity)
    blocks = polar.m3_and_mermin_blocks(3)
    ck.eq("M3 degrees", {22}, blocks["M3"].degrees)
    for key, want in (
        ("M3", {-5: 10, -3: 9, -2: 2, 1: 5, 3: 18, 22: 1}),
        ("MSx2", {-3: 4, -1: 8, 0: 1, 3: 4, 8: 1}),
        ("MSx3", {-3: 12, 0: 6, 3: 8, 12: 1}),
    ):
        ck.true(f"{key} spectrum {blocks[key].spectrum}", blocks[key].spectrum == want)
    # E is underspecified: these spectra are reported, not asserted
    for key in ("E+MS", "E+2MS", "E+3MS"):
        ck.true(f"{key} spectrum resolved", blocks[key].spectrum.residual is None)


def c11_qutrits(ck: Checks) -> None:
    p9 = qt.p9_graph()
    ck.eq("P9 degrees", {25}, set(p9.degrees()))
    ck.true("P9 spectrum", spectrum(p9) == {-7: 15, -1: 40, 5: 24, 25: 1})
    ck.true("P9 not strongly regular", not verify_srg(p9).strongly_regular)
    cliques = maximal_cliques(p9)
    ck.eq("maximal cliques", (40, {8}), (len(cliques), {len(c) for c in cliques}))
    listed = {frozenset(s) for s in qt.MCS_LIST.values()}
    ck.true("cliques equal the listed sets", {frozenset(c.labels(p9)) for c in cliques} == listed)
    w9 = qt.dual_graph()
    p = verify_srg(w9).params
    ck.eq("W9 srg", (40, 12, 2, 4), p and (p.v, p.D, p.lam, p.mu))
    ck.true("W9 spectrum", spectrum(w9) == {-4: 15, 2: 24, 12: 1})
    hyp = qt.w9_hyperplanes()
    ck.true("grid / 8-coclique / 4-cube", hyp.grid_ok and hyp.coclique_ok and hyp.hypercube_ok)
    ck.eq("independence number", 10, hyp.independence_number)
    ck.true("listed ovoid", hyp.listed_ovoid_ok)
    ck.true("perp-set decompositions", bool(hyp.perp_ok) and all(hyp.perp_ok.values()))
    tri = qt.w9_tripartite()
    ck.true("tripartite partition", bool(tri and tri.ok))
    ck.eq("tripartite sizes", (10, 9, 9, 3, 3, 3, 3), tri and tri.sizes)


# ---------------------------------------------------------------------------
# Property suites


def touched_graphs() -> dict[str, Graph]:
    g = build_pauli_graph(2, 2)
    out = {"P[2,2]": g}
    out.update({name: _sub(g, labels) for name, labels in SUBSETS.items()})
    out["complement L(K6)"] = complement(line_graph(complete_graph(6)))
    out["complement L(K7)"] = complement(line_graph(complete_graph(7)))
    out["Petersen"] = petersen_graph()
    out["P[2,3]"] = build_pauli_graph(2, 3)
    out["P[2,4]"] = build_pauli_graph(2, 4)
    for key, blk in polar.m3_and_mermin_blocks(3).items():
        out[f"N=3 {key}"] = induced_subgraph(out["P[2,3]"], VertexSet.of(out["P[2,3]"], blk.vertices))
    out["P[3,2]"] = qt.p9_graph()
    out["W9"] = qt.dual_graph()
    line = rl.projective_line(rl.FULL)
    out["ring line"] = line.graph
    split = rl.bp_ms_from_reference_pair(line)
    for name, pts in (("distant to both", split.distant_to_both), ("neighbor to both", split.neighbor_to_both)):
        out[name] = induced_subgraph(line.graph, VertexSet.of(line.graph, [line.index(x) for x in pts]))
    return out


def _duality(g: Graph) -> str | None:
    if g.v <= INDEPENDENCE_CAP:
        ind = max_independent_sets(g)
        cover = min_vertex_cover(g)
        alpha, witness, tau, c = ind.size, ind.witnesses[0], len(cover.cover), cover.cover
    else:
        alpha, sets = maximum_cliques(complement(g))
        witness = sets[0]
        c = witness.complement()
        tau = len(c)
    if not is_independent(g, witness):
        return "witness not independent"
    if any(i not in c and j not in c for i, j in g.edges()):
        return "cover misses an edge"
    if alpha + tau != g.v:
        return f"alpha {alpha} + tau {tau} != {g.v}"
    return None


def c12_properties(ck: Checks) -> None:
    rng = random.Random(12)
    for d, n in ((2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3)):
        for _ in range(200):
            p, q = (QuditOperator(d, tuple((rng.randrange(d), rng.randrange(d)) for _ in range(n))) for _ in "pq")
            same = multiply(p, q) == multiply(q, p)
            if same != commutes(p, q) or same != (symplectic_form(p, q) == 0):
                ck.failures.append(f"commutation oracle d={d} n={n}: {p} {q}")
    for name, g in touched_graphs().items():
        sp: Spectrum = spectrum(g)
        if sp.residual is not None:
            ck.failures.append(f"{name}: unresolved spectrum")
        else:
            ck.eq(f"{name} sum of eigenvalues", Fraction(0), sp.power_sum(1))
            ck.eq(f"{name} sum of squares", Fraction(2 * g.e), sp.power_sum(2))
        problem = _duality(g)
        if problem:
            ck.failures.append(f"{name} duality: {problem}")


CRITERIA = [
    (1, "two-qubit tables", 1.0, c1_tables),
    (2, "two-qubit invariants", 5.0, c2_invariants),
    (3, "isomorphisms", 5.0, c3_isomorphisms),
    (4, "W(2) census", 10.0, c4_census),
    (5, "Mermin certificate", 1.0, c5_mermin),
    (6, "configurations", 5.0, c6_configurations),
    (7, "ring line", 5.0, c7_ringline),
    (8, "N-qubit laws", 60.0, c8_counting),
    (9, "spectra and srg", 180.0, c9_spectra),
    (10, "three-qubit blocks", 120.0, c10_blocks),
    (11, "two-qutrit", 180.0, c11_qutrits),
    (12, "property suites", 600.0, c12_properties),
]


def evaluate(number: int) -> Outcome:
    _, name, limit, fn = CRITERIA[number - 1]
    ck = Checks()
    start = time.perf_counter()
    try:
        fn(ck)
    except Exception as exc:  # noqa: BLE001 - reported as a failed criterion
        ck.failures.append(f"{type(exc).__name__}: {exc}")
    return Outcome(number, name, limit, ck.failures, time.perf_counter() - start)


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number):
    outcome = evaluate(number)
    print(outcome.line())
    ACCEPTANCE_LINES.append(outcome.line())
    assert outcome.passed, outcome.line()


def main() -> int:
    outcomes = [evaluate(c[0]) for c in CRITERIA]
    for o in outcomes:
        print(o.line())
    return 0 if all(o.passed for o in outcomes) else 1


if __name__ == "__main__":
    sys.exit(main())
